#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "nanogrid/converter.hpp"

using namespace nanogrid;
using testutil::expect_error;
using testutil::flat_curve;

TEST(Curve, InterpolatesBetweenPoints) {
    EfficiencyCurve curve({{0.25, 0.90}, {0.50, 0.94}});
    EXPECT_DOUBLE_EQ(curve.at(0.375), 0.9199999999999999);
    EXPECT_DOUBLE_EQ(curve.at(0.25), 0.90);
    EXPECT_DOUBLE_EQ(curve.at(0.50), 0.94);
}

TEST(Curve, ClampsOutsideCoveredRange) {
    EfficiencyCurve curve({{0.25, 0.90}, {0.50, 0.94}});
    EXPECT_DOUBLE_EQ(curve.at(0.05), 0.90);
    EXPECT_DOUBLE_EQ(curve.at(0.95), 0.94);
    expect_error(errc::negative_value, [&] { curve.at(-0.1); });
}

TEST(Curve, DefaultIsIdeal) {
    EfficiencyCurve ideal;
    EXPECT_DOUBLE_EQ(ideal.at(0.01), 1.0);
    EXPECT_DOUBLE_EQ(ideal.at(1.0), 1.0);
}

TEST(Curve, ValidatesShape) {
    expect_error(errc::invalid_value, [] { EfficiencyCurve({{0.5, 0.9}}); });
    expect_error(errc::invalid_value,
                 [] { EfficiencyCurve({{0.5, 0.9}, {0.5, 0.95}}); });
    expect_error(errc::invalid_value,
                 [] { EfficiencyCurve({{0.0, 0.9}, {1.0, 0.95}}); });
    expect_error(errc::invalid_value,
                 [] { EfficiencyCurve({{0.5, 0.0}, {1.0, 0.95}}); });
    expect_error(errc::invalid_value,
                 [] { EfficiencyCurve({{0.5, 0.9}, {1.2, 0.95}}); });
}

TEST(Curve, ParsesCsv) {
    std::istringstream in("load_fraction,efficiency\n0.25,0.90\n0.50,0.94\n");
    EfficiencyCurve curve = EfficiencyCurve::from_csv(in);
    EXPECT_DOUBLE_EQ(curve.at(0.375), 0.9199999999999999);
    std::istringstream ragged("load_fraction,efficiency\n0.25,0.90,1\n");
    expect_error(errc::malformed_row, [&] { EfficiencyCurve::from_csv(ragged); });
}

TEST(Converter, ParallelCountCeils) {
    EXPECT_EQ(parallel_count_for(7.0, 3.0), 3);
    EXPECT_EQ(parallel_count_for(6.0, 3.0), 2);
    EXPECT_EQ(parallel_count_for(0.0, 3.0), 1);
    expect_error(errc::invalid_value, [] { parallel_count_for(5.0, 0.0); });
    expect_error(errc::negative_value, [] { parallel_count_for(-1.0, 3.0); });
}

TEST(Converter, KnownInputAppliesEfficiencyAtInputFraction) {
    ConverterSpec spec{ConverterRole::pv, 4.0, 1, flat_curve(0.95)};
    Conversion c = convert_known_input(spec, 1.0);
    EXPECT_DOUBLE_EQ(c.input_kw, 1.0);
    EXPECT_DOUBLE_EQ(c.output_kw, 0.95);
    EXPECT_NEAR(c.loss_kw, 0.05, 1e-15);
}

TEST(Converter, KnownOutputInvertsAtOutputFraction) {
    ConverterSpec spec{ConverterRole::ac_dc, 4.0, 1, flat_curve(0.95)};
    Conversion c = convert_known_output(spec, 0.95);
    EXPECT_DOUBLE_EQ(c.output_kw, 0.95);
    EXPECT_DOUBLE_EQ(c.input_kw, 1.0);
    EXPECT_NEAR(c.loss_kw, 0.05, 1e-15);
}

TEST(Converter, NonPositivePowerIsIdle) {
    ConverterSpec spec{ConverterRole::pv, 4.0, 1, flat_curve(0.95)};
    Conversion zero = convert_known_input(spec, 0.0);
    EXPECT_DOUBLE_EQ(zero.output_kw, 0.0);
    Conversion negative = convert_known_output(spec, -1.0);
    EXPECT_DOUBLE_EQ(negative.input_kw, 0.0);
}

TEST(Converter, ParallelUnitsShareLoad) {
    // Aggregate nominal 6 kW: 3 kW input sits at fraction 0.5.
    ConverterSpec spec{ConverterRole::pv, 2.0, 3,
                       EfficiencyCurve({{0.5, 0.9}, {1.0, 0.8}})};
    Conversion c = convert_known_input(spec, 3.0);
    EXPECT_DOUBLE_EQ(c.output_kw, 2.7);
}

TEST(Converter, OverNominalDustClipsLargerThrows) {
    ConverterSpec spec{ConverterRole::pv, 4.0, 1, flat_curve(0.95)};
    Conversion clipped = convert_known_input(spec, 4.0 * (1.0 + 5e-10));
    EXPECT_DOUBLE_EQ(clipped.output_kw, clipped.input_kw * 0.95);
    expect_error(errc::over_nominal,
                 [&] { convert_known_input(spec, 4.0 * (1.0 + 1e-8)); });
    expect_error(errc::over_nominal,
                 [&] { convert_known_output(spec, 4.0 * (1.0 + 1e-8)); });
}

TEST(Histogram, QuartileBinning) {
    OperatingHistogram hist;
    hist.record(0.4, 4.0);   // 10% -> first bin
    hist.record(1.2, 4.0);   // 30% -> second
    hist.record(2.4, 4.0);   // 60% -> third
    hist.record(3.6, 4.0);   // 90% -> fourth
    EXPECT_EQ(hist.bins[0], 1u);
    EXPECT_EQ(hist.bins[1], 1u);
    EXPECT_EQ(hist.bins[2], 1u);
    EXPECT_EQ(hist.bins[3], 1u);
    EXPECT_EQ(hist.idle_count, 0u);
}

TEST(Histogram, BoundariesFallIntoLowerBin) {
    OperatingHistogram hist;
    hist.record(1.0, 4.0);  // exactly 25%
    EXPECT_EQ(hist.bins[0], 1u);
    hist.record(2.0, 4.0);  // exactly 50%
    EXPECT_EQ(hist.bins[1], 1u);
    hist.record(3.0, 4.0);  // exactly 75%
    EXPECT_EQ(hist.bins[2], 1u);
    hist.record(4.0, 4.0);  // exactly nominal
    EXPECT_EQ(hist.bins[3], 1u);
}

TEST(Histogram, IdleAndOverNominalAreTrackedSeparately) {
    OperatingHistogram hist;
    hist.record(0.0, 4.0);
    EXPECT_EQ(hist.idle_count, 1u);
    EXPECT_EQ(hist.nonzero_total(), 0u);
    hist.record(4.4, 4.0);  // clamps into the top bin
    EXPECT_EQ(hist.over_nominal_count, 1u);
    EXPECT_EQ(hist.bins[3], 1u);
    expect_error(errc::negative_value, [&] { hist.record(-1.0, 4.0); });
}

TEST(Histogram, SharesSumToHundred) {
    OperatingHistogram hist;
    std::mt19937_64 rng(7201);
    for (int i = 0; i < 997; ++i) {
        hist.record(4.0 * ((rng() >> 11) * 0x1.0p-53), 4.0);
    }
    auto shares = hist.shares_pct();
    double total = shares[0] + shares[1] + shares[2] + shares[3];
    EXPECT_NEAR(total, 100.0, 1e-9);
}

TEST(Histogram, EmptyHistogramHasZeroShares) {
    OperatingHistogram hist;
    auto shares = hist.shares_pct();
    EXPECT_DOUBLE_EQ(shares[0] + shares[1] + shares[2] + shares[3], 0.0);
    EXPECT_DOUBLE_EQ(hist.idle_share_pct(), 0.0);
}
