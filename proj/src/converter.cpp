#include "nanogrid/converter.hpp"

#include <cmath>
#include <istream>
#include <string>
#include <utility>

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

// Inputs a hair over nominal (floating-point dust from upstream clipping)
// pass; anything larger is a sizing bug and must surface.
constexpr double kOverNominalRelTol = 1e-9;

double checked_fraction(const ConverterSpec& spec, double power_kw,
                        const char* direction) {
    double nominal = spec.total_nominal_kw();
    if (power_kw > nominal * (1.0 + kOverNominalRelTol)) {
        throw Error(errc::over_nominal,
                    std::string(direction) + " power " + format_double(power_kw) +
                        " kW exceeds total nominal " + format_double(nominal) + " kW");
    }
    return std::min(power_kw, nominal) / nominal;
}

}  // namespace

EfficiencyCurve::EfficiencyCurve() : points_{{1.0, 1.0}} {}

EfficiencyCurve::EfficiencyCurve(std::vector<CurvePoint> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw Error(errc::invalid_value, "efficiency curve needs at least two points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const CurvePoint& p = points_[i];
        if (!(p.load_fraction > 0.0) || p.load_fraction > 1.0) {
            throw Error(errc::invalid_value,
                        "curve point " + std::to_string(i) +
                            ": load fraction must be in (0,1]");
        }
        if (!(p.efficiency > 0.0) || p.efficiency > 1.0) {
            throw Error(errc::invalid_value,
                        "curve point " + std::to_string(i) +
                            ": efficiency must be in (0,1]");
        }
        if (i > 0 && p.load_fraction <= points_[i - 1].load_fraction) {
            throw Error(errc::invalid_value,
                        "curve load fractions must increase strictly");
        }
    }
}

EfficiencyCurve EfficiencyCurve::from_csv(std::istream& in) {
    CsvTable table = read_csv(in);
    std::vector<CurvePoint> points;
    points.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != 2) {
            throw Error(errc::malformed_row,
                        "curve row " + std::to_string(i) +
                            ": expected load_fraction,efficiency");
        }
        points.push_back({table.rows[i][0], table.rows[i][1]});
    }
    return EfficiencyCurve(std::move(points));
}

double EfficiencyCurve::at(double load_fraction) const {
    if (load_fraction < 0.0) {
        throw Error(errc::negative_value, "load fraction must be >= 0");
    }
    if (load_fraction <= points_.front().load_fraction) {
        return points_.front().efficiency;
    }
    if (load_fraction >= points_.back().load_fraction) {
        return points_.back().efficiency;
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (load_fraction <= points_[i].load_fraction) {
            const CurvePoint& a = points_[i - 1];
            const CurvePoint& b = points_[i];
            double t = (load_fraction - a.load_fraction) /
                       (b.load_fraction - a.load_fraction);
            return a.efficiency + t * (b.efficiency - a.efficiency);
        }
    }
    return points_.back().efficiency;  // unreachable, fractions covered above
}

int parallel_count_for(double peak_power_kw, double unit_nominal_kw) {
    if (!(unit_nominal_kw > 0.0)) {
        throw Error(errc::invalid_value, "unit nominal power must be positive");
    }
    if (peak_power_kw < 0.0) {
        throw Error(errc::negative_value, "peak power must be >= 0");
    }
    int count = static_cast<int>(std::ceil(peak_power_kw / unit_nominal_kw));
    return count < 1 ? 1 : count;
}

Conversion convert_known_input(const ConverterSpec& spec, double input_kw) {
    if (input_kw <= 0.0) return {0.0, 0.0, 0.0};
    double fraction = checked_fraction(spec, input_kw, "input");
    double eta = spec.curve.at(fraction);
    double output = input_kw * eta;
    return {input_kw, output, input_kw - output};
}

Conversion convert_known_output(const ConverterSpec& spec, double output_kw) {
    if (output_kw <= 0.0) return {0.0, 0.0, 0.0};
    double fraction = checked_fraction(spec, output_kw, "output");
    double eta = spec.curve.at(fraction);
    double input = output_kw / eta;
    return {input, output_kw, input - output_kw};
}

void OperatingHistogram::record(double power_kw, double total_nominal_kw) {
    if (power_kw < 0.0) {
        throw Error(errc::negative_value, "histogram power must be >= 0");
    }
    if (power_kw == 0.0) {
        ++idle_count;
        return;
    }
    double fraction = power_kw / total_nominal_kw;
    if (fraction > 1.0) {
        ++over_nominal_count;
        fraction = 1.0;
    }
    // Quartile bins (0,.25], (.25,.5], (.5,.75], (.75,1]; boundaries fall
    // into the lower bin.
    std::size_t bin;
    if (fraction <= 0.25) {
        bin = 0;
    } else if (fraction <= 0.5) {
        bin = 1;
    } else if (fraction <= 0.75) {
        bin = 2;
    } else {
        bin = 3;
    }
    ++bins[bin];
}

std::uint64_t OperatingHistogram::nonzero_total() const {
    return bins[0] + bins[1] + bins[2] + bins[3];
}

std::array<double, 4> OperatingHistogram::shares_pct() const {
    std::array<double, 4> shares{};
    std::uint64_t total = nonzero_total();
    if (total == 0) return shares;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        shares[i] = 100.0 * static_cast<double>(bins[i]) / static_cast<double>(total);
    }
    return shares;
}

double OperatingHistogram::idle_share_pct() const {
    std::uint64_t all = nonzero_total() + idle_count;
    if (all == 0) return 0.0;
    return 100.0 * static_cast<double>(idle_count) / static_cast<double>(all);
}

}  // namespace nanogrid
