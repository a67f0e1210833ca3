#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "nanogrid/sweep.hpp"

using namespace nanogrid;
using testutil::expect_error;
using testutil::flat_curve;
using testutil::make_scenario;

namespace {

std::vector<SweepPoint> points_from(const std::vector<double>& caps,
                                    const std::vector<double>& bdt) {
    std::vector<SweepPoint> out;
    for (std::size_t i = 0; i < caps.size(); ++i) {
        out.push_back({caps[i], 90.0, bdt[i]});
    }
    return out;
}

Scenario small_battery_scenario() {
    Scenario s = make_scenario({0.5, 0.5, 2.0, 2.0}, {3.0, 3.0, 0.0, 0.0});
    s.pv_converter = {ConverterRole::pv, 3.0, 1, flat_curve(0.96)};
    s.ac_dc_converter = {ConverterRole::ac_dc, 8.0, 1, flat_curve(0.9)};
    s.battery = {4.8, 0.2, 1.0, 4.0};
    s.battery_converter =
        ConverterSpec{ConverterRole::battery, 1.2, 1, flat_curve(0.93)};
    s.initial_soc = 0.5;
    return s;
}

}  // namespace

TEST(Knee, FindsDiminishingReturns) {
    auto points = points_from({5, 10, 15, 20, 25}, {100, 40, 10, 9, 9});
    bool found = false;
    std::size_t idx = knee_index(points, 0.5, found);
    EXPECT_TRUE(found);
    EXPECT_EQ(idx, 2u);
    EXPECT_DOUBLE_EQ(points[idx].capacity_kwh, 15.0);
}

TEST(Knee, FlatCurveKneesAtTheSmallestCapacity) {
    auto points = points_from({5, 10, 15}, {50, 50, 50});
    bool found = false;
    EXPECT_EQ(knee_index(points, 0.5, found), 0u);
    EXPECT_TRUE(found);
}

TEST(Knee, SteepEverywhereFallsBackToLargest) {
    auto points = points_from({5, 10, 15}, {100, 60, 20});
    bool found = true;
    EXPECT_EQ(knee_index(points, 0.5, found), 2u);
    EXPECT_FALSE(found);
}

TEST(Knee, RisingTailCountsAsSteep) {
    // |dBDT/dC| is what matters: a bounce above the threshold blocks the knee.
    auto points = points_from({5, 10, 15, 20}, {100, 10, 10, 40});
    bool found = false;
    std::size_t idx = knee_index(points, 0.5, found);
    EXPECT_FALSE(found);
    EXPECT_EQ(idx, 3u);
}

TEST(Knee, NeedsTwoPoints) {
    auto points = points_from({5}, {100});
    bool found = false;
    expect_error(errc::too_few_points, [&] { knee_index(points, 0.5, found); });
}

TEST(Knee, CapacitiesMustIncrease) {
    auto points = points_from({5, 5}, {100, 40});
    bool found = false;
    expect_error(errc::invalid_value, [&] { knee_index(points, 0.5, found); });
}

TEST(Snap, FloorsToWholeModules) {
    EXPECT_NEAR(snap_to_module(26.4, 2.4), 26.4, 1e-12);
    EXPECT_NEAR(snap_to_module(27.0, 2.4), 26.4, 1e-12);
    EXPECT_DOUBLE_EQ(snap_to_module(1.0, 2.4), 2.4);  // never below one module
    expect_error(errc::invalid_value, [] { snap_to_module(10.0, 0.0); });
}

TEST(Snap, AnalyzeCombinesKneeAndSnap) {
    auto points = points_from({5, 10, 15, 20, 25}, {100, 40, 10, 9, 9});
    SweepResult result = analyze_sweep(points, 0.5, 2.4);
    EXPECT_TRUE(result.knee_found);
    EXPECT_DOUBLE_EQ(result.knee_capacity_kwh, 15.0);
    EXPECT_NEAR(result.snapped_capacity_kwh, 14.4, 1e-12);
    EXPECT_EQ(result.points.size(), 5u);
}

TEST(Sweep, WalksTheRequestedRangeInclusive) {
    Scenario base = small_battery_scenario();
    SweepRequest request{2.4, 12.0, 2.4, 1.0};
    std::vector<double> seen;
    auto points = run_capacity_sweep(
        base, request, [&](const SweepPoint& p) { seen.push_back(p.capacity_kwh); });
    ASSERT_EQ(points.size(), 5u);
    EXPECT_EQ(seen.size(), 5u);
    EXPECT_NEAR(points.front().capacity_kwh, 2.4, 1e-12);
    EXPECT_NEAR(points.back().capacity_kwh, 12.0, 1e-12);
}

TEST(Sweep, PointAtBaseCapacityMatchesDirectRun) {
    Scenario base = small_battery_scenario();
    AnnualReport direct = simulate_year(base);
    auto points = run_capacity_sweep(base, SweepRequest{2.4, 4.8, 2.4, 1.0});
    ASSERT_EQ(points.size(), 2u);
    // The 4.8 kWh point re-derives the converter nominal as capacity/4 =
    // 1.2 kW, exactly the base configuration, so the numbers must be
    // bit-identical to the direct run.
    EXPECT_EQ(points[1].efficiency_pct, direct.efficiency_pct);
    EXPECT_EQ(points[1].bdt_hours, direct.bdt_hours);
}

TEST(Sweep, ConverterNominalTracksCapacity) {
    Scenario base = small_battery_scenario();
    // At 2.4 kWh the rate cap is 0.6 kW; charge power can never exceed it
    // even though the base converter was sized for 1.2 kW.
    Scenario probe = base;
    probe.battery.capacity_kwh = 2.4;
    probe.battery_converter->unit_nominal_kw = 0.6;
    AnnualReport expected = simulate_year(probe);
    auto points = run_capacity_sweep(base, SweepRequest{2.4, 2.4, 2.4, 1.0});
    ASSERT_EQ(points.size(), 1u);
    EXPECT_EQ(points[0].efficiency_pct, expected.efficiency_pct);
    EXPECT_EQ(points[0].bdt_hours, expected.bdt_hours);
}

TEST(Sweep, RejectsBadRange) {
    Scenario base = small_battery_scenario();
    expect_error(errc::invalid_value, [&] {
        run_capacity_sweep(base, SweepRequest{0.0, 12.0, 2.4, 1.0});
    });
    expect_error(errc::invalid_value, [&] {
        run_capacity_sweep(base, SweepRequest{12.0, 2.4, 2.4, 1.0});
    });
}

TEST(Matrix, VisitsCellsInAxisOrder) {
    std::vector<std::string> visited;
    ScenarioFactory factory = [&](const std::string& model, double voltage,
                                  bool battery) {
        visited.push_back(model + "/" + std::to_string(static_cast<int>(voltage)) +
                          "/" + (battery ? "bat" : "nobat"));
        Scenario s = make_scenario({1.0}, {0.0});
        s.bus_voltage_v = voltage;
        if (battery) {
            s.battery = {2.4, 0.2, 1.0, 4.0};
            s.battery_converter =
                ConverterSpec{ConverterRole::battery, 0.6, 1, flat_curve(0.9)};
            s.initial_soc = 0.6;
        }
        return s;
    };
    auto cells = run_scenario_matrix({"low", "base"}, {48.0, 220.0}, {false, true},
                                     factory);
    ASSERT_EQ(cells.size(), 8u);
    EXPECT_EQ(visited.front(), "low/48/nobat");
    EXPECT_EQ(visited[1], "low/48/bat");
    EXPECT_EQ(visited[2], "low/220/nobat");
    EXPECT_EQ(visited[4], "base/48/nobat");
    EXPECT_EQ(visited.back(), "base/220/bat");
    EXPECT_EQ(cells[3].load_model, "low");
    EXPECT_DOUBLE_EQ(cells[3].bus_voltage_v, 220.0);
    EXPECT_TRUE(cells[3].battery_enabled);
}

TEST(Matrix, CellFailuresCarryTheirIdentity) {
    ScenarioFactory factory = [](const std::string& model, double voltage,
                                 bool battery) -> Scenario {
        if (model == "base" && voltage == 220.0 && battery) {
            throw Error(errc::invalid_value, "wiring table missing");
        }
        return testutil::make_scenario({1.0}, {0.0});
    };
    try {
        run_scenario_matrix({"low", "base"}, {48.0, 220.0}, {false, true}, factory);
        FAIL() << "expected the cell error to propagate";
    } catch (const Error& e) {
        EXPECT_EQ(static_cast<int>(e.code()), static_cast<int>(errc::invalid_value));
        std::string msg = e.what();
        EXPECT_NE(msg.find("base"), std::string::npos) << msg;
        EXPECT_NE(msg.find("220"), std::string::npos) << msg;
        EXPECT_NE(msg.find("wiring table missing"), std::string::npos) << msg;
    }
}

TEST(Matrix, RejectsEmptyAxes) {
    ScenarioFactory factory = [](const std::string&, double, bool) {
        return testutil::make_scenario({1.0}, {0.0});
    };
    expect_error(errc::invalid_value,
                 [&] { run_scenario_matrix({}, {48.0}, {false}, factory); });
}
