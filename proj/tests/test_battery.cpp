#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nanogrid/battery.hpp"

using namespace nanogrid;
using testutil::expect_error;
using testutil::flat_curve;

namespace {

ConverterSpec battery_converter(double nominal_kw, double eta = 1.0) {
    return {ConverterRole::battery, nominal_kw, 1, flat_curve(eta)};
}

}  // namespace

TEST(Battery, TransferCapIsCapacityOverDivisor) {
    EXPECT_DOUBLE_EQ(max_transfer_power_kw({19.2, 0.2, 1.0, 4.0}), 4.8);
    EXPECT_DOUBLE_EQ(max_transfer_power_kw({67.2, 0.2, 1.0, 4.0}), 16.8);
    EXPECT_DOUBLE_EQ(max_transfer_power_kw({0.0, 0.2, 1.0, 4.0}), 0.0);
    EXPECT_DOUBLE_EQ(max_transfer_power_kw({10.0, 0.2, 1.0, 2.0}), 5.0);
    expect_error(errc::negative_value,
                 [] { max_transfer_power_kw({-1.0, 0.2, 1.0, 4.0}); });
    expect_error(errc::invalid_value,
                 [] { max_transfer_power_kw({10.0, 0.2, 1.0, 0.0}); });
}

TEST(Battery, DefaultInitialSocIsWindowMidpoint) {
    EXPECT_DOUBLE_EQ(default_initial_soc({19.2, 0.2, 1.0, 4.0}), 0.6);
    EXPECT_DOUBLE_EQ(default_initial_soc({19.2, 0.4, 0.8, 4.0}), 0.6000000000000001);
}

TEST(Battery, ChargesUpToRateCap) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.5, false, 0.0};
    DispatchResult r = dispatch(state, spec, 10.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 4.8);
    EXPECT_DOUBLE_EQ(r.action.bus_side_kw, 4.8);
    EXPECT_DOUBLE_EQ(r.state.soc, 0.75);
    EXPECT_FALSE(r.state.disconnected);
    EXPECT_DOUBLE_EQ(r.state.bdt_hours, 0.0);
}

TEST(Battery, ChargeLandsExactlyOnCeiling) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.99, false, 0.0};
    DispatchResult r = dispatch(state, spec, 10.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 0.19200000000000017);
    EXPECT_EQ(r.state.soc, 1.0);  // snapped, not 0.99 + dust
}

TEST(Battery, FullBatteryIgnoresSurplusButStaysConnected) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{1.0, true, 5.0};
    DispatchResult r = dispatch(state, spec, 3.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 0.0);
    EXPECT_FALSE(r.state.disconnected);
    EXPECT_DOUBLE_EQ(r.state.soc, 1.0);
}

TEST(Battery, ConverterLossShrinksStoredEnergy) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.5, false, 0.0};
    // Flat 90%: 2 kW offered stores 1.8 kW; the bus pays the offered power.
    DispatchResult r = dispatch(state, spec, 2.0, battery_converter(4.8, 0.9), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 1.8);
    EXPECT_DOUBLE_EQ(r.action.bus_side_kw, 2.0);
    EXPECT_DOUBLE_EQ(r.state.soc, 0.5 + 1.8 / 19.2);
}

TEST(Battery, DischargesToCoverDeficit) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.5, false, 0.0};
    DispatchResult r = dispatch(state, spec, -10.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, -4.8);
    EXPECT_DOUBLE_EQ(r.action.bus_side_kw, -4.8);
    EXPECT_DOUBLE_EQ(r.state.soc, 0.25);
}

TEST(Battery, DischargeLandsExactlyOnFloor) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.25, false, 0.0};
    DispatchResult r = dispatch(state, spec, -10.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, -0.9599999999999997);
    EXPECT_EQ(r.state.soc, 0.2);  // snapped to the floor
    EXPECT_DOUBLE_EQ(r.state.bdt_hours, 0.0);  // clock starts next step
}

TEST(Battery, DrainedBatteryAccruesDowntime) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.2, false, 3.0};
    DispatchResult r = dispatch(state, spec, -2.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 0.0);
    EXPECT_DOUBLE_EQ(r.action.bus_side_kw, 0.0);
    EXPECT_TRUE(r.state.disconnected);
    EXPECT_DOUBLE_EQ(r.state.bdt_hours, 4.0);
    // Zero excess at the floor counts as downtime too.
    DispatchResult idle = dispatch(r.state, spec, 0.0, battery_converter(4.8), 1.0);
    EXPECT_DOUBLE_EQ(idle.state.bdt_hours, 5.0);
}

TEST(Battery, SurplusReconnectsDrainedBattery) {
    BatterySpec spec{19.2, 0.2, 1.0, 4.0};
    BatteryState state{0.2, true, 7.0};
    DispatchResult r = dispatch(state, spec, 1.0, battery_converter(4.8), 1.0);
    EXPECT_FALSE(r.state.disconnected);
    EXPECT_GT(r.action.battery_side_kw, 0.0);
    EXPECT_DOUBLE_EQ(r.state.bdt_hours, 7.0);
}

TEST(Battery, ZeroCapacityIsInert) {
    BatterySpec spec{0.0, 0.2, 1.0, 4.0};
    BatteryState state{0.6, false, 0.0};
    DispatchResult r = dispatch(state, spec, 5.0, battery_converter(1.0), 1.0);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 0.0);
    EXPECT_DOUBLE_EQ(r.state.soc, 0.6);
    EXPECT_DOUBLE_EQ(r.state.bdt_hours, 0.0);
}

TEST(Battery, SubHourTimestepScalesEnergyBookkeeping) {
    BatterySpec spec{10.0, 0.2, 1.0, 4.0};
    BatteryState state{0.5, false, 0.0};
    // Half-hour step: 2 kW for 0.5 h moves 1 kWh, so SOC rises by 0.1.
    DispatchResult r = dispatch(state, spec, 2.0, battery_converter(2.5), 0.5);
    EXPECT_DOUBLE_EQ(r.action.battery_side_kw, 2.0);
    EXPECT_DOUBLE_EQ(r.state.soc, 0.6);
}

TEST(Battery, RandomizedDispatchKeepsEveryInvariant) {
    std::mt19937_64 rng(7301);
    auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53; };
    for (int scenario = 0; scenario < 50; ++scenario) {
        BatterySpec spec{2.0 + 46.0 * uniform(), 0.2, 1.0, 4.0};
        double eta = 0.85 + 0.14 * uniform();
        ConverterSpec conv = battery_converter(max_transfer_power_kw(spec), eta);
        BatteryState state{spec.soc_min + (spec.soc_max - spec.soc_min) * uniform(),
                           false, 0.0};
        for (int step = 0; step < 500; ++step) {
            double excess = -8.0 + 16.0 * uniform();
            BatteryState before = state;
            DispatchResult r = dispatch(before, spec, excess, conv, 1.0);
            state = r.state;
            double side = r.action.battery_side_kw;
            double bus = r.action.bus_side_kw;
            double cap = max_transfer_power_kw(spec);

            ASSERT_GE(state.soc, spec.soc_min);
            ASSERT_LE(state.soc, spec.soc_max);
            ASSERT_LE(std::abs(side), cap * (1.0 + 1e-12));
            if (excess <= 0.0) {
                ASSERT_LE(side, 0.0);
            } else {
                ASSERT_GE(side, 0.0);
            }
            // Charging pays the converter on the bus side, discharging on
            // the battery side.
            if (side > 0.0) {
                ASSERT_GE(bus, side - 1e-15);
            } else if (side < 0.0) {
                ASSERT_LE(std::abs(bus), std::abs(side) + 1e-15);
            }
            // SOC moves by exactly the battery-side energy unless snapped.
            double moved = (state.soc - before.soc) * spec.capacity_kwh;
            if (state.soc != spec.soc_min && state.soc != spec.soc_max) {
                ASSERT_NEAR(moved, side, 1e-9);
            }
            // Downtime accrues exactly when the step starts on the floor
            // with nothing to charge from.
            bool floored = before.soc - spec.soc_min <= 1e-12 && excess <= 0.0;
            ASSERT_DOUBLE_EQ(state.bdt_hours,
                             before.bdt_hours + (floored ? 1.0 : 0.0));
            ASSERT_GE(state.bdt_hours, before.bdt_hours);
        }
    }
}
