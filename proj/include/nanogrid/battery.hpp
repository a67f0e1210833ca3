#pragma once

#include "nanogrid/converter.hpp"

namespace nanogrid {

// Lead-acid style storage: SOC window 20..100%, charge/discharge power
// capped at capacity/c_rate_divisor (C/4 for the 1 h default step).
struct BatterySpec {
    double capacity_kwh = 0.0;  // 0 disables the battery entirely
    double soc_min = 0.20;
    double soc_max = 1.00;
    double c_rate_divisor = 4.0;
};

double max_transfer_power_kw(const BatterySpec& spec);

// Midpoint of the usable window; the default when a config does not pin
// the initial state.
double default_initial_soc(const BatterySpec& spec);

struct BatteryState {
    double soc = 0.6;
    bool disconnected = false;
    double bdt_hours = 0.0;
};

// Positive = charging on both ports. bus_side is the DC-bus side of the
// battery converter, battery_side the terminal side; they differ by the
// converter loss.
struct BatteryAction {
    double battery_side_kw = 0.0;
    double bus_side_kw = 0.0;
};

struct DispatchResult {
    BatteryAction action;
    BatteryState state;
};

// One controller step. Charges on positive bus excess, discharges on
// negative, clips to the C-rate cap and the SOC window (landing exactly
// on the bound), and accrues battery downtime whenever the step begins
// at the SOC floor with no excess to charge from.
DispatchResult dispatch(const BatteryState& state, const BatterySpec& spec,
                        double excess_bus_kw, const ConverterSpec& converter,
                        double dt_hours);

}  // namespace nanogrid
