#include "nanogrid/battery.hpp"

#include <algorithm>
#include <cmath>

#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

// SOC this close to the floor counts as sitting on it, so accumulated
// rounding dust cannot keep a drained battery trickling.
constexpr double kSocEps = 1e-12;

}  // namespace

double max_transfer_power_kw(const BatterySpec& spec) {
    if (spec.capacity_kwh < 0.0) {
        throw Error(errc::negative_value, "battery capacity must be >= 0");
    }
    if (!(spec.c_rate_divisor > 0.0)) {
        throw Error(errc::invalid_value, "c_rate_divisor must be positive");
    }
    return spec.capacity_kwh / spec.c_rate_divisor;
}

double default_initial_soc(const BatterySpec& spec) {
    return spec.soc_min + 0.5 * (spec.soc_max - spec.soc_min);
}

DispatchResult dispatch(const BatteryState& state, const BatterySpec& spec,
                        double excess_bus_kw, const ConverterSpec& converter,
                        double dt_hours) {
    if (!(dt_hours > 0.0)) {
        throw Error(errc::invalid_value, "dispatch timestep must be positive");
    }
    DispatchResult result{BatteryAction{}, state};
    if (spec.capacity_kwh <= 0.0) return result;

    double cap_kw = max_transfer_power_kw(spec);
    double nominal_kw = converter.total_nominal_kw();

    if (excess_bus_kw > 0.0) {
        // PV surplus: push as much as the converter, the C-rate cap and the
        // SOC headroom allow. Surplus always reconnects the battery, even
        // when a full pack means zero charge power.
        result.state.disconnected = false;
        double offered_kw = std::min(excess_bus_kw, nominal_kw);
        double converted_kw = convert_known_input(converter, offered_kw).output_kw;
        double headroom_kw =
            (spec.soc_max - state.soc) * spec.capacity_kwh / dt_hours;
        headroom_kw = std::max(headroom_kw, 0.0);
        double charge_kw = std::min({converted_kw, cap_kw, headroom_kw});
        if (charge_kw > 0.0) {
            result.action.battery_side_kw = charge_kw;
            result.action.bus_side_kw =
                convert_known_output(converter, charge_kw).input_kw;
            if (charge_kw == headroom_kw) {
                result.state.soc = spec.soc_max;
            } else {
                result.state.soc =
                    state.soc + charge_kw * dt_hours / spec.capacity_kwh;
            }
        }
        return result;
    }

    bool at_floor = state.soc - spec.soc_min <= kSocEps;
    if (at_floor) {
        // Drained and nothing to charge with: the controller drops the
        // battery off the bus and the downtime clock runs.
        result.state.disconnected = true;
        result.state.bdt_hours = state.bdt_hours + dt_hours;
        return result;
    }
    if (excess_bus_kw == 0.0) return result;

    // Deficit: cover what the bus lacks, limited by the converter, the
    // C-rate cap and the energy still above the floor.
    double demand_bus_kw = std::min(-excess_bus_kw, nominal_kw);
    double needed_kw = convert_known_output(converter, demand_bus_kw).input_kw;
    double available_kw = (state.soc - spec.soc_min) * spec.capacity_kwh / dt_hours;
    double discharge_kw = std::min({needed_kw, cap_kw, available_kw, nominal_kw});
    if (discharge_kw > 0.0) {
        result.action.battery_side_kw = -discharge_kw;
        result.action.bus_side_kw =
            -convert_known_input(converter, discharge_kw).output_kw;
        if (discharge_kw == available_kw) {
            result.state.soc = spec.soc_min;
        } else {
            result.state.soc =
                state.soc - discharge_kw * dt_hours / spec.capacity_kwh;
        }
    }
    return result;
}

}  // namespace nanogrid
