#include "nanogrid/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {

Scenario::Scenario(LoadProfile loads_, TimeSeries pv_)
    : loads(std::move(loads_)), pv(std::move(pv_)) {
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        wiring[c].category = static_cast<LoadCategory>(c);
    }
}

void Scenario::validate() const {
    if (!(bus_voltage_v > 0.0)) {
        throw Error(errc::invalid_value, "bus voltage must be positive");
    }
    if (pv.size() != loads.size()) {
        throw Error(errc::length_mismatch,
                    "pv series (" + std::to_string(pv.size()) +
                        " samples) does not match load series (" +
                        std::to_string(loads.size()) + ")");
    }
    if (pv.dt_hours() != loads.dt_hours()) {
        throw Error(errc::length_mismatch, "pv and load series disagree on timestep");
    }
    for (const WiringCircuit& circuit : wiring) {
        if (circuit.r_eq_mohm < 0.0) {
            throw Error(errc::negative_value, "wiring resistance must be >= 0");
        }
    }
    if (!(pv_converter.total_nominal_kw() > 0.0) ||
        !(ac_dc_converter.total_nominal_kw() > 0.0)) {
        throw Error(errc::invalid_value, "converter nominal power must be positive");
    }
    if (has_battery()) {
        if (!battery_converter.has_value() ||
            !(battery_converter->total_nominal_kw() > 0.0)) {
            throw Error(errc::invalid_value,
                        "battery present but battery converter missing or zero");
        }
        if (!(battery.soc_min >= 0.0 && battery.soc_min < battery.soc_max &&
              battery.soc_max <= 1.0)) {
            throw Error(errc::invalid_value, "SOC window must satisfy 0 <= min < max <= 1");
        }
        if (!(battery.c_rate_divisor > 0.0)) {
            throw Error(errc::invalid_value, "c_rate_divisor must be positive");
        }
        if (initial_soc < battery.soc_min || initial_soc > battery.soc_max) {
            throw Error(errc::invalid_value,
                        "initial SOC " + format_double(initial_soc) +
                            " outside the [" + format_double(battery.soc_min) + ", " +
                            format_double(battery.soc_max) + "] window");
        }
    }
}

double StepResult::load_total_kw() const {
    return std::accumulate(load_kw.begin(), load_kw.end(), 0.0);
}

double StepResult::wiring_loss_total_kw() const {
    return std::accumulate(wiring_loss_kw.begin(), wiring_loss_kw.end(), 0.0);
}

std::pair<StepResult, BatteryState> simulate_step(const Scenario& scenario,
                                                  std::size_t t,
                                                  const BatteryState& battery_state) {
    StepResult step;
    double dt = scenario.dt_hours();

    // 1. Bus demand: category loads plus their wiring losses.
    double bus_demand_kw = 0.0;
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        double load = scenario.loads[static_cast<LoadCategory>(c)][t];
        step.load_kw[c] = load;
        step.wiring_loss_kw[c] =
            wiring_loss_kw(scenario.wiring[c], load, scenario.bus_voltage_v);
        bus_demand_kw += load + step.wiring_loss_kw[c];
    }

    // 2. PV through its converter; an undersized converter curtails.
    double pv_sample = scenario.pv[t];
    step.pv_input_kw = std::min(pv_sample, scenario.pv_converter.total_nominal_kw());
    Conversion pv_conv = convert_known_input(scenario.pv_converter, step.pv_input_kw);
    step.pv_output_kw = pv_conv.output_kw;
    step.pv_loss_kw = pv_conv.loss_kw;

    // 3.-4. Excess drives the battery.
    step.excess_kw = step.pv_output_kw - bus_demand_kw;
    BatteryState next_state = battery_state;
    if (scenario.has_battery()) {
        DispatchResult dispatched = dispatch(battery_state, scenario.battery,
                                             step.excess_kw,
                                             *scenario.battery_converter, dt);
        next_state = dispatched.state;
        step.battery_side_kw = dispatched.action.battery_side_kw;
        step.battery_bus_kw = dispatched.action.bus_side_kw;
        // Charging draws more from the bus than lands in the battery;
        // discharging delivers less than the battery gave. Either way the
        // converter loss is the signed bus/battery gap.
        step.battery_conv_loss_kw = step.battery_bus_kw - step.battery_side_kw;
    }
    step.soc_after = next_state.soc;
    step.bdt_hours_after = next_state.bdt_hours;

    // 5. Grid balances what the battery left over.
    double residual_kw = step.excess_kw - step.battery_bus_kw;
    if (residual_kw > 0.0) {
        Conversion out = convert_known_input(scenario.ac_dc_converter, residual_kw);
        step.export_bus_kw = out.input_kw;
        step.export_grid_kw = out.output_kw;
        step.ac_dc_loss_kw = out.loss_kw;
    } else if (residual_kw < 0.0) {
        Conversion in = convert_known_output(scenario.ac_dc_converter, -residual_kw);
        step.import_bus_kw = in.output_kw;
        step.import_grid_kw = in.input_kw;
        step.ac_dc_loss_kw = in.loss_kw;
    }

    // 7. Recompute the bus balance from the stored fields; a violation is
    // an engine bug, not bad input.
    double balance = step.pv_output_kw + step.import_bus_kw - step.export_bus_kw -
                     step.battery_bus_kw - bus_demand_kw;
    double scale = std::max({std::abs(bus_demand_kw), std::abs(step.pv_output_kw),
                             std::abs(step.battery_bus_kw), std::abs(step.import_bus_kw),
                             std::abs(step.export_bus_kw), 1.0});
    step.conservation_residual_kw = balance;
    if (std::abs(balance) > 1e-9 * scale) {
        throw Error(errc::conservation_violation,
                    "step " + std::to_string(t) + ": bus imbalance " +
                        format_double(balance) + " kW");
    }
    return {step, next_state};
}

AnnualReport simulate_year(const Scenario& scenario, const StepCallback& on_step) {
    scenario.validate();

    AnnualReport report;
    report.label = scenario.label;
    report.bus_voltage_v = scenario.bus_voltage_v;
    report.steps = scenario.steps();
    report.dt_hours = scenario.dt_hours();
    report.battery_present = scenario.has_battery();
    report.battery_capacity_kwh = scenario.battery.capacity_kwh;

    BatteryState state;
    state.soc = scenario.has_battery() ? scenario.initial_soc : 0.0;
    double initial_soc = state.soc;
    double dt = scenario.dt_hours();

    for (std::size_t t = 0; t < scenario.steps(); ++t) {
        auto [step, next_state] = simulate_step(scenario, t, state);
        state = next_state;

        for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
            report.load_by_category_kwh[c] += step.load_kw[c] * dt;
            report.wiring_loss_by_category_kwh[c] += step.wiring_loss_kw[c] * dt;
        }
        report.pv_generated_kwh += step.pv_input_kw * dt;
        report.pv_delivered_kwh += step.pv_output_kw * dt;
        report.pv_converter_loss_kwh += step.pv_loss_kw * dt;
        report.ac_dc_loss_kwh += step.ac_dc_loss_kw * dt;
        report.battery_converter_loss_kwh += step.battery_conv_loss_kw * dt;
        report.grid_import_bus_kwh += step.import_bus_kw * dt;
        report.grid_import_grid_kwh += step.import_grid_kw * dt;
        report.grid_export_bus_kwh += step.export_bus_kw * dt;
        report.grid_export_grid_kwh += step.export_grid_kw * dt;
        if (step.battery_side_kw > 0.0) {
            report.battery_charge_kwh += step.battery_side_kw * dt;
        } else {
            report.battery_discharge_kwh += -step.battery_side_kw * dt;
        }

        report.pv_hist.record(step.pv_input_kw,
                              scenario.pv_converter.total_nominal_kw());
        report.ac_dc_hist.record(step.import_bus_kw + step.export_bus_kw,
                                 scenario.ac_dc_converter.total_nominal_kw());
        if (scenario.has_battery()) {
            report.battery_hist.record(std::abs(step.battery_side_kw),
                                       scenario.battery_converter->total_nominal_kw());
        }

        if (on_step) on_step(t, step);
    }

    report.load_energy_kwh =
        std::accumulate(report.load_by_category_kwh.begin(),
                        report.load_by_category_kwh.end(), 0.0);
    report.wiring_loss_kwh =
        std::accumulate(report.wiring_loss_by_category_kwh.begin(),
                        report.wiring_loss_by_category_kwh.end(), 0.0);
    report.net_soc_change_kwh =
        (state.soc - initial_soc) * scenario.battery.capacity_kwh;
    report.bdt_hours = state.bdt_hours;

    compute_metrics(report);
    return report;
}

void compute_metrics(AnnualReport& report) {
    if (!(report.load_energy_kwh > 0.0)) {
        throw Error(errc::zero_load_year,
                    "total load energy is zero, efficiency undefined");
    }
    double denom = report.load_energy_kwh;
    report.wiring_share_pct = 100.0 * report.wiring_loss_kwh / denom;
    report.pv_converter_share_pct = 100.0 * report.pv_converter_loss_kwh / denom;
    report.ac_dc_share_pct = 100.0 * report.ac_dc_loss_kwh / denom;
    report.battery_converter_share_pct =
        100.0 * report.battery_converter_loss_kwh / denom;
    report.efficiency_pct = 100.0 - (report.wiring_share_pct +
                                     report.pv_converter_share_pct +
                                     report.ac_dc_share_pct +
                                     report.battery_converter_share_pct);
}

}  // namespace nanogrid
