#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "nanogrid/battery.hpp"
#include "nanogrid/converter.hpp"
#include "nanogrid/profile.hpp"
#include "nanogrid/wiring.hpp"

namespace nanogrid {

// Full simulation input bundle: loads and scaled PV on a common DC bus,
// per-category wiring, the three conversion stages, and the battery.
struct Scenario {
    std::string label;
    double bus_voltage_v = 48.0;
    LoadProfile loads;
    TimeSeries pv;  // already scaled to the load's annual energy
    std::array<WiringCircuit, kNumLoadCategories> wiring{};
    ConverterSpec pv_converter;
    ConverterSpec ac_dc_converter;
    std::optional<ConverterSpec> battery_converter;
    BatterySpec battery;
    double initial_soc = 0.6;

    Scenario(LoadProfile loads_, TimeSeries pv_);

    bool has_battery() const { return battery.capacity_kwh > 0.0; }
    double dt_hours() const { return loads.dt_hours(); }
    std::size_t steps() const { return loads.size(); }

    void validate() const;  // alignment, nominals, SOC window
};

struct StepResult {
    std::array<double, kNumLoadCategories> load_kw{};
    std::array<double, kNumLoadCategories> wiring_loss_kw{};
    double pv_input_kw = 0.0;
    double pv_output_kw = 0.0;
    double pv_loss_kw = 0.0;
    double excess_kw = 0.0;  // PV output minus bus demand
    double battery_side_kw = 0.0;  // positive = charging
    double battery_bus_kw = 0.0;
    double battery_conv_loss_kw = 0.0;
    double soc_after = 0.0;
    double bdt_hours_after = 0.0;
    double import_bus_kw = 0.0;
    double import_grid_kw = 0.0;
    double export_bus_kw = 0.0;
    double export_grid_kw = 0.0;
    double ac_dc_loss_kw = 0.0;
    double conservation_residual_kw = 0.0;

    double load_total_kw() const;
    double wiring_loss_total_kw() const;
};

struct AnnualReport {
    std::string label;
    double bus_voltage_v = 0.0;
    std::size_t steps = 0;
    double dt_hours = 1.0;
    bool battery_present = false;
    double battery_capacity_kwh = 0.0;

    // energies, kWh
    double load_energy_kwh = 0.0;
    std::array<double, kNumLoadCategories> load_by_category_kwh{};
    double pv_generated_kwh = 0.0;  // PV-side input energy
    double pv_delivered_kwh = 0.0;  // after the PV converter
    double grid_import_bus_kwh = 0.0;
    double grid_import_grid_kwh = 0.0;
    double grid_export_bus_kwh = 0.0;
    double grid_export_grid_kwh = 0.0;
    double battery_charge_kwh = 0.0;     // battery-side
    double battery_discharge_kwh = 0.0;  // battery-side
    double net_soc_change_kwh = 0.0;

    // losses, kWh
    std::array<double, kNumLoadCategories> wiring_loss_by_category_kwh{};
    double wiring_loss_kwh = 0.0;
    double pv_converter_loss_kwh = 0.0;
    double ac_dc_loss_kwh = 0.0;
    double battery_converter_loss_kwh = 0.0;

    // metrics: shares of total load energy, percent
    double wiring_share_pct = 0.0;
    double pv_converter_share_pct = 0.0;
    double ac_dc_share_pct = 0.0;
    double battery_converter_share_pct = 0.0;
    double efficiency_pct = 0.0;  // 100 - sum of the four shares

    double bdt_hours = 0.0;

    OperatingHistogram pv_hist;
    OperatingHistogram ac_dc_hist;
    OperatingHistogram battery_hist;
};

// One hour of the energy balance: wiring -> PV -> battery -> grid, the
// grid picking up whatever the battery leaves.
std::pair<StepResult, BatteryState> simulate_step(const Scenario& scenario,
                                                  std::size_t t,
                                                  const BatteryState& battery_state);

using StepCallback = std::function<void(std::size_t, const StepResult&)>;

AnnualReport simulate_year(const Scenario& scenario, const StepCallback& on_step = {});

// Loss shares and efficiency (100 - sum of shares). Throws when the load
// energy is zero.
void compute_metrics(AnnualReport& report);

}  // namespace nanogrid
