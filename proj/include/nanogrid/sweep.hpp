#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nanogrid/engine.hpp"

namespace nanogrid {

struct SweepPoint {
    double capacity_kwh = 0.0;
    double efficiency_pct = 0.0;
    double bdt_hours = 0.0;
};

struct SweepRequest {
    double start_kwh = 2.4;
    double stop_kwh = 48.0;
    double step_kwh = 2.4;
    double knee_threshold_h_per_kwh = 1.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double knee_capacity_kwh = 0.0;
    bool knee_found = false;
    double snapped_capacity_kwh = 0.0;
    double module_kwh = 2.4;
};

// Runs the annual simulation once per capacity. Each point re-derives the
// battery converter nominal from the capacity's C-rate cap, so the converter
// grows with the pack.
std::vector<SweepPoint> run_capacity_sweep(
    const Scenario& base, const SweepRequest& request,
    const std::function<void(const SweepPoint&)>& on_point = {});

// Smallest capacity after which every interval slope |dBDT/dC| stays below
// the threshold. Falls back to the largest capacity when no such point
// exists (knee_found stays false in SweepResult).
std::size_t knee_index(const std::vector<SweepPoint>& points,
                       double threshold_h_per_kwh, bool& found);

// Largest multiple of module_kwh not above capacity (at least one module).
double snap_to_module(double capacity_kwh, double module_kwh);

SweepResult analyze_sweep(std::vector<SweepPoint> points,
                          double threshold_h_per_kwh, double module_kwh);

struct MatrixCell {
    std::string load_model;
    double bus_voltage_v = 0.0;
    bool battery_enabled = false;
    AnnualReport report;
};

// Builds the scenario for one cell. The factory owns all per-cell wiring,
// curve and battery-capacity lookups; the matrix runner only iterates.
using ScenarioFactory =
    std::function<Scenario(const std::string& load_model, double bus_voltage_v,
                           bool battery_enabled)>;

// Cartesian product in (load model, voltage, battery) order, one full
// annual run per cell. Errors from a cell are rethrown with the cell's
// identity prefixed to the message.
std::vector<MatrixCell> run_scenario_matrix(
    const std::vector<std::string>& load_models,
    const std::vector<double>& voltages, const std::vector<bool>& battery_options,
    const ScenarioFactory& factory,
    const std::function<void(const MatrixCell&)>& on_cell = {});

}  // namespace nanogrid
