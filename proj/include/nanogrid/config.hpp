#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nanogrid/engine.hpp"
#include "nanogrid/sweep.hpp"

namespace nanogrid {

// Environment variable naming a fallback directory for relative data paths
// in config files (searched after the config's own directory).
inline constexpr const char* kDataDirEnv = "NANOGRID_DATA_DIR";

std::filesystem::path resolve_data_path(const std::string& raw,
                                        const std::filesystem::path& config_dir);

// A fully resolved single-scenario run. `sweep` is only meaningful when the
// config carried a sweep block (has_sweep).
struct RunConfig {
    std::string label;
    Scenario scenario;
    SweepRequest sweep;
    double sweep_module_kwh = 2.4;
    bool has_sweep = false;
};

// Parses a JSON scenario config (schema documented in the README), loads
// every referenced profile/curve/table file, applies defaults, scales the
// PV series to the annual load energy unless marked prescaled, and sizes
// any converter whose nominal was left out. Throws Error with MissingField /
// InvalidValue (carrying the JSON field path) or FileNotFound.
RunConfig load_run_config(const std::filesystem::path& config_path);

// Matrix config: shared PV + curves per voltage, one entry per load model
// with its profiles, per-voltage wiring and battery capacity.
struct MatrixRunConfig {
    std::string label;
    std::vector<std::string> load_models;
    std::vector<double> voltages;
    std::vector<bool> battery_options;
    ScenarioFactory factory;  // owns the parsed data via shared state
};

MatrixRunConfig load_matrix_config(const std::filesystem::path& config_path);

}  // namespace nanogrid
