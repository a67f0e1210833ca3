#include "nanogrid/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

using nlohmann::json;

[[noreturn]] void missing(const std::string& path) {
    throw Error(errc::missing_field, "config field missing: " + path);
}

[[noreturn]] void invalid(const std::string& path, const std::string& why) {
    throw Error(errc::invalid_value, "config field " + path + ": " + why);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) missing(path + key);
    return obj.at(key);
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) invalid(path, "expected a number");
    return value.get<double>();
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
    return as_number(require(obj, key, path), path + key);
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return as_number(obj.at(key), path + key);
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& path) {
    const json& value = require(obj, key, path);
    if (!value.is_string()) invalid(path + key, "expected a string");
    return value.get<std::string>();
}

bool bool_or(const json& obj, const std::string& key, bool fallback,
             const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    const json& value = obj.at(key);
    if (!value.is_boolean()) invalid(path + key, "expected a boolean");
    return value.get<bool>();
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(errc::file_not_found, "cannot open config file " + path.string());
    }
    try {
        return json::parse(in, nullptr, true, true);  // comments allowed
    } catch (const json::parse_error& e) {
        throw Error(errc::invalid_value,
                    "config parse error in " + path.string() + ": " + e.what());
    }
}

std::ifstream open_data_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(errc::file_not_found, "cannot open data file " + path.string());
    }
    return in;
}

TimeSeries load_series_file(const std::filesystem::path& path, std::size_t hours,
                            double dt_hours) {
    std::ifstream in = open_data_file(path);
    try {
        return parse_profile_csv(in, hours, dt_hours);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

EfficiencyCurve load_curve_file(const std::filesystem::path& path) {
    std::ifstream in = open_data_file(path);
    try {
        return EfficiencyCurve::from_csv(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

// "profiles" is either one four-column file or an object of four paths.
LoadProfile load_profiles(const json& node, const std::filesystem::path& config_dir,
                          std::size_t hours, double dt_hours, const std::string& path) {
    if (node.is_string()) {
        std::filesystem::path file =
            resolve_data_path(node.get<std::string>(), config_dir);
        std::ifstream in = open_data_file(file);
        try {
            return parse_load_profile_csv(in, hours, dt_hours);
        } catch (const Error& e) {
            throw Error(e.code(), file.string() + ": " + e.what());
        }
    }
    if (!node.is_object()) invalid(path, "expected a file path or an object of four paths");
    std::array<std::optional<TimeSeries>, kNumLoadCategories> series;
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        std::string key{kLoadCategoryNames[c]};
        std::string file = require_string(node, key, path + ".");
        series[c] = load_series_file(resolve_data_path(file, config_dir), hours,
                                     dt_hours);
    }
    return LoadProfile(std::move(*series[0]), std::move(*series[1]),
                       std::move(*series[2]), std::move(*series[3]));
}

TimeSeries load_pv(const json& node, const std::filesystem::path& config_dir,
                   std::size_t hours, double dt_hours, const LoadProfile& loads,
                   const std::string& path) {
    std::string file;
    bool prescaled = false;
    if (node.is_string()) {
        file = node.get<std::string>();
    } else if (node.is_object()) {
        file = require_string(node, "profile", path + ".");
        prescaled = bool_or(node, "prescaled", false, path + ".");
    } else {
        invalid(path, "expected a file path or an object with a profile path");
    }
    TimeSeries raw = load_series_file(resolve_data_path(file, config_dir), hours,
                                      dt_hours);
    if (prescaled) return raw;
    return apply_pv_scaling(raw, pv_scaling_factor(raw, loads.total()));
}

AmpacityTable load_ampacity(const json& root, const std::filesystem::path& config_dir,
                            const std::string& path) {
    if (root.is_object() && root.contains("ampacity_table")) {
        std::string file = require_string(root, "ampacity_table", path);
        std::ifstream in =
            open_data_file(resolve_data_path(file, config_dir));
        return AmpacityTable::from_csv(in);
    }
    return AmpacityTable::default_table();
}

// Per-category wiring: a direct r_eq_mohm, or conductor runs sized from the
// category's own peak current.
WiringCircuit parse_wiring_circuit(const json& node, LoadCategory category,
                                   double peak_category_kw, double bus_voltage_v,
                                   const AmpacityTable& ampacity,
                                   const std::string& path) {
    WiringCircuit circuit;
    circuit.category = category;
    if (!node.is_object()) invalid(path, "expected an object");
    if (node.contains("r_eq_mohm")) {
        circuit.r_eq_mohm = as_number(node.at("r_eq_mohm"), path + ".r_eq_mohm");
        if (circuit.r_eq_mohm < 0.0) invalid(path + ".r_eq_mohm", "must be >= 0");
        circuit.source = WiringSource::direct_table;
        return circuit;
    }
    const json& runs = require(node, "runs", path + ".");
    if (!runs.is_array() || runs.empty()) invalid(path + ".runs", "expected a nonempty array");
    double safety = number_or(node, "safety_factor", 1.5, path + ".");

    std::vector<double> lengths;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string run_path = path + ".runs[" + std::to_string(i) + "]";
        const json& run = runs.at(i);
        double length = require_number(run, "run_length_m", run_path + ".");
        double items = number_or(run, "items", 1.0, run_path + ".");
        if (length < 0.0) invalid(run_path + ".run_length_m", "must be >= 0");
        if (items < 1.0 || items != static_cast<double>(static_cast<int>(items))) {
            invalid(run_path + ".items", "must be a positive integer");
        }
        for (int j = 0; j < static_cast<int>(items); ++j) lengths.push_back(length);
    }
    double n = static_cast<double>(lengths.size());
    double peak_current_a = peak_category_kw * 1000.0 / bus_voltage_v;
    double cross_section =
        size_conductor(peak_current_a / n, safety, ampacity);

    std::vector<double> resistances;
    resistances.reserve(lengths.size());
    for (double length : lengths) {
        resistances.push_back(
            wire_resistance_ohm({length, cross_section, kCopperResistivityOhmM}));
    }
    circuit.r_eq_mohm = equivalent_resistance_ohm(resistances) * 1000.0;
    circuit.source = WiringSource::computed;
    return circuit;
}

std::array<WiringCircuit, kNumLoadCategories> parse_wiring(
    const json& node, const LoadProfile& loads, double bus_voltage_v,
    const AmpacityTable& ampacity, const std::string& path) {
    std::array<WiringCircuit, kNumLoadCategories> wiring{};
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        wiring[c].category = static_cast<LoadCategory>(c);
        wiring[c].r_eq_mohm = 0.0;
        wiring[c].source = WiringSource::direct_table;
    }
    if (node.is_null()) return wiring;  // no wiring block: lossless cabling
    if (!node.is_object()) invalid(path, "expected an object keyed by load category");
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        std::string key{kLoadCategoryNames[c]};
        if (!node.contains(key)) continue;
        auto category = static_cast<LoadCategory>(c);
        wiring[c] = parse_wiring_circuit(node.at(key), category,
                                         loads[category].max(), bus_voltage_v,
                                         ampacity, path + "." + key);
    }
    return wiring;
}

ConverterSpec parse_converter(const json& node, ConverterRole role,
                              double auto_peak_kw,
                              const std::filesystem::path& config_dir,
                              const std::string& path) {
    if (!node.is_object()) invalid(path, "expected an object");
    ConverterSpec spec;
    spec.role = role;
    std::string curve_file = require_string(node, "curve", path + ".");
    spec.curve = load_curve_file(resolve_data_path(curve_file, config_dir));

    double fallback_nominal = auto_peak_kw > 0.0 ? auto_peak_kw : 1.0;
    bool has_unit = node.contains("unit_nominal_kw");
    bool has_count = node.contains("parallel_count");
    if (has_count) {
        const json& pc = node.at("parallel_count");
        if (!pc.is_number_integer() || pc.get<int>() < 1) {
            invalid(path + ".parallel_count", "must be an integer >= 1");
        }
        spec.parallel_count = pc.get<int>();
    }
    if (has_unit) {
        spec.unit_nominal_kw = require_number(node, "unit_nominal_kw", path + ".");
        if (!(spec.unit_nominal_kw > 0.0)) {
            invalid(path + ".unit_nominal_kw", "must be positive");
        }
        if (!has_count) {
            spec.parallel_count =
                parallel_count_for(auto_peak_kw, spec.unit_nominal_kw);
        }
    } else if (has_count) {
        // Count without a unit rating: split the auto-sized total evenly.
        spec.unit_nominal_kw = fallback_nominal / spec.parallel_count;
    } else {
        spec.unit_nominal_kw = fallback_nominal;
        spec.parallel_count = 1;
    }
    return spec;
}

BatterySpec parse_battery(const json& node, const std::string& path) {
    BatterySpec spec;
    spec.capacity_kwh = number_or(node, "capacity_kwh", 0.0, path + ".");
    if (spec.capacity_kwh < 0.0) invalid(path + ".capacity_kwh", "must be >= 0");
    spec.soc_min = number_or(node, "soc_min", 0.20, path + ".");
    spec.soc_max = number_or(node, "soc_max", 1.00, path + ".");
    spec.c_rate_divisor = number_or(node, "c_rate_divisor", 4.0, path + ".");
    if (!(spec.soc_min >= 0.0 && spec.soc_min < spec.soc_max && spec.soc_max <= 1.0)) {
        invalid(path, "SOC window must satisfy 0 <= soc_min < soc_max <= 1");
    }
    if (!(spec.c_rate_divisor > 0.0)) invalid(path + ".c_rate_divisor", "must be positive");
    return spec;
}

double peak_bus_demand_kw(const LoadProfile& loads,
                          const std::array<WiringCircuit, kNumLoadCategories>& wiring,
                          double bus_voltage_v) {
    double peak = 0.0;
    for (std::size_t t = 0; t < loads.size(); ++t) {
        double demand = 0.0;
        for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
            double load = loads[static_cast<LoadCategory>(c)][t];
            demand += load + wiring_loss_kw(wiring[c], load, bus_voltage_v);
        }
        peak = std::max(peak, demand);
    }
    return peak;
}

std::size_t parse_hours(const json& root, const std::string& path) {
    double hours = number_or(root, "hours", double(kHoursPerYear), path);
    if (hours < 1.0 || hours != static_cast<double>(static_cast<std::size_t>(hours))) {
        invalid(path + "hours", "must be a positive integer");
    }
    return static_cast<std::size_t>(hours);
}

// Assembles a scenario from already-parsed pieces shared by the single-run
// and matrix loaders.
Scenario assemble_scenario(std::string label, double bus_voltage_v,
                           LoadProfile loads, TimeSeries pv,
                           std::array<WiringCircuit, kNumLoadCategories> wiring,
                           const json& converters_node, const json& battery_node,
                           const std::filesystem::path& config_dir,
                           const std::string& converters_path,
                           const std::string& battery_path) {
    Scenario scenario(std::move(loads), std::move(pv));
    scenario.label = std::move(label);
    scenario.bus_voltage_v = bus_voltage_v;
    scenario.wiring = wiring;

    scenario.battery = parse_battery(battery_node, battery_path);

    double pv_peak = scenario.pv.max();
    double demand_peak =
        peak_bus_demand_kw(scenario.loads, scenario.wiring, bus_voltage_v);

    const json& pv_conv = require(converters_node, "pv", converters_path + ".");
    scenario.pv_converter = parse_converter(pv_conv, ConverterRole::pv, pv_peak,
                                            config_dir, converters_path + ".pv");
    // The grid tie sees import up to peak demand and export up to peak PV.
    const json& acdc_conv = require(converters_node, "ac_dc", converters_path + ".");
    scenario.ac_dc_converter =
        parse_converter(acdc_conv, ConverterRole::ac_dc,
                        std::max(demand_peak, pv_peak), config_dir,
                        converters_path + ".ac_dc");

    if (scenario.has_battery()) {
        const json& bat_conv = require(converters_node, "battery", converters_path + ".");
        scenario.battery_converter = parse_converter(
            bat_conv, ConverterRole::battery,
            max_transfer_power_kw(scenario.battery), config_dir,
            converters_path + ".battery");
        scenario.initial_soc =
            number_or(battery_node, "initial_soc",
                      default_initial_soc(scenario.battery), battery_path + ".");
    }

    scenario.validate();
    return scenario;
}

}  // namespace

std::filesystem::path resolve_data_path(const std::string& raw,
                                        const std::filesystem::path& config_dir) {
    if (raw.empty()) {
        throw Error(errc::invalid_value, "empty file path in config");
    }
    std::filesystem::path p(raw);
    if (p.is_absolute()) {
        if (std::filesystem::exists(p)) return p;
        throw Error(errc::file_not_found, "file not found: " + raw);
    }
    std::filesystem::path local = config_dir / p;
    if (std::filesystem::exists(local)) return local;
    if (const char* env = std::getenv(kDataDirEnv)) {
        std::filesystem::path fallback = std::filesystem::path(env) / p;
        if (std::filesystem::exists(fallback)) return fallback;
    }
    throw Error(errc::file_not_found,
                "file not found: " + raw + " (tried " + local.string() +
                    " and $" + kDataDirEnv + ")");
}

RunConfig load_run_config(const std::filesystem::path& config_path) {
    json root = load_json_file(config_path);
    if (!root.is_object()) {
        throw Error(errc::invalid_value, "config root must be a JSON object");
    }
    std::filesystem::path config_dir = config_path.parent_path();

    std::string label = root.contains("label")
                            ? require_string(root, "label", "")
                            : config_path.stem().string();
    double bus_voltage = require_number(root, "bus_voltage", "");
    std::size_t hours = parse_hours(root, "");
    double dt_hours = number_or(root, "dt_hours", 1.0, "");

    LoadProfile loads = load_profiles(require(root, "profiles", ""), config_dir,
                                      hours, dt_hours, "profiles");
    TimeSeries pv = load_pv(require(root, "pv", ""), config_dir, hours, dt_hours,
                            loads, "pv");
    AmpacityTable ampacity = load_ampacity(root, config_dir, "");
    auto wiring = parse_wiring(root.contains("wiring") ? root.at("wiring") : json(),
                               loads, bus_voltage, ampacity, "wiring");

    json battery_node = root.contains("battery") ? root.at("battery") : json::object();

    RunConfig config{
        label,
        assemble_scenario(label, bus_voltage, std::move(loads), std::move(pv),
                          wiring, require(root, "converters", ""), battery_node,
                          config_dir, "converters", "battery"),
        SweepRequest{}, 2.4, false};

    if (root.contains("sweep")) {
        const json& sweep = root.at("sweep");
        config.sweep.start_kwh = number_or(sweep, "start_kwh", 2.4, "sweep.");
        config.sweep.stop_kwh = number_or(sweep, "stop_kwh", 48.0, "sweep.");
        config.sweep.step_kwh = number_or(sweep, "step_kwh", 2.4, "sweep.");
        config.sweep.knee_threshold_h_per_kwh =
            number_or(sweep, "knee_threshold_h_per_kwh", 1.0, "sweep.");
        config.sweep_module_kwh = number_or(sweep, "module_kwh", 2.4, "sweep.");
        config.has_sweep = true;
    }
    return config;
}

MatrixRunConfig load_matrix_config(const std::filesystem::path& config_path) {
    json root = load_json_file(config_path);
    if (!root.is_object()) {
        throw Error(errc::invalid_value, "config root must be a JSON object");
    }
    std::filesystem::path config_dir = config_path.parent_path();

    MatrixRunConfig config;
    config.label = root.contains("label") ? require_string(root, "label", "")
                                          : config_path.stem().string();
    std::size_t hours = parse_hours(root, "");
    double dt_hours = number_or(root, "dt_hours", 1.0, "");

    const json& voltages = require(root, "voltages", "");
    if (!voltages.is_array() || voltages.empty()) {
        invalid("voltages", "expected a nonempty array of numbers");
    }
    for (const json& v : voltages) {
        config.voltages.push_back(as_number(v, "voltages[]"));
    }
    if (root.contains("battery_options")) {
        const json& options = root.at("battery_options");
        if (!options.is_array() || options.empty()) {
            invalid("battery_options", "expected a nonempty array of booleans");
        }
        for (const json& b : options) {
            if (!b.is_boolean()) invalid("battery_options[]", "expected a boolean");
            config.battery_options.push_back(b.get<bool>());
        }
    } else {
        config.battery_options = {false, true};
    }

    AmpacityTable ampacity = load_ampacity(root, config_dir, "");
    const json& converters = require(root, "converters", "");
    const json& models = require(root, "load_models", "");
    if (!models.is_array() || models.empty()) {
        invalid("load_models", "expected a nonempty array");
    }

    // Everything the factory needs, parsed once up front so per-cell
    // construction cannot fail on I/O.
    struct ModelData {
        LoadProfile loads;
        TimeSeries pv_scaled;
        BatterySpec battery;
        json battery_node;
        std::map<std::string, std::array<WiringCircuit, kNumLoadCategories>> wiring;
    };
    struct MatrixData {
        std::map<std::string, ModelData> models;
        json converters;
        std::filesystem::path config_dir;
        std::string label;
    };
    auto data = std::make_shared<MatrixData>();
    data->converters = converters;
    data->config_dir = config_dir;
    data->label = config.label;

    const json& pv_node = require(root, "pv", "");
    TimeSeries pv_raw = [&] {
        std::string file;
        if (pv_node.is_string()) {
            file = pv_node.get<std::string>();
        } else {
            file = require_string(pv_node, "profile", "pv.");
        }
        return load_series_file(resolve_data_path(file, config_dir), hours, dt_hours);
    }();
    bool pv_prescaled = pv_node.is_object() && bool_or(pv_node, "prescaled", false, "pv.");

    for (std::size_t m = 0; m < models.size(); ++m) {
        std::string model_path = "load_models[" + std::to_string(m) + "]";
        const json& model = models.at(m);
        std::string name = require_string(model, "name", model_path + ".");
        if (data->models.count(name)) {
            invalid(model_path + ".name", "duplicate load model name '" + name + "'");
        }

        LoadProfile loads = load_profiles(require(model, "profiles", model_path + "."),
                                          config_dir, hours, dt_hours,
                                          model_path + ".profiles");
        TimeSeries pv_scaled =
            pv_prescaled
                ? pv_raw
                : apply_pv_scaling(pv_raw, pv_scaling_factor(pv_raw, loads.total()));

        json battery_node =
            model.contains("battery") ? model.at("battery") : json::object();
        BatterySpec battery = parse_battery(battery_node, model_path + ".battery");
        if (!(battery.capacity_kwh > 0.0)) {
            invalid(model_path + ".battery.capacity_kwh",
                    "matrix models need a positive battery capacity for their"
                    " with-battery cells");
        }

        const json& wiring_node = require(model, "wiring", model_path + ".");
        std::map<std::string, std::array<WiringCircuit, kNumLoadCategories>> wiring;
        for (double voltage : config.voltages) {
            std::string key = format_double(voltage);
            if (!wiring_node.contains(key)) {
                missing(model_path + ".wiring." + key);
            }
            wiring[key] = parse_wiring(wiring_node.at(key), loads, voltage, ampacity,
                                       model_path + ".wiring." + key);
        }

        config.load_models.push_back(name);
        data->models.emplace(name, ModelData{std::move(loads), std::move(pv_scaled),
                                             battery, battery_node,
                                             std::move(wiring)});
    }

    // Validate converter blocks for every voltage up front (cheap, catches
    // typos before any year-long run starts).
    for (const char* role : {"pv", "ac_dc", "battery"}) {
        const json& role_node = require(converters, role, "converters.");
        for (double voltage : config.voltages) {
            std::string key = format_double(voltage);
            if (!role_node.contains(key)) {
                missing("converters." + std::string(role) + "." + key);
            }
        }
    }

    config.factory = [data](const std::string& model_name, double voltage,
                            bool battery_enabled) {
        auto it = data->models.find(model_name);
        if (it == data->models.end()) {
            throw Error(errc::invalid_value, "unknown load model '" + model_name + "'");
        }
        const ModelData& model = it->second;
        std::string vkey = format_double(voltage);
        auto wiring_it = model.wiring.find(vkey);
        if (wiring_it == model.wiring.end()) {
            throw Error(errc::invalid_value,
                        "no wiring table for voltage " + vkey + " V");
        }

        json cell_converters = json::object();
        for (const char* role : {"pv", "ac_dc", "battery"}) {
            cell_converters[role] = data->converters.at(role).at(vkey);
        }
        json battery_node = model.battery_node;
        if (!battery_enabled) {
            battery_node = json::object();
            battery_node["capacity_kwh"] = 0.0;
        }

        return assemble_scenario(
            data->label + "_" + model_name + "_" + vkey + "v" +
                (battery_enabled ? "_bat" : "_nobat"),
            voltage, model.loads, model.pv_scaled, wiring_it->second,
            cell_converters, battery_node, data->config_dir,
            "converters(" + vkey + ")", "battery");
    };
    return config;
}

}  // namespace nanogrid
