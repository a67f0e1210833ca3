// Command-line front end: simulate | sweep | matrix over JSON scenario
// configs, writing the report files described in the README.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nanogrid/config.hpp"
#include "nanogrid/csv.hpp"
#include "nanogrid/engine.hpp"
#include "nanogrid/errors.hpp"
#include "nanogrid/report.hpp"
#include "nanogrid/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using namespace nanogrid;

void print_report_line(const AnnualReport& report) {
    std::cout << report.label << ": efficiency " << format_double(report.efficiency_pct)
              << "% (losses: ac_dc " << format_double(report.ac_dc_share_pct)
              << "%, pv " << format_double(report.pv_converter_share_pct)
              << "%, battery " << format_double(report.battery_converter_share_pct)
              << "%, wiring " << format_double(report.wiring_share_pct) << "%)";
    if (report.battery_present) {
        std::cout << ", bdt " << format_double(report.bdt_hours) << " h";
    }
    std::cout << '\n';
}

int run_simulate(const fs::path& config_path, const fs::path& out_dir, bool trace,
                 bool quiet) {
    RunConfig config = load_run_config(config_path);

    std::ofstream trace_file;
    std::optional<TraceWriter> trace_writer;
    StepCallback on_step;
    if (trace) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        trace_file.open(out_dir / "trace.csv", std::ios::binary);
        if (!trace_file) {
            throw Error(errc::io_failure,
                        "cannot open trace file in " + out_dir.string());
        }
        trace_writer.emplace(trace_file);
        on_step = [&](std::size_t t, const StepResult& step) {
            trace_writer->write_step(t, step);
        };
    }

    AnnualReport report = simulate_year(config.scenario, on_step);
    emit_report(report, out_dir);
    emit_run_meta(config.label, "simulate", out_dir);
    if (!quiet) print_report_line(report);
    return 0;
}

int run_sweep(const fs::path& config_path, const fs::path& out_dir, bool quiet) {
    RunConfig config = load_run_config(config_path);
    if (!config.scenario.battery_converter.has_value()) {
        throw Error(errc::invalid_value,
                    "sweep needs a battery converter; set battery.capacity_kwh > 0 "
                    "and a converters.battery block in " + config_path.string());
    }
    auto on_point = [&](const SweepPoint& p) {
        if (!quiet) {
            std::cout << "  " << format_double(p.capacity_kwh) << " kWh: efficiency "
                      << format_double(p.efficiency_pct) << "%, bdt "
                      << format_double(p.bdt_hours) << " h\n";
        }
    };
    std::vector<SweepPoint> points =
        run_capacity_sweep(config.scenario, config.sweep, on_point);
    SweepResult result = analyze_sweep(std::move(points),
                                       config.sweep.knee_threshold_h_per_kwh,
                                       config.sweep_module_kwh);
    emit_sweep_report(result, out_dir);
    emit_run_meta(config.label, "sweep", out_dir);
    if (!quiet) {
        std::cout << config.label << ": knee "
                  << format_double(result.knee_capacity_kwh) << " kWh"
                  << (result.knee_found ? "" : " (no knee, largest capacity)")
                  << ", snapped " << format_double(result.snapped_capacity_kwh)
                  << " kWh\n";
    }
    return 0;
}

int run_matrix(const fs::path& config_path, const fs::path& out_dir, bool quiet) {
    MatrixRunConfig config = load_matrix_config(config_path);
    auto on_cell = [&](const MatrixCell& cell) {
        if (!quiet) {
            std::cout << "  " << cell.load_model << " @ "
                      << format_double(cell.bus_voltage_v) << " V, "
                      << (cell.battery_enabled ? "battery" : "no battery")
                      << ": efficiency "
                      << format_double(cell.report.efficiency_pct) << "%\n";
        }
    };
    std::vector<MatrixCell> cells =
        run_scenario_matrix(config.load_models, config.voltages,
                            config.battery_options, config.factory, on_cell);
    emit_matrix_report(cells, out_dir);
    emit_run_meta(config.label, "matrix", out_dir);
    if (!quiet) {
        std::cout << config.label << ": " << cells.size() << " cells written to "
                  << out_dir.string() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hourly energy-flow simulator for a PV + battery DC nanogrid"};
    app.require_subcommand(1);

    std::string config_file;
    std::string out_dir = "out";
    bool trace = false;
    bool quiet = false;

    CLI::App* simulate = app.add_subcommand("simulate", "run one annual scenario");
    simulate->add_option("config", config_file, "scenario config (JSON)")->required();
    simulate->add_option("--out", out_dir, "output directory (default: out)");
    simulate->add_flag("--trace", trace, "write a per-step trace.csv");
    simulate->add_flag("--quiet", quiet, "suppress progress output");

    CLI::App* sweep = app.add_subcommand("sweep", "battery-capacity sweep");
    sweep->add_option("config", config_file, "scenario config (JSON)")->required();
    sweep->add_option("--out", out_dir, "output directory (default: out)");
    sweep->add_flag("--quiet", quiet, "suppress progress output");

    CLI::App* matrix = app.add_subcommand("matrix", "load-model x voltage x battery matrix");
    matrix->add_option("config", config_file, "matrix config (JSON)")->required();
    matrix->add_option("--out", out_dir, "output directory (default: out)");
    matrix->add_flag("--quiet", quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed()) return run_simulate(config_file, out_dir, trace, quiet);
        if (sweep->parsed()) return run_sweep(config_file, out_dir, quiet);
        return run_matrix(config_file, out_dir, quiet);
    } catch (const nanogrid::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
