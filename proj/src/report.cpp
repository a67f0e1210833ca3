#include "nanogrid/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";
constexpr const char* kBinLabels[4] = {"0-25", "25-50", "50-75", "75-100"};

ordered_json histogram_json(const OperatingHistogram& hist) {
    ordered_json h;
    h["counts"] = hist.bins;
    h["idle_count"] = hist.idle_count;
    h["over_nominal_count"] = hist.over_nominal_count;
    h["shares_pct"] = hist.shares_pct();
    h["idle_share_pct"] = hist.idle_share_pct();
    return h;
}

ordered_json category_map(const std::array<double, kNumLoadCategories>& values) {
    ordered_json out;
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        out[std::string(kLoadCategoryNames[c])] = values[c];
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(errc::io_failure, "cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw Error(errc::io_failure, "failed writing " + path.string());
    }
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(errc::io_failure,
                    "cannot create output directory " + dir.string() + ": " +
                        ec.message());
    }
}

}  // namespace

std::string summary_json(const AnnualReport& report) {
    ordered_json j;
    j["label"] = report.label;
    j["bus_voltage_v"] = report.bus_voltage_v;
    j["steps"] = report.steps;
    j["dt_hours"] = report.dt_hours;

    ordered_json energy;
    energy["load_total"] = report.load_energy_kwh;
    energy["load_by_category"] = category_map(report.load_by_category_kwh);
    energy["pv_generated"] = report.pv_generated_kwh;
    energy["pv_delivered"] = report.pv_delivered_kwh;
    energy["grid_import_bus"] = report.grid_import_bus_kwh;
    energy["grid_import_grid"] = report.grid_import_grid_kwh;
    energy["grid_export_bus"] = report.grid_export_bus_kwh;
    energy["grid_export_grid"] = report.grid_export_grid_kwh;
    energy["battery_charge"] = report.battery_charge_kwh;
    energy["battery_discharge"] = report.battery_discharge_kwh;
    j["energy_kwh"] = energy;

    ordered_json loss;
    loss["wiring"] = report.wiring_loss_kwh;
    loss["wiring_by_category"] = category_map(report.wiring_loss_by_category_kwh);
    loss["pv_converter"] = report.pv_converter_loss_kwh;
    loss["ac_dc_converter"] = report.ac_dc_loss_kwh;
    loss["battery_converter"] = report.battery_converter_loss_kwh;
    j["loss_kwh"] = loss;

    ordered_json shares;
    shares["wiring"] = report.wiring_share_pct;
    shares["pv_converter"] = report.pv_converter_share_pct;
    shares["ac_dc_converter"] = report.ac_dc_share_pct;
    shares["battery_converter"] = report.battery_converter_share_pct;
    j["loss_shares_pct"] = shares;
    j["efficiency_pct"] = report.efficiency_pct;

    ordered_json battery;
    battery["present"] = report.battery_present;
    battery["capacity_kwh"] = report.battery_capacity_kwh;
    battery["bdt_hours"] = report.bdt_hours;
    battery["net_soc_change_kwh"] = report.net_soc_change_kwh;
    j["battery"] = battery;

    ordered_json hists;
    hists["pv"] = histogram_json(report.pv_hist);
    hists["ac_dc"] = histogram_json(report.ac_dc_hist);
    if (report.battery_present) {
        hists["battery"] = histogram_json(report.battery_hist);
    }
    j["histograms"] = hists;

    return j.dump(2) + "\n";
}

std::string losses_csv(const AnnualReport& report) {
    std::ostringstream out;
    out << "category,loss_kwh,share_pct\n";
    auto row = [&](const char* name, double kwh, double pct) {
        out << name << ',' << format_double(kwh) << ',' << format_double(pct) << '\n';
    };
    row("pv_converter", report.pv_converter_loss_kwh, report.pv_converter_share_pct);
    row("ac_dc_converter", report.ac_dc_loss_kwh, report.ac_dc_share_pct);
    row("battery_converter", report.battery_converter_loss_kwh,
        report.battery_converter_share_pct);
    row("wiring", report.wiring_loss_kwh, report.wiring_share_pct);
    return out.str();
}

std::string histograms_csv(const AnnualReport& report) {
    std::ostringstream out;
    out << "converter,bin,share_pct,idle_pct\n";
    auto rows = [&](const char* name, const OperatingHistogram& hist) {
        std::array<double, 4> shares = hist.shares_pct();
        double idle = hist.idle_share_pct();
        for (std::size_t b = 0; b < shares.size(); ++b) {
            out << name << ',' << kBinLabels[b] << ',' << format_double(shares[b])
                << ',' << format_double(idle) << '\n';
        }
    };
    rows("pv", report.pv_hist);
    rows("ac_dc", report.ac_dc_hist);
    if (report.battery_present) rows("battery", report.battery_hist);
    return out.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << "capacity_kwh,efficiency_pct,bdt_hours\n";
    for (const SweepPoint& p : points) {
        out << format_double(p.capacity_kwh) << ',' << format_double(p.efficiency_pct)
            << ',' << format_double(p.bdt_hours) << '\n';
    }
    return out.str();
}

std::string sweep_summary_json(const SweepResult& result) {
    ordered_json j;
    ordered_json points = ordered_json::array();
    for (const SweepPoint& p : result.points) {
        ordered_json point;
        point["capacity_kwh"] = p.capacity_kwh;
        point["efficiency_pct"] = p.efficiency_pct;
        point["bdt_hours"] = p.bdt_hours;
        points.push_back(point);
    }
    j["points"] = points;
    ordered_json knee;
    knee["capacity_kwh"] = result.knee_capacity_kwh;
    knee["found"] = result.knee_found;
    knee["snapped_capacity_kwh"] = result.snapped_capacity_kwh;
    knee["module_kwh"] = result.module_kwh;
    j["knee"] = knee;
    return j.dump(2) + "\n";
}

std::string matrix_csv(const std::vector<MatrixCell>& cells) {
    std::ostringstream out;
    out << "load_model,voltage,battery,efficiency_pct\n";
    for (const MatrixCell& cell : cells) {
        out << cell.load_model << ',' << format_double(cell.bus_voltage_v) << ','
            << (cell.battery_enabled ? "yes" : "no") << ','
            << format_double(cell.report.efficiency_pct) << '\n';
    }
    return out.str();
}

void emit_report(const AnnualReport& report, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    write_file(out_dir / "summary.json", summary_json(report));
    write_file(out_dir / "losses.csv", losses_csv(report));
    write_file(out_dir / "histograms.csv", histograms_csv(report));
}

void emit_sweep_report(const SweepResult& result, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    write_file(out_dir / "sweep.csv", sweep_csv(result.points));
    write_file(out_dir / "sweep_summary.json", sweep_summary_json(result));
}

void emit_matrix_report(const std::vector<MatrixCell>& cells,
                        const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    write_file(out_dir / "matrix.csv", matrix_csv(cells));
    for (const MatrixCell& cell : cells) {
        std::string name = "cell_" + cell.load_model + "_" +
                           format_double(cell.bus_voltage_v) + "v_" +
                           (cell.battery_enabled ? "bat" : "nobat") + ".json";
        write_file(out_dir / name, summary_json(cell.report));
    }
}

void emit_run_meta(const std::string& label, const std::string& mode,
                   const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

    ordered_json j;
    j["label"] = label;
    j["mode"] = mode;
    j["generated_utc"] = stamp;
    j["tool_version"] = kVersion;
    write_file(out_dir / "run_meta.json", j.dump(2) + "\n");
}

TraceWriter::TraceWriter(std::ostream& out) : out_(out) {
    out_ << "t";
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        out_ << ",load_" << kLoadCategoryNames[c] << "_kw";
    }
    for (std::size_t c = 0; c < kNumLoadCategories; ++c) {
        out_ << ",wiring_loss_" << kLoadCategoryNames[c] << "_kw";
    }
    out_ << ",pv_input_kw,pv_output_kw,pv_loss_kw,excess_kw"
            ",battery_side_kw,battery_bus_kw,battery_conv_loss_kw"
            ",soc_after,bdt_hours_after"
            ",import_bus_kw,import_grid_kw,export_bus_kw,export_grid_kw"
            ",ac_dc_loss_kw,conservation_residual_kw\n";
}

void TraceWriter::write_step(std::size_t t, const StepResult& step) {
    out_ << t;
    for (double v : step.load_kw) out_ << ',' << format_double(v);
    for (double v : step.wiring_loss_kw) out_ << ',' << format_double(v);
    out_ << ',' << format_double(step.pv_input_kw) << ','
         << format_double(step.pv_output_kw) << ',' << format_double(step.pv_loss_kw)
         << ',' << format_double(step.excess_kw) << ','
         << format_double(step.battery_side_kw) << ','
         << format_double(step.battery_bus_kw) << ','
         << format_double(step.battery_conv_loss_kw) << ','
         << format_double(step.soc_after) << ','
         << format_double(step.bdt_hours_after) << ','
         << format_double(step.import_bus_kw) << ','
         << format_double(step.import_grid_kw) << ','
         << format_double(step.export_bus_kw) << ','
         << format_double(step.export_grid_kw) << ','
         << format_double(step.ac_dc_loss_kw) << ','
         << format_double(step.conservation_residual_kw) << '\n';
}

}  // namespace nanogrid
