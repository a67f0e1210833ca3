#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nanogrid/engine.hpp"
#include "nanogrid/sweep.hpp"

namespace nanogrid {

// Report writers. Data files are pure functions of the results (stable key
// order, shortest round-trip numbers, no timestamps); wall-clock metadata
// goes only to run_meta.json.

std::string summary_json(const AnnualReport& report);
std::string losses_csv(const AnnualReport& report);
std::string histograms_csv(const AnnualReport& report);
std::string sweep_csv(const std::vector<SweepPoint>& points);
std::string sweep_summary_json(const SweepResult& result);
std::string matrix_csv(const std::vector<MatrixCell>& cells);

// summary.json + losses.csv + histograms.csv for one annual run.
void emit_report(const AnnualReport& report, const std::filesystem::path& out_dir);

// sweep.csv + sweep_summary.json.
void emit_sweep_report(const SweepResult& result, const std::filesystem::path& out_dir);

// matrix.csv plus one summary JSON per cell (cell_<model>_<voltage>v_<bat|nobat>.json).
void emit_matrix_report(const std::vector<MatrixCell>& cells,
                        const std::filesystem::path& out_dir);

// Non-deterministic envelope: invocation label, ISO-8601 UTC timestamp,
// tool version string.
void emit_run_meta(const std::string& label, const std::string& mode,
                   const std::filesystem::path& out_dir);

// Per-step trace stream for --trace. Header first, then one row per step.
class TraceWriter {
public:
    explicit TraceWriter(std::ostream& out);
    void write_step(std::size_t t, const StepResult& step);

private:
    std::ostream& out_;
};

}  // namespace nanogrid
