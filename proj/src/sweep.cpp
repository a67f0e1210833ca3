#include "nanogrid/sweep.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

std::vector<double> sweep_capacities(const SweepRequest& request) {
    if (!(request.start_kwh > 0.0) || !(request.step_kwh > 0.0) ||
        request.stop_kwh < request.start_kwh) {
        throw Error(errc::invalid_value, "sweep range must satisfy 0 < start <= stop, step > 0");
    }
    std::vector<double> capacities;
    // Integer stepping keeps the grid exact; a relative epsilon keeps the
    // endpoint in when stop is a whole number of steps away.
    for (int i = 0;; ++i) {
        double c = request.start_kwh + static_cast<double>(i) * request.step_kwh;
        if (c > request.stop_kwh * (1.0 + 1e-12)) break;
        capacities.push_back(c);
    }
    return capacities;
}

}  // namespace

std::vector<SweepPoint> run_capacity_sweep(
    const Scenario& base, const SweepRequest& request,
    const std::function<void(const SweepPoint&)>& on_point) {
    std::vector<double> capacities = sweep_capacities(request);
    std::vector<SweepPoint> points;
    points.reserve(capacities.size());
    for (double capacity : capacities) {
        Scenario scenario = base;
        scenario.battery.capacity_kwh = capacity;
        // The converter grows with the pack: its rating tracks the C-rate
        // power cap at every sweep point.
        ConverterSpec conv = scenario.battery_converter.value_or(ConverterSpec{});
        conv.role = ConverterRole::battery;
        conv.unit_nominal_kw = max_transfer_power_kw(scenario.battery);
        conv.parallel_count = 1;
        scenario.battery_converter = conv;

        AnnualReport report = simulate_year(scenario);
        SweepPoint point{capacity, report.efficiency_pct, report.bdt_hours};
        points.push_back(point);
        if (on_point) on_point(point);
    }
    return points;
}

std::size_t knee_index(const std::vector<SweepPoint>& points,
                       double threshold_h_per_kwh, bool& found) {
    if (points.size() < 2) {
        throw Error(errc::too_few_points, "knee selection needs at least two sweep points");
    }
    found = false;
    // Interval slopes between consecutive capacities; the knee is the first
    // point after which every slope magnitude stays under the threshold.
    std::vector<double> slopes(points.size() - 1);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        double dc = points[i + 1].capacity_kwh - points[i].capacity_kwh;
        if (!(dc > 0.0)) {
            throw Error(errc::invalid_value, "sweep points must increase in capacity");
        }
        slopes[i] = std::abs(points[i + 1].bdt_hours - points[i].bdt_hours) / dc;
    }
    std::size_t knee = points.size() - 1;
    for (std::size_t i = slopes.size(); i-- > 0;) {
        if (slopes[i] < threshold_h_per_kwh) {
            knee = i;
            found = true;
        } else {
            break;
        }
    }
    return knee;
}

double snap_to_module(double capacity_kwh, double module_kwh) {
    if (!(module_kwh > 0.0)) {
        throw Error(errc::invalid_value, "module size must be positive");
    }
    double modules = std::floor(capacity_kwh / module_kwh * (1.0 + 1e-12));
    if (modules < 1.0) modules = 1.0;
    return modules * module_kwh;
}

SweepResult analyze_sweep(std::vector<SweepPoint> points,
                          double threshold_h_per_kwh, double module_kwh) {
    SweepResult result;
    result.module_kwh = module_kwh;
    bool found = false;
    std::size_t idx = knee_index(points, threshold_h_per_kwh, found);
    result.knee_capacity_kwh = points[idx].capacity_kwh;
    result.knee_found = found;
    result.snapped_capacity_kwh = snap_to_module(result.knee_capacity_kwh, module_kwh);
    result.points = std::move(points);
    return result;
}

std::vector<MatrixCell> run_scenario_matrix(
    const std::vector<std::string>& load_models,
    const std::vector<double>& voltages, const std::vector<bool>& battery_options,
    const ScenarioFactory& factory,
    const std::function<void(const MatrixCell&)>& on_cell) {
    if (load_models.empty() || voltages.empty() || battery_options.empty()) {
        throw Error(errc::invalid_value, "matrix axes must be nonempty");
    }
    std::vector<MatrixCell> cells;
    cells.reserve(load_models.size() * voltages.size() * battery_options.size());
    for (const std::string& model : load_models) {
        for (double voltage : voltages) {
            for (bool with_battery : battery_options) {
                try {
                    Scenario scenario = factory(model, voltage, with_battery);
                    MatrixCell cell{model, voltage, with_battery,
                                    simulate_year(scenario)};
                    if (on_cell) on_cell(cell);
                    cells.push_back(std::move(cell));
                } catch (const Error& e) {
                    throw Error(e.code(), "matrix cell (" + model + ", " +
                                              format_double(voltage) + " V, " +
                                              (with_battery ? "battery" : "no battery") +
                                              "): " + e.what());
                }
            }
        }
    }
    return cells;
}

}  // namespace nanogrid
