#include "nanogrid/wiring.hpp"

#include <cmath>
#include <istream>
#include <string>
#include <utility>

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {

AmpacityTable::AmpacityTable(std::vector<AmpacityEntry> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw Error(errc::invalid_value, "ampacity table must not be empty");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].cross_section_mm2 > 0.0) || !(entries_[i].max_current_a > 0.0)) {
            throw Error(errc::invalid_value,
                        "ampacity entry " + std::to_string(i) + " must be positive");
        }
        if (i > 0 && (entries_[i].cross_section_mm2 <= entries_[i - 1].cross_section_mm2 ||
                      entries_[i].max_current_a <= entries_[i - 1].max_current_a)) {
            throw Error(errc::invalid_value,
                        "ampacity table must increase strictly in both columns");
        }
    }
}

AmpacityTable AmpacityTable::default_table() {
    return AmpacityTable({{1.5, 16.0}, {2.5, 25.0}, {4.0, 32.0}, {6.0, 40.0},
                          {10.0, 55.0}});
}

AmpacityTable AmpacityTable::from_csv(std::istream& in) {
    CsvTable table = read_csv(in);
    std::vector<AmpacityEntry> entries;
    entries.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != 2) {
            throw Error(errc::malformed_row,
                        "ampacity row " + std::to_string(i) +
                            ": expected cross_section_mm2,max_current_A");
        }
        entries.push_back({table.rows[i][0], table.rows[i][1]});
    }
    return AmpacityTable(std::move(entries));
}

double size_conductor(double peak_current_a, double safety_factor,
                      const AmpacityTable& table) {
    if (peak_current_a < 0.0) {
        throw Error(errc::negative_value, "peak current must be >= 0");
    }
    if (safety_factor < 1.0) {
        throw Error(errc::invalid_value, "safety factor must be >= 1");
    }
    double required_a = peak_current_a * safety_factor;
    for (const AmpacityEntry& entry : table.entries()) {
        if (entry.max_current_a >= required_a) return entry.cross_section_mm2;
    }
    throw Error(errc::current_exceeds_table,
                "required ampacity " + format_double(required_a) +
                    " A exceeds the largest table entry (" +
                    format_double(table.entries().back().max_current_a) + " A)");
}

double wire_resistance_ohm(const WireRun& run) {
    if (run.run_length_m < 0.0) {
        throw Error(errc::negative_value, "run length must be >= 0");
    }
    if (!(run.cross_section_mm2 > 0.0) || !(run.resistivity_ohm_m > 0.0)) {
        throw Error(errc::invalid_value,
                    "cross section and resistivity must be positive");
    }
    // Supply and return conductors both carry the branch current, hence 2L.
    double area_m2 = run.cross_section_mm2 * 1e-6;
    return run.resistivity_ohm_m * (2.0 * run.run_length_m) / area_m2;
}

double equivalent_resistance_ohm(std::span<const double> item_resistances_ohm) {
    if (item_resistances_ohm.empty()) {
        throw Error(errc::empty_category,
                    "equivalent resistance needs at least one item");
    }
    double sum = 0.0;
    for (double r : item_resistances_ohm) {
        if (r < 0.0) {
            throw Error(errc::negative_value, "item resistance must be >= 0");
        }
        sum += r;
    }
    double n = static_cast<double>(item_resistances_ohm.size());
    return sum / (n * n);
}

double wiring_loss_kw(const WiringCircuit& circuit, double category_power_kw,
                      double bus_voltage_v) {
    if (category_power_kw < 0.0) {
        throw Error(errc::negative_value, "category power must be >= 0");
    }
    if (!(bus_voltage_v > 0.0)) {
        throw Error(errc::invalid_value, "bus voltage must be positive");
    }
    // Current at nominal bus voltage; loss in kW from a milliohm r_eq:
    // mOhm * A^2 = mW, so divide by 1e6.
    double current_a = category_power_kw * 1000.0 / bus_voltage_v;
    return circuit.r_eq_mohm * current_a * current_a / 1e6;
}

double scale_resistance_by_area(double r_eq, double area_ratio) {
    if (!(area_ratio > 0.0)) {
        throw Error(errc::invalid_value, "area ratio must be positive");
    }
    // Wiring length is taken to grow with the house's linear dimension,
    // i.e. with the square root of floor area.
    return r_eq * std::sqrt(area_ratio);
}

}  // namespace nanogrid
