#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "nanogrid/profile.hpp"

namespace nanogrid {

inline constexpr double kCopperResistivityOhmM = 1.72e-8;

// One conductor run from the distribution panel to an item. Lengths are
// one-way; resistance uses the round trip (supply and return).
struct WireRun {
    double run_length_m = 0.0;
    double cross_section_mm2 = 1.5;
    double resistivity_ohm_m = kCopperResistivityOhmM;
};

enum class WiringSource { direct_table, computed };

// Per-category equivalent resistance, either taken straight from a
// resistance table or computed from runs via sum(R_i)/N^2.
struct WiringCircuit {
    LoadCategory category = LoadCategory::hvac;
    double r_eq_mohm = 0.0;
    WiringSource source = WiringSource::direct_table;
};

struct AmpacityEntry {
    double cross_section_mm2;
    double max_current_a;
};

class AmpacityTable {
public:
    explicit AmpacityTable(std::vector<AmpacityEntry> entries);

    static AmpacityTable default_table();
    static AmpacityTable from_csv(std::istream& source);

    const std::vector<AmpacityEntry>& entries() const { return entries_; }

private:
    std::vector<AmpacityEntry> entries_;
};

// Smallest listed cross-section whose ampacity covers peak_current_a
// scaled by the safety factor (default 1.5).
double size_conductor(double peak_current_a, double safety_factor,
                      const AmpacityTable& table);

double wire_resistance_ohm(const WireRun& run);

// r_eq = sum(R_i) / N^2 for N parallel items sharing the category current.
double equivalent_resistance_ohm(std::span<const double> item_resistances_ohm);

// I = P*1000/V at nominal bus voltage; loss_kW = r_eq_mohm * I^2 / 1e6.
double wiring_loss_kw(const WiringCircuit& circuit, double category_power_kw,
                      double bus_voltage_v);

// Resistance estimate for a house scaled in floor area: wiring length is
// assumed to grow with the linear dimension, i.e. sqrt of the area ratio.
double scale_resistance_by_area(double r_eq, double area_ratio);

}  // namespace nanogrid
