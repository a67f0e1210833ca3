#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nanogrid {

struct CurvePoint {
    double load_fraction;  // in (0, 1], fraction of total nominal power
    double efficiency;     // in (0, 1]
};

// Load-fraction -> efficiency map, piecewise linear between points and
// clamped to the end points outside the covered range.
class EfficiencyCurve {
public:
    // Default curve is ideal (efficiency 1 everywhere); tests and
    // placeholder specs rely on it.
    EfficiencyCurve();
    explicit EfficiencyCurve(std::vector<CurvePoint> points);

    static EfficiencyCurve from_csv(std::istream& source);

    double at(double load_fraction) const;
    const std::vector<CurvePoint>& points() const { return points_; }

private:
    std::vector<CurvePoint> points_;
};

enum class ConverterRole { pv, ac_dc, battery };

// A conversion stage: identical parallel units sharing load equally, so
// the efficiency argument is power over aggregate nominal.
struct ConverterSpec {
    ConverterRole role = ConverterRole::pv;
    double unit_nominal_kw = 1.0;
    int parallel_count = 1;
    EfficiencyCurve curve;

    double total_nominal_kw() const { return unit_nominal_kw * parallel_count; }
};

// ceil(peak/unit), at least one unit.
int parallel_count_for(double peak_power_kw, double unit_nominal_kw);

struct Conversion {
    double input_kw = 0.0;
    double output_kw = 0.0;
    double loss_kw = 0.0;
};

// Efficiency argument is the known-side fraction in both directions; the
// unknown side is derived without a fixed-point solve.
Conversion convert_known_input(const ConverterSpec& spec, double input_kw);
Conversion convert_known_output(const ConverterSpec& spec, double output_kw);

// Operating-region counters over a run: quartiles of total nominal power
// for nonzero steps, idle steps tracked separately.
struct OperatingHistogram {
    std::array<std::uint64_t, 4> bins{};  // (0,25] (25,50] (50,75] (75,100]
    std::uint64_t idle_count = 0;
    std::uint64_t over_nominal_count = 0;  // clamped into the top bin

    void record(double power_kw, double total_nominal_kw);

    std::uint64_t nonzero_total() const;
    // Shares over nonzero steps, percent. All zeros when nothing ran.
    std::array<double, 4> shares_pct() const;
    double idle_share_pct() const;  // idle over all recorded steps
};

}  // namespace nanogrid
