#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string_view>

#include "nanogrid/time_series.hpp"

namespace nanogrid {

// The four residential load categories. The order is fixed: it is the
// column order of four-column profile files and of every report table.
enum class LoadCategory { hvac = 0, lighting, interior_equipment, water_heater };

inline constexpr std::size_t kNumLoadCategories = 4;

inline constexpr std::array<std::string_view, kNumLoadCategories> kLoadCategoryNames = {
    "hvac", "lighting", "interior_equipment", "water_heater"};

// One year's (or test window's) demand, split by category. All four
// series share length and timestep.
class LoadProfile {
public:
    LoadProfile(TimeSeries hvac, TimeSeries lighting, TimeSeries interior_equipment,
                TimeSeries water_heater);

    const TimeSeries& operator[](LoadCategory c) const {
        return series_[static_cast<std::size_t>(c)];
    }
    std::size_t size() const { return series_[0].size(); }
    double dt_hours() const { return series_[0].dt_hours(); }

    TimeSeries total() const;  // elementwise sum of the four categories

private:
    std::array<TimeSeries, kNumLoadCategories> series_;
};

// Zero-net-energy scaling factor: annual PV generation divided by annual
// consumption. Scaled PV = raw PV / k.
struct ScalingFactor {
    double k = 1.0;
};

// Parses a two-column hourly CSV (header line, then hour_index,value_kW).
// hour_index must run 0..expected_len-1 ascending. LF and CRLF accepted.
TimeSeries parse_profile_csv(std::istream& source, std::size_t expected_len,
                             double dt_hours = 1.0);

// Five-column variant: hour_index then one column per load category in
// kLoadCategoryNames order.
LoadProfile parse_load_profile_csv(std::istream& source, std::size_t expected_len,
                                   double dt_hours = 1.0);

// Writes the two-column format back out, round-trip exact.
void write_profile_csv(std::ostream& out, const TimeSeries& series);

ScalingFactor pv_scaling_factor(const TimeSeries& pv, const TimeSeries& load_total);
TimeSeries apply_pv_scaling(const TimeSeries& pv, ScalingFactor k);

}  // namespace nanogrid
