#pragma once

#include <cstddef>
#include <vector>

namespace nanogrid {

inline constexpr std::size_t kHoursPerYear = 8760;

// Fixed-length vector of hourly power samples in kW. Samples must be
// finite and nonnegative; the timestep travels with the series so short
// test scenarios work alongside full 8760-hour years.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> samples_kw, double dt_hours = 1.0);

    std::size_t size() const { return samples_.size(); }
    double dt_hours() const { return dt_hours_; }
    double operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<double>& samples() const { return samples_; }

    double sum() const;         // plain sum of samples (kW)
    double energy_kwh() const;  // sum * dt
    double max() const;

private:
    std::vector<double> samples_;
    double dt_hours_;
};

}  // namespace nanogrid
