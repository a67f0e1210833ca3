#include "nanogrid/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nanogrid/errors.hpp"

namespace nanogrid {

TimeSeries::TimeSeries(std::vector<double> samples_kw, double dt_hours)
    : samples_(std::move(samples_kw)), dt_hours_(dt_hours) {
    if (samples_.empty()) {
        throw Error(errc::invalid_series, "time series must have at least one sample");
    }
    if (!(dt_hours_ > 0.0) || !std::isfinite(dt_hours_)) {
        throw Error(errc::invalid_series,
                    "time step must be a positive finite number of hours");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i])) {
            throw Error(errc::invalid_series,
                        "sample " + std::to_string(i) + " is not finite");
        }
        if (samples_[i] < 0.0) {
            throw Error(errc::negative_value, "sample " + std::to_string(i) +
                                                  " is negative (" +
                                                  std::to_string(samples_[i]) + " kW)");
        }
    }
}

double TimeSeries::sum() const {
    return std::accumulate(samples_.begin(), samples_.end(), 0.0);
}

double TimeSeries::energy_kwh() const { return sum() * dt_hours_; }

double TimeSeries::max() const {
    return *std::max_element(samples_.begin(), samples_.end());
}

}  // namespace nanogrid
