#include "nanogrid/profile.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "nanogrid/csv.hpp"
#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

// Profile rows carry their own hour index; a silent gap or shuffle in the
// source data would corrupt a whole year, so the index is checked.
void check_hour_index(double index_field, std::size_t expected, std::size_t line) {
    if (index_field != static_cast<double>(expected)) {
        throw Error(errc::malformed_row,
                    "profile row " + std::to_string(line) + ": hour_index " +
                        format_double(index_field) + ", expected " +
                        std::to_string(expected));
    }
    (void)line;
}

}  // namespace

LoadProfile::LoadProfile(TimeSeries hvac, TimeSeries lighting,
                         TimeSeries interior_equipment, TimeSeries water_heater)
    : series_{std::move(hvac), std::move(lighting), std::move(interior_equipment),
              std::move(water_heater)} {
    for (std::size_t i = 1; i < series_.size(); ++i) {
        if (series_[i].size() != series_[0].size()) {
            throw Error(errc::length_mismatch,
                        std::string(kLoadCategoryNames[i]) + " series has " +
                            std::to_string(series_[i].size()) + " samples, " +
                            std::string(kLoadCategoryNames[0]) + " has " +
                            std::to_string(series_[0].size()));
        }
        if (series_[i].dt_hours() != series_[0].dt_hours()) {
            throw Error(errc::length_mismatch,
                        "load series disagree on timestep duration");
        }
    }
}

TimeSeries LoadProfile::total() const {
    std::vector<double> sum(size(), 0.0);
    for (const TimeSeries& s : series_) {
        for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += s[t];
    }
    return TimeSeries(std::move(sum), dt_hours());
}

TimeSeries parse_profile_csv(std::istream& in, std::size_t expected_len,
                             double dt_hours) {
    CsvTable table = read_csv(in);
    if (table.rows.size() != expected_len) {
        throw Error(errc::length_mismatch,
                    "profile has " + std::to_string(table.rows.size()) +
                        " rows, expected " + std::to_string(expected_len));
    }
    std::vector<double> samples(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::vector<double>& row = table.rows[i];
        if (row.size() != 2) {
            throw Error(errc::malformed_row,
                        "profile row " + std::to_string(i) + ": expected "
                        "hour_index,value_kW, got " + std::to_string(row.size()) +
                        " fields");
        }
        check_hour_index(row[0], i, i);
        samples[i] = row[1];
    }
    return TimeSeries(std::move(samples), dt_hours);
}

LoadProfile parse_load_profile_csv(std::istream& in, std::size_t expected_len,
                                   double dt_hours) {
    CsvTable table = read_csv(in);
    if (table.rows.size() != expected_len) {
        throw Error(errc::length_mismatch,
                    "load profile has " + std::to_string(table.rows.size()) +
                        " rows, expected " + std::to_string(expected_len));
    }
    std::array<std::vector<double>, kNumLoadCategories> cols;
    for (auto& c : cols) c.resize(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::vector<double>& row = table.rows[i];
        if (row.size() != 1 + kNumLoadCategories) {
            throw Error(errc::malformed_row,
                        "load profile row " + std::to_string(i) +
                            ": expected hour_index plus four category columns");
        }
        check_hour_index(row[0], i, i);
        for (std::size_t c = 0; c < kNumLoadCategories; ++c) cols[c][i] = row[1 + c];
    }
    return LoadProfile(TimeSeries(std::move(cols[0]), dt_hours),
                       TimeSeries(std::move(cols[1]), dt_hours),
                       TimeSeries(std::move(cols[2]), dt_hours),
                       TimeSeries(std::move(cols[3]), dt_hours));
}

void write_profile_csv(std::ostream& out, const TimeSeries& series) {
    out << "hour_index,value_kW\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << i << ',' << format_double(series[i]) << '\n';
    }
}

ScalingFactor pv_scaling_factor(const TimeSeries& pv, const TimeSeries& load_total) {
    if (pv.size() != load_total.size()) {
        throw Error(errc::length_mismatch,
                    "pv series (" + std::to_string(pv.size()) + ") and load series (" +
                        std::to_string(load_total.size()) + ") differ in length");
    }
    double pv_sum = pv.sum();
    double load_sum = load_total.sum();
    if (pv_sum <= 0.0 || load_sum <= 0.0) {
        throw Error(errc::zero_energy,
                    "pv scaling needs positive annual energy on both sides (pv " +
                        format_double(pv_sum) + ", load " + format_double(load_sum) +
                        ")");
    }
    return ScalingFactor{pv_sum / load_sum};
}

TimeSeries apply_pv_scaling(const TimeSeries& pv, ScalingFactor k) {
    if (!(k.k > 0.0) || !std::isfinite(k.k)) {
        throw Error(errc::invalid_value, "scaling factor must be positive");
    }
    std::vector<double> scaled(pv.size());
    for (std::size_t i = 0; i < pv.size(); ++i) scaled[i] = pv[i] / k.k;
    return TimeSeries(std::move(scaled), pv.dt_hours());
}

}  // namespace nanogrid
