#pragma once

#include <stdexcept>
#include <string>

namespace nanogrid {

// Every failure mode the library reports. The CLI maps these onto exit
// codes: config 2, data 3, engine invariant 4, io 1.
enum class errc {
    // data and validation
    length_mismatch,
    negative_value,
    malformed_row,
    zero_energy,
    current_exceeds_table,
    empty_category,
    over_nominal,
    zero_load_year,
    too_few_points,
    invalid_series,
    // configuration
    missing_field,
    invalid_value,
    file_not_found,
    // engine
    conservation_violation,
    // output
    io_failure,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

    int exit_code() const {
        switch (code_) {
        case errc::missing_field:
        case errc::invalid_value:
        case errc::file_not_found:
            return 2;
        case errc::conservation_violation:
            return 4;
        case errc::io_failure:
            return 1;
        default:
            return 3;
        }
    }

private:
    errc code_;
};

}  // namespace nanogrid
