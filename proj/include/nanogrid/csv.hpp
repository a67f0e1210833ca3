#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nanogrid {

// Minimal CSV support for the profile and table formats used here: comma
// separated numeric fields, optional single header line, '#' comments and
// blank lines skipped. No quoting, the data never needs it.

struct CsvTable {
    std::vector<std::string> header;  // empty when the file had none
    std::vector<std::vector<double>> rows;
};

// Reads the whole stream. A first non-comment line that fails numeric
// parsing wholesale is treated as the header; any later parse failure is an
// error carrying the 1-based line number.
CsvTable read_csv(std::istream& in);

// Shortest round-trip decimal form (std::to_chars), so emitted files are
// byte-stable across runs.
std::string format_double(double value);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace nanogrid
