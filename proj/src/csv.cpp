#include "nanogrid/csv.hpp"

#include <cassert>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "nanogrid/errors.hpp"

namespace nanogrid {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        std::string field = line.substr(start, comma - start);
        // trim surrounding whitespace
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? std::string{}
                                                : field.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_double(const std::string& field, double& out) {
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !field.empty();
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        std::vector<std::string> fields = split_fields(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!parse_double(fields[i], row[i])) {
                numeric = false;
                break;
            }
        }
        if (numeric) {
            if (!table.rows.empty() && row.size() != table.rows.front().size()) {
                throw Error(errc::malformed_row,
                            "csv line " + std::to_string(line_no) + ": expected " +
                                std::to_string(table.rows.front().size()) +
                                " fields, got " + std::to_string(row.size()));
            }
            table.rows.push_back(std::move(row));
            saw_data = true;
        } else if (!saw_data && table.header.empty()) {
            table.header = std::move(fields);
        } else {
            throw Error(errc::malformed_row, "csv line " + std::to_string(line_no) +
                                                 ": non-numeric field in '" + line + "'");
        }
    }
    return table;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    assert(ec == std::errc{});
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

}  // namespace nanogrid
