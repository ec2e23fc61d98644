#include "casecast/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "casecast/error.hpp"

namespace casecast {

namespace {

constexpr const char* kFixedColumns[4] = {"Province/State", "Country/Region", "Lat", "Long"};

/// Splits one CSV record into fields, honoring double-quoted fields with
/// embedded commas and doubled quotes. Embedded newlines are not supported;
/// the source format never produces them.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

double parse_double_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw Error(errc::parse_error, "non-numeric cell '" + cell + "' at row " +
                                           std::to_string(row) + ", column " + std::to_string(col));
    }
    return value;
}

std::int64_t parse_count_cell(const std::string& cell, std::size_t row, std::size_t col) {
    std::int64_t value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw Error(errc::parse_error, "non-numeric count '" + cell + "' at row " +
                                           std::to_string(row) + ", column " + std::to_string(col));
    }
    if (value < 0) {
        throw Error(errc::parse_error, "negative count at row " + std::to_string(row) +
                                           ", column " + std::to_string(col));
    }
    return value;
}

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') {
            out << "\"\"";
        } else {
            out << c;
        }
    }
    out << '"';
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

RawCaseTable parse_case_csv(std::istream& input) {
    std::string line;
    if (!std::getline(input, line)) {
        throw Error(errc::parse_error, "empty input: missing header line");
    }
    const auto header = split_csv_line(strip_cr(line));
    if (header.size() < 5) {
        throw Error(errc::parse_error, "header has " + std::to_string(header.size()) +
                                           " columns; expected the four fixed columns plus at "
                                           "least one date column");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (header[i] != kFixedColumns[i]) {
            throw Error(errc::parse_error, "header column " + std::to_string(i + 1) + " is '" +
                                               header[i] + "', expected '" + kFixedColumns[i] + "'");
        }
    }

    RawCaseTable table;
    table.date_header.reserve(header.size() - 4);
    for (std::size_t i = 4; i < header.size(); ++i) {
        table.date_header.push_back(parse_mdy(header[i]));
    }
    for (std::size_t i = 1; i < table.date_header.size(); ++i) {
        if (table.date_header[i] != table.date_header[i - 1] + std::chrono::days(1)) {
            throw Error(errc::structural_error,
                        "date columns are not contiguous at '" + format_mdy(table.date_header[i]) +
                            "'");
        }
    }

    std::size_t row_number = 1;  // header was line 1
    while (std::getline(input, line)) {
        ++row_number;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw Error(errc::structural_error,
                        "row " + std::to_string(row_number) + " has " +
                            std::to_string(fields.size()) + " fields; header has " +
                            std::to_string(header.size()));
        }
        CaseRow row;
        if (!fields[0].empty()) {
            row.province = fields[0];
        }
        row.country = fields[1];
        row.latitude = parse_double_cell(fields[2], row_number, 3);
        row.longitude = parse_double_cell(fields[3], row_number, 4);
        row.counts.reserve(table.date_header.size());
        for (std::size_t i = 4; i < fields.size(); ++i) {
            row.counts.push_back(parse_count_cell(fields[i], row_number, i + 1));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

RawCaseTable parse_case_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(errc::io_error, "cannot open '" + path + "'");
    }
    return parse_case_csv(in);
}

void write_case_csv(const RawCaseTable& table, std::ostream& output) {
    output << kFixedColumns[0] << ',' << kFixedColumns[1] << ',' << kFixedColumns[2] << ','
           << kFixedColumns[3];
    for (Date d : table.date_header) {
        output << ',' << format_mdy(d);
    }
    output << '\n';
    for (const auto& row : table.rows) {
        write_field(output, row.province.value_or(""));
        output << ',';
        write_field(output, row.country);
        output << ',' << format_double(row.latitude) << ',' << format_double(row.longitude);
        for (std::int64_t count : row.counts) {
            output << ',' << count;
        }
        output << '\n';
    }
}

TimeSeries extract_country(const RawCaseTable& table, const CountryQuery& query,
                           std::vector<std::string>* warnings) {
    if (query.window_start > query.window_end) {
        throw Error(errc::invalid_argument, "window start is after window end");
    }
    std::vector<const CaseRow*> matches;
    for (const auto& row : table.rows) {
        if (row.country == query.country_name) {
            matches.push_back(&row);
        }
    }
    if (matches.empty()) {
        // Offer near misses: case-insensitive hits, small edit distances, or
        // substring containment.
        std::set<std::string> suggestions;
        const std::string wanted = lowercase(query.country_name);
        for (const auto& row : table.rows) {
            const std::string candidate = lowercase(row.country);
            if (candidate == wanted || candidate.find(wanted) != std::string::npos ||
                wanted.find(candidate) != std::string::npos ||
                edit_distance(candidate, wanted) <= 2) {
                suggestions.insert(row.country);
            }
        }
        std::string message = "country '" + query.country_name + "' not found";
        if (!suggestions.empty()) {
            message += "; did you mean:";
            std::size_t listed = 0;
            for (const auto& name : suggestions) {
                message += " '" + name + "'";
                if (++listed == 5) {
                    break;
                }
            }
        }
        throw Error(errc::country_not_found, message);
    }

    if (table.date_header.empty() || query.window_start < table.date_header.front() ||
        query.window_end > table.date_header.back()) {
        throw Error(errc::range_error,
                    "window " + format_iso(query.window_start) + ".." + format_iso(query.window_end) +
                        " lies outside the table's date range");
    }
    const auto offset = static_cast<std::size_t>(
        (query.window_start - table.date_header.front()).count());
    const auto length =
        static_cast<std::size_t>((query.window_end - query.window_start).count()) + 1;

    TimeSeries series;
    series.start_date = query.window_start;
    series.values.assign(length, 0.0);
    for (const CaseRow* row : matches) {
        for (std::size_t i = 0; i < length; ++i) {
            series.values[i] += static_cast<double>(row->counts[offset + i]);
        }
    }
    if (warnings != nullptr) {
        for (std::size_t i = 1; i < series.values.size(); ++i) {
            if (series.values[i] < series.values[i - 1]) {
                warnings->push_back("cumulative series for '" + query.country_name +
                                    "' decreases at " + format_iso(series.date_at(i)) +
                                    " (data correction left unrepaired)");
                break;
            }
        }
    }
    return series;
}

}  // namespace casecast
