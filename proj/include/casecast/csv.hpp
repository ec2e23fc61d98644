#ifndef CASECAST_CSV_HPP
#define CASECAST_CSV_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casecast/date.hpp"
#include "casecast/series.hpp"

namespace casecast {

/// One row of the wide confirmed-cases CSV: an optional province, a country,
/// coordinates, and one cumulative count per header date.
struct CaseRow {
    std::optional<std::string> province;
    std::string country;
    double latitude = 0.0;
    double longitude = 0.0;
    std::vector<std::int64_t> counts;
};

/// Parsed wide table. Every row carries exactly one count per header date and
/// the header dates are contiguous, strictly increasing by one day.
struct RawCaseTable {
    std::vector<Date> date_header;
    std::vector<CaseRow> rows;
};

/// Country extraction request over an inclusive date window.
struct CountryQuery {
    std::string country_name;
    Date window_start{};
    Date window_end{};
};

/// Parses the wide "confirmed global" CSV layout: a header of
/// Province/State,Country/Region,Lat,Long followed by M/D/YY date columns,
/// then one row per province/country. Quoted fields may contain commas.
RawCaseTable parse_case_csv(std::istream& input);

/// Convenience wrapper that opens `path` and parses it. Throws
/// Error(io-error) when the file cannot be read.
RawCaseTable parse_case_csv_file(const std::string& path);

/// Re-emits a parsed table in the same wide format. Parsing the output again
/// yields an identical table.
void write_case_csv(const RawCaseTable& table, std::ostream& output);

/// Sums the counts of all rows matching the queried country (exact,
/// case-sensitive) over the inclusive window. Appends a diagnostic to
/// `warnings` when the resulting cumulative series decreases anywhere; the
/// series itself is returned unrepaired. Throws Error(country-not-found)
/// listing near-miss names, or Error(range-error) for a window outside the
/// header range.
TimeSeries extract_country(const RawCaseTable& table, const CountryQuery& query,
                           std::vector<std::string>* warnings = nullptr);

}  // namespace casecast

#endif  // CASECAST_CSV_HPP
