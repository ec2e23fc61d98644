#ifndef CASECAST_DATE_HPP
#define CASECAST_DATE_HPP

#include <chrono>
#include <string>

namespace casecast {

/// Calendar date at daily resolution.
using Date = std::chrono::sys_days;

/// Parses the M/D/YY form used by the wide CSV headers (e.g. "1/22/20").
/// Two-digit years map to 2000-2099. Throws Error(parse-error) on malformed
/// input.
Date parse_mdy(const std::string& text);

/// Parses ISO-8601 YYYY-MM-DD. Throws Error(parse-error) on malformed input.
Date parse_iso(const std::string& text);

/// Formats as M/D/YY without zero padding (header form).
std::string format_mdy(Date date);

/// Formats as ISO-8601 YYYY-MM-DD (output form).
std::string format_iso(Date date);

}  // namespace casecast

#endif  // CASECAST_DATE_HPP
