#ifndef CASECAST_ERROR_HPP
#define CASECAST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace casecast {

/// Error codes surfaced verbatim by the CLI as machine-readable identifiers.
namespace errc {
inline constexpr const char* parse_error = "parse-error";
inline constexpr const char* structural_error = "structural-error";
inline constexpr const char* country_not_found = "country-not-found";
inline constexpr const char* range_error = "range-error";
inline constexpr const char* insufficient_data = "insufficient-data";
inline constexpr const char* degenerate_input = "degenerate-input";
inline constexpr const char* convergence_error = "convergence-error";
inline constexpr const char* alignment_error = "alignment-error";
inline constexpr const char* undefined_metric = "undefined-metric";
inline constexpr const char* evaluation_error = "evaluation-error";
inline constexpr const char* invalid_argument = "invalid-argument";
inline constexpr const char* io_error = "io-error";
inline constexpr const char* non_stationary = "non-stationary-at-max";
}  // namespace errc

/// Library exception carrying a stable machine-readable code alongside the
/// human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace casecast

#endif  // CASECAST_ERROR_HPP
