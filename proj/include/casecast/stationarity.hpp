#ifndef CASECAST_STATIONARITY_HPP
#define CASECAST_STATIONARITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "casecast/error.hpp"
#include "casecast/series.hpp"

namespace casecast {

/// Outcome of the augmented Dickey-Fuller unit-root test at the 5% level.
struct AdfResult {
    double statistic = 0.0;        // t-ratio of the lagged-level coefficient
    int lag_order = 0;             // number of lagged-difference terms used
    bool reject_unit_root = false;  // statistic < critical_value_5pct
    double critical_value_5pct = 0.0;
    int sample_size = 0;  // rows in the final regression
    std::optional<std::string> diagnostic;
};

/// Ordinary-least-squares fit of the ADF design at a fixed lag:
///   dy_t = c + rho * y_{t-1} + sum_{i=1..lag} phi_i * dy_{t-i} + e_t
/// Column order of the design is [const, y_{t-1}, dy_{t-1}, ..., dy_{t-lag}];
/// coefficients and standard errors follow that order. `trim_lag` (>= lag)
/// fixes the first usable row as if `trim_lag` lags were present, so fits
/// with different lag counts can share an identical sample.
struct AdfRegression {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> residuals;
    double ssr = 0.0;
    int rows = 0;
    int cols = 0;
    bool singular = false;
    // ssr is negligible relative to the target's magnitude: the regression
    // reproduces the data to rounding error and the t-ratio is meaningless.
    bool exact_fit = false;
};

AdfRegression adf_regression(const std::vector<double>& values, int lag, int trim_lag);

/// Akaike information criterion of an OLS fit, using the Gaussian
/// log-likelihood: n * (ln(2*pi) + ln(ssr/n) + 1) + 2 * k.
double ols_aic(const AdfRegression& fit);

/// Interpolated 5% critical value of the constant-only Dickey-Fuller
/// distribution for a regression with `sample_size` rows.
double adf_critical_value_5pct(int sample_size);

/// Runs the ADF test with intercept and no deterministic trend. When
/// `max_lag` is negative the Schwert bound floor(12 * (n/100)^(1/4)) is used.
/// The lag order is chosen by minimizing the AIC over 0..max_lag on a common
/// sample, then the statistic comes from a refit at the chosen lag on the
/// full usable sample. A singular design is reported as non-rejection with a
/// diagnostic rather than an error. Throws Error(insufficient-data) when the
/// series is too short for the requested lag depth.
AdfResult adf_test(const TimeSeries& series, int max_lag = -1);

/// Thrown by determine_d when no differencing order up to the maximum
/// achieves stationarity; carries the last test outcome.
class NonStationaryError : public Error {
public:
    NonStationaryError(const std::string& message, AdfResult last)
        : Error(errc::non_stationary, message), last_result(std::move(last)) {}

    AdfResult last_result;
};

/// Smallest d <= max_d whose d-times-differenced series rejects the unit
/// root at the 5% level.
int determine_d(const TimeSeries& series, int max_d = 2);

}  // namespace casecast

#endif  // CASECAST_STATIONARITY_HPP
