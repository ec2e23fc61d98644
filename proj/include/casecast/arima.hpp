#ifndef CASECAST_ARIMA_HPP
#define CASECAST_ARIMA_HPP

#include <string>
#include <vector>

#include "casecast/error.hpp"
#include "casecast/series.hpp"

namespace casecast {

/// ARIMA(p,d,q) order: p AR lags, d differencing rounds, q MA lags.
struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
};

/// Fitted ARIMA model over a d-times-differenced training series. Residuals
/// are the conditional one-step errors for t = p .. end with pre-sample
/// errors fixed at zero; the stored tails carry everything needed to iterate
/// the forecast recursion past the training window and integrate the result
/// back to the cumulative scale.
struct ArimaModel {
    ArimaOrder order;
    double intercept = 0.0;
    std::vector<double> ar_coefficients;
    std::vector<double> ma_coefficients;
    std::vector<double> residuals;
    std::vector<double> head_values;     // d leading values consumed by differencing
    std::vector<double> tail_values;     // last max(p,q) differenced observations
    std::vector<double> tail_residuals;  // last max(p,q) residuals
    std::vector<double> level_tails;     // last value of each differencing level 0..d-1
    Date train_start{};
    int train_length = 0;   // observations on the original scale
    double css = 0.0;       // conditional sum of squared residuals at the optimum
    bool root_warning = false;  // AR stationarity / MA invertibility violated
};

/// Thrown when the simplex optimizer exhausts its iteration budget without
/// meeting the diameter tolerance; carries the best model found so far.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, ArimaModel best, double objective)
        : Error(errc::convergence_error, message),
          best_model(std::move(best)),
          final_objective(objective) {}

    ArimaModel best_model;
    double final_objective;
};

/// Conditional sum of squared one-step residuals of an ARMA(p,q) recursion
/// with intercept over `values`, summed for t = p .. end, pre-sample errors
/// zero. When `residuals_out` is non-null it receives the per-step errors.
double conditional_ssr(const std::vector<double>& values, double intercept,
                       const std::vector<double>& ar, const std::vector<double>& ma,
                       std::vector<double>* residuals_out = nullptr);

/// Pure autoregression fitted by ordinary least squares: each differenced
/// value regressed on its p predecessors plus an intercept. Throws
/// Error(insufficient-data) when fewer than p + 2 values are available and
/// Error(degenerate-input) on a collinear design.
ArimaModel fit_ar(const DifferencedSeries& series, int p);

/// Fits ARIMA(p,d,q) by conditional-sum-of-squares: the series is differenced
/// d times, AR coefficients start from the OLS autoregression, MA
/// coefficients start at zero, and all parameters are refined with
/// Nelder-Mead. Throws ConvergenceError if the optimizer fails to converge
/// within its budget.
ArimaModel fit_arima(const TimeSeries& series, const ArimaOrder& order);

/// Iterates the fitted recursion h steps past the training window with
/// future errors set to zero, then integrates back to the cumulative scale.
/// The output starts the day after the training series ends.
TimeSeries forecast(const ArimaModel& model, int horizon);

/// Serialized descriptor such as "ARIMA(2,2,2)".
std::string describe(const ArimaOrder& order);

}  // namespace casecast

#endif  // CASECAST_ARIMA_HPP
