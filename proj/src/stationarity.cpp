#include "casecast/stationarity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

namespace casecast {

namespace {

// Constant-only Dickey-Fuller 5% critical values (Fuller's tau_mu table),
// indexed by regression sample size. Values beyond the last row approach the
// asymptotic -2.86 proportionally to 1/n.
struct CriticalRow {
    int n;
    double value;
};
constexpr CriticalRow kTau5pct[] = {
    {25, -3.00}, {50, -2.93}, {100, -2.89}, {250, -2.88}, {500, -2.87},
};
constexpr double kTau5pctAsymptotic = -2.86;

/// OLS via column-pivoted QR; fills coefficients, standard errors, residuals.
AdfRegression solve_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
    AdfRegression fit;
    fit.rows = static_cast<int>(design.rows());
    fit.cols = static_cast<int>(design.cols());

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < design.cols() || fit.rows <= fit.cols) {
        fit.singular = true;
        return fit;
    }
    const Eigen::VectorXd beta = qr.solve(target);
    const Eigen::VectorXd resid = target - design * beta;
    fit.ssr = resid.squaredNorm();
    fit.exact_fit = fit.ssr <= 1e-16 * target.squaredNorm();

    const double sigma2 = fit.ssr / static_cast<double>(fit.rows - fit.cols);
    const Eigen::MatrixXd xtx = design.transpose() * design;
    const Eigen::MatrixXd cov = sigma2 * xtx.ldlt().solve(
                                             Eigen::MatrixXd::Identity(fit.cols, fit.cols));

    fit.coefficients.assign(beta.data(), beta.data() + beta.size());
    fit.standard_errors.resize(static_cast<std::size_t>(fit.cols));
    for (int j = 0; j < fit.cols; ++j) {
        const double var = cov(j, j);
        fit.standard_errors[static_cast<std::size_t>(j)] = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    fit.residuals.assign(resid.data(), resid.data() + resid.size());
    return fit;
}

}  // namespace

AdfRegression adf_regression(const std::vector<double>& values, int lag, int trim_lag) {
    const int n = static_cast<int>(values.size());
    if (trim_lag < lag) {
        throw Error(errc::invalid_argument, "trim_lag must be at least lag");
    }
    const int rows = n - 1 - trim_lag;
    const int cols = 2 + lag;
    if (rows <= cols) {
        throw Error(errc::insufficient_data,
                    "ADF regression needs more than " + std::to_string(cols + trim_lag + 1) +
                        " observations, got " + std::to_string(n));
    }

    std::vector<double> dy(static_cast<std::size_t>(n - 1));
    for (int t = 0; t < n - 1; ++t) {
        dy[static_cast<std::size_t>(t)] = values[static_cast<std::size_t>(t + 1)] -
                                          values[static_cast<std::size_t>(t)];
    }

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = trim_lag + r;  // index into dy; dy[t] = y_{t+1} - y_t
        target(r) = dy[static_cast<std::size_t>(t)];
        design(r, 0) = 1.0;
        design(r, 1) = values[static_cast<std::size_t>(t)];
        for (int i = 1; i <= lag; ++i) {
            design(r, 1 + i) = dy[static_cast<std::size_t>(t - i)];
        }
    }
    return solve_ols(design, target);
}

double ols_aic(const AdfRegression& fit) {
    const double n = static_cast<double>(fit.rows);
    return n * (std::log(2.0 * std::numbers::pi) + std::log(fit.ssr / n) + 1.0) +
           2.0 * static_cast<double>(fit.cols);
}

double adf_critical_value_5pct(int sample_size) {
    constexpr int rows = static_cast<int>(std::size(kTau5pct));
    if (sample_size <= kTau5pct[0].n) {
        return kTau5pct[0].value;
    }
    for (int i = 1; i < rows; ++i) {
        if (sample_size <= kTau5pct[i].n) {
            const auto& lo = kTau5pct[i - 1];
            const auto& hi = kTau5pct[i];
            const double w = static_cast<double>(sample_size - lo.n) /
                             static_cast<double>(hi.n - lo.n);
            return lo.value + w * (hi.value - lo.value);
        }
    }
    const auto& last = kTau5pct[rows - 1];
    return kTau5pctAsymptotic +
           (last.value - kTau5pctAsymptotic) * static_cast<double>(last.n) /
               static_cast<double>(sample_size);
}

AdfResult adf_test(const TimeSeries& series, int max_lag) {
    const int n = static_cast<int>(series.size());
    if (max_lag < 0) {
        max_lag = static_cast<int>(
            std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
        max_lag = std::min(max_lag, n / 2 - 2);
        if (max_lag < 0) {
            throw Error(errc::insufficient_data,
                        "series of length " + std::to_string(n) + " is too short for the ADF test");
        }
    }
    if (n <= max_lag + 2) {
        throw Error(errc::insufficient_data,
                    "ADF test with max_lag " + std::to_string(max_lag) + " needs more than " +
                        std::to_string(max_lag + 2) + " observations, got " + std::to_string(n));
    }

    const auto degenerate = [&](int lag, const std::string& why) {
        AdfResult res;
        res.statistic = 0.0;
        res.lag_order = lag;
        res.sample_size = n - 1 - lag;
        res.critical_value_5pct = adf_critical_value_5pct(res.sample_size);
        res.reject_unit_root = false;
        res.diagnostic = why;
        return res;
    };

    // Candidate lags are compared on the common sample implied by max_lag;
    // ties resolve toward the smaller lag.
    int best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int lag = 0; lag <= max_lag; ++lag) {
        const AdfRegression fit = adf_regression(series.values, lag, max_lag);
        if (fit.singular) {
            continue;
        }
        if (fit.exact_fit) {
            return degenerate(lag, "regression fits exactly; unit-root statistic undefined");
        }
        const double aic = ols_aic(fit);
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
        }
    }
    if (!std::isfinite(best_aic)) {
        return degenerate(0, "singular regression design (constant or collinear series)");
    }

    const AdfRegression fit = adf_regression(series.values, best_lag, best_lag);
    if (fit.singular) {
        return degenerate(best_lag, "singular regression design at the selected lag");
    }
    if (fit.exact_fit || fit.standard_errors[1] <= 0.0) {
        return degenerate(best_lag, "zero-variance regression; unit-root statistic undefined");
    }

    AdfResult res;
    res.lag_order = best_lag;
    res.sample_size = fit.rows;
    res.statistic = fit.coefficients[1] / fit.standard_errors[1];
    res.critical_value_5pct = adf_critical_value_5pct(fit.rows);
    res.reject_unit_root = res.statistic < res.critical_value_5pct;
    return res;
}

int determine_d(const TimeSeries& series, int max_d) {
    if (max_d < 0) {
        throw Error(errc::invalid_argument, "max_d must be non-negative");
    }
    AdfResult last;
    for (int d = 0; d <= max_d; ++d) {
        const DifferencedSeries diff = difference(series, d);
        const TimeSeries as_series{diff.start_date + std::chrono::days(d), diff.values};
        last = adf_test(as_series);
        if (last.reject_unit_root) {
            return d;
        }
    }
    throw NonStationaryError("series is still non-stationary after differencing " +
                                 std::to_string(max_d) + " times",
                             last);
}

}  // namespace casecast
