#include "casecast/arima.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "casecast/nelder_mead.hpp"

namespace casecast {

namespace {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

/// True when any inverse root of the lag polynomial lies on or outside the
/// unit circle. `negate` selects the MA convention (1 + c1 z + ...) over the
/// AR one (1 - c1 z - ...).
bool violates_root_condition(const std::vector<double>& coefficients, bool negate) {
    const int k = static_cast<int>(coefficients.size());
    if (k == 0) {
        return false;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        companion(0, j) = negate ? -coefficients[static_cast<std::size_t>(j)]
                                 : coefficients[static_cast<std::size_t>(j)];
    }
    for (int i = 1; i < k; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const Eigen::VectorXcd eigs = companion.eigenvalues();
    for (int i = 0; i < eigs.size(); ++i) {
        if (std::abs(eigs(i)) >= 1.0) {
            return true;
        }
    }
    return false;
}

struct TailState {
    std::vector<double> values;
    std::vector<double> residuals;
};

TailState collect_tails(const std::vector<double>& w, const std::vector<double>& residuals,
                        int p, int q) {
    const int keep = std::max(p, q);
    TailState tails;
    if (keep == 0) {
        return tails;
    }
    const auto take_last = [keep](const std::vector<double>& from) {
        std::vector<double> out(static_cast<std::size_t>(keep), 0.0);
        const int have = std::min<int>(keep, static_cast<int>(from.size()));
        std::copy(from.end() - have, from.end(),
                  out.end() - have);  // zero-pad the front (pre-sample convention)
        return out;
    };
    tails.values = take_last(w);
    tails.residuals = take_last(residuals);
    return tails;
}

ArimaModel assemble_model(const DifferencedSeries& diff, const ArimaOrder& order,
                          double intercept, std::vector<double> ar, std::vector<double> ma,
                          const TimeSeries* original = nullptr) {
    ArimaModel model;
    model.order = order;
    model.intercept = intercept;
    model.ar_coefficients = std::move(ar);
    model.ma_coefficients = std::move(ma);
    model.css = conditional_ssr(diff.values, model.intercept, model.ar_coefficients,
                                model.ma_coefficients, &model.residuals);
    model.head_values = diff.head_values;
    model.train_start = diff.start_date;
    model.train_length = static_cast<int>(diff.original_size());

    TailState tails = collect_tails(diff.values, model.residuals, order.p, order.q);
    model.tail_values = std::move(tails.values);
    model.tail_residuals = std::move(tails.residuals);
    // Taking the tails from the caller's series keeps them bit-exact;
    // reconstruction through integrate() can drift in the last ulps on
    // non-integer data.
    model.level_tails = original != nullptr ? integration_tails(*original, order.d)
                                            : integration_tails(integrate(diff), order.d);
    model.root_warning = violates_root_condition(model.ar_coefficients, false) ||
                         violates_root_condition(model.ma_coefficients, true);
    return model;
}

}  // namespace

double conditional_ssr(const std::vector<double>& values, double intercept,
                       const std::vector<double>& ar, const std::vector<double>& ma,
                       std::vector<double>* residuals_out) {
    const int n = static_cast<int>(values.size());
    const int p = static_cast<int>(ar.size());
    const int q = static_cast<int>(ma.size());
    std::vector<double> errors(static_cast<std::size_t>(n), 0.0);
    double ssr = 0.0;
    for (int t = p; t < n; ++t) {
        double prediction = intercept;
        for (int i = 1; i <= p; ++i) {
            prediction += ar[static_cast<std::size_t>(i - 1)] * values[static_cast<std::size_t>(t - i)];
        }
        for (int j = 1; j <= q; ++j) {
            if (t - j >= 0) {
                prediction += ma[static_cast<std::size_t>(j - 1)] * errors[static_cast<std::size_t>(t - j)];
            }
        }
        const double e = values[static_cast<std::size_t>(t)] - prediction;
        errors[static_cast<std::size_t>(t)] = e;
        ssr += e * e;
    }
    if (residuals_out != nullptr) {
        residuals_out->assign(errors.begin() + p, errors.end());
    }
    return ssr;
}

ArimaModel fit_ar(const DifferencedSeries& series, int p) {
    if (p < 1) {
        throw Error(errc::invalid_argument, "autoregression needs p >= 1");
    }
    const int n = static_cast<int>(series.values.size());
    if (n <= p + 1) {
        throw Error(errc::insufficient_data, "AR(" + std::to_string(p) + ") needs more than " +
                                                 std::to_string(p + 1) + " values, got " +
                                                 std::to_string(n));
    }
    const int rows = n - p;
    const int cols = p + 1;
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = p + r;
        target(r) = series.values[static_cast<std::size_t>(t)];
        design(r, 0) = 1.0;
        for (int i = 1; i <= p; ++i) {
            design(r, i) = series.values[static_cast<std::size_t>(t - i)];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) {
        throw Error(errc::degenerate_input,
                    "autoregression design is collinear (constant or repeating series)");
    }
    const Eigen::VectorXd beta = qr.solve(target);
    std::vector<double> ar(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        ar[static_cast<std::size_t>(i)] = beta(i + 1);
    }
    return assemble_model(series, ArimaOrder{p, series.order, 0}, beta(0), std::move(ar), {});
}

ArimaModel fit_arima(const TimeSeries& series, const ArimaOrder& order) {
    if (order.p < 0 || order.d < 0 || order.q < 0) {
        throw Error(errc::invalid_argument, "ARIMA order components must be non-negative");
    }
    const int min_len = order.d + std::max(order.p, order.q) + 10;
    if (static_cast<int>(series.size()) <= min_len) {
        throw Error(errc::insufficient_data,
                    describe(order) + " needs more than " + std::to_string(min_len) +
                        " observations, got " + std::to_string(series.size()));
    }
    const DifferencedSeries diff = difference(series, order.d);
    const std::vector<double>& w = diff.values;

    double intercept0 = mean_of(w);
    std::vector<double> ar0(static_cast<std::size_t>(order.p), 0.0);
    if (order.p > 0) {
        try {
            const ArimaModel first_stage = fit_ar(diff, order.p);
            intercept0 = first_stage.intercept;
            ar0 = first_stage.ar_coefficients;
        } catch (const Error&) {
            // Collinear first stage: start the simplex from zeros instead.
        }
    }

    if (order.p == 0 && order.q == 0) {
        // CSS minimum is the plain mean of the differenced values.
        return assemble_model(diff, order, intercept0, {}, {}, &series);
    }

    const std::size_t dims = 1 + static_cast<std::size_t>(order.p + order.q);
    std::vector<double> start(dims, 0.0);
    start[0] = intercept0;
    for (int i = 0; i < order.p; ++i) {
        start[static_cast<std::size_t>(1 + i)] = ar0[static_cast<std::size_t>(i)];
    }
    std::vector<double> steps(dims, 0.1);
    steps[0] = std::max(0.1, 0.1 * std::abs(intercept0));

    const auto unpack = [&](const std::vector<double>& x) {
        std::vector<double> ar(x.begin() + 1, x.begin() + 1 + order.p);
        std::vector<double> ma(x.begin() + 1 + order.p, x.end());
        return std::pair(std::move(ar), std::move(ma));
    };
    const auto objective = [&](const std::vector<double>& x) {
        const auto [ar, ma] = unpack(x);
        const double ssr = conditional_ssr(w, x[0], ar, ma);
        return std::isfinite(ssr) ? ssr : std::numeric_limits<double>::max();
    };

    const NelderMeadResult opt = nelder_mead_minimize(objective, start, steps);
    auto [ar, ma] = unpack(opt.x);
    ArimaModel model = assemble_model(diff, order, opt.x[0], std::move(ar), std::move(ma), &series);
    if (!opt.converged) {
        throw ConvergenceError(describe(order) + " optimizer did not converge within " +
                                   std::to_string(opt.iterations) + " iterations",
                               std::move(model), opt.value);
    }
    return model;
}

TimeSeries forecast(const ArimaModel& model, int horizon) {
    if (horizon < 1) {
        throw Error(errc::invalid_argument, "forecast horizon must be positive");
    }
    const int p = model.order.p;
    const int q = model.order.q;
    std::vector<double> value_history = model.tail_values;
    std::vector<double> error_history = model.tail_residuals;

    std::vector<double> differenced;
    differenced.reserve(static_cast<std::size_t>(horizon));
    for (int step = 0; step < horizon; ++step) {
        double next = model.intercept;
        for (int i = 1; i <= p; ++i) {
            next += model.ar_coefficients[static_cast<std::size_t>(i - 1)] *
                    value_history[value_history.size() - static_cast<std::size_t>(i)];
        }
        for (int j = 1; j <= q; ++j) {
            next += model.ma_coefficients[static_cast<std::size_t>(j - 1)] *
                    error_history[error_history.size() - static_cast<std::size_t>(j)];
        }
        differenced.push_back(next);
        value_history.push_back(next);
        error_history.push_back(0.0);  // future errors are unknown, set to zero
    }

    TimeSeries out;
    out.start_date = model.train_start + std::chrono::days(model.train_length);
    out.values = integrate_forecast(model.level_tails, differenced);
    return out;
}

std::string describe(const ArimaOrder& order) {
    return "ARIMA(" + std::to_string(order.p) + "," + std::to_string(order.d) + "," +
           std::to_string(order.q) + ")";
}

}  // namespace casecast
