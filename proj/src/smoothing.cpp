#include "casecast/smoothing.hpp"

#include <charconv>

#include "casecast/error.hpp"

namespace casecast {

namespace {

void validate(const SmoothingParams& params) {
    if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
        throw Error(errc::invalid_argument, "alpha must lie in [0,1]");
    }
    if (!(params.beta_star >= 0.0 && params.beta_star <= 1.0)) {
        throw Error(errc::invalid_argument, "beta_star must lie in [0,1]");
    }
    if (!(params.phi > 0.0 && params.phi <= 1.0)) {
        throw Error(errc::invalid_argument, "phi must lie in (0,1]");
    }
}

std::string format_weight(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace

SmoothingModel fit_smoothing(const TimeSeries& series, const SmoothingParams& params) {
    validate(params);
    if (series.size() < 2) {
        throw Error(errc::insufficient_data,
                    "smoothing needs at least two observations to initialize level and trend");
    }

    SmoothingModel model;
    model.params = params;
    model.train_start = series.start_date;
    model.training_length = static_cast<int>(series.size());
    model.fitted_one_step.reserve(series.size());

    const double alpha = params.alpha;
    const double beta = params.beta_star;
    const double phi = params.phi;

    double level = series.values[0];
    double trend = series.values[1] - series.values[0];
    model.fitted_one_step.push_back(level);  // no prior state exists for T=0

    for (std::size_t t = 1; t < series.size(); ++t) {
        const double y = series.values[t];
        const double damped_trend = phi * trend;
        model.fitted_one_step.push_back(level + damped_trend);
        const double previous_level = level;
        level = alpha * y + (1.0 - alpha) * (previous_level + damped_trend);
        trend = beta * (level - previous_level) + (1.0 - beta) * damped_trend;
    }

    model.level = level;
    model.trend = trend;
    return model;
}

TimeSeries forecast_smoothing(const SmoothingModel& model, int horizon) {
    if (horizon < 1) {
        throw Error(errc::invalid_argument, "forecast horizon must be positive");
    }
    TimeSeries out;
    out.start_date = model.train_start + std::chrono::days(model.training_length);
    out.values.reserve(static_cast<std::size_t>(horizon));

    const double phi = model.params.phi;
    double phi_power = 1.0;
    double damping_sum = 0.0;
    for (int k = 1; k <= horizon; ++k) {
        phi_power *= phi;
        damping_sum += phi_power;
        out.values.push_back(model.level + damping_sum * model.trend);
    }
    return out;
}

std::string describe(const SmoothingParams& params) {
    const std::string base =
        "a=" + format_weight(params.alpha) + ",b=" + format_weight(params.beta_star);
    if (params.phi == 1.0) {
        return "HLT(" + base + ")";
    }
    return "DT(" + base + ",phi=" + format_weight(params.phi) + ")";
}

}  // namespace casecast
