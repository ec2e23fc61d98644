#ifndef CASECAST_SMOOTHING_HPP
#define CASECAST_SMOOTHING_HPP

#include <string>
#include <vector>

#include "casecast/series.hpp"

namespace casecast {

/// Level/trend smoothing weights. phi = 1 disables damping, which makes the
/// recursion identical to Holt's Linear Trend.
struct SmoothingParams {
    double alpha = 0.5;      // level weight in [0,1]
    double beta_star = 0.5;  // trend weight in [0,1]
    double phi = 1.0;        // damping in (0,1]
};

/// Final smoothing state after one pass over a training series, plus the
/// in-sample one-step forecasts (the forecast for time T made from the state
/// at T-1; the entry for T=0 is the initial level).
struct SmoothingModel {
    SmoothingParams params;
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> fitted_one_step;
    int training_length = 0;
    Date train_start{};
};

/// Runs the damped trend recursions over the series, starting from
/// level = first value and trend = second value - first value. Throws
/// Error(invalid-argument) for weights outside their ranges and
/// Error(insufficient-data) for fewer than two observations.
SmoothingModel fit_smoothing(const TimeSeries& series, const SmoothingParams& params);

/// k-step-ahead forecasts level + (phi + phi^2 + ... + phi^k) * trend for
/// k = 1..h. The output starts the day after the training series ends.
TimeSeries forecast_smoothing(const SmoothingModel& model, int horizon);

/// Serialized descriptor such as "HLT(a=0.2,b=0.4)" or
/// "DT(a=0.8,b=0.8,phi=0.9)".
std::string describe(const SmoothingParams& params);

}  // namespace casecast

#endif  // CASECAST_SMOOTHING_HPP
