#ifndef CASECAST_EVALUATION_HPP
#define CASECAST_EVALUATION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "casecast/arima.hpp"
#include "casecast/series.hpp"
#include "casecast/smoothing.hpp"

namespace casecast {

/// Forecast accuracy over a validation window.
struct Metrics {
    double rmse = 0.0;  // persons
    double mape = 0.0;  // percent
};

/// Root mean squared error between two equal-length series. Throws
/// Error(alignment-error) on a length mismatch.
double rmse(const std::vector<double>& actual, const std::vector<double>& forecast);
double rmse(const TimeSeries& actual, const TimeSeries& forecast);

/// Mean absolute percentage error, in percent. Throws
/// Error(undefined-metric) when any actual value is zero; zeros are never
/// skipped silently.
double mape(const std::vector<double>& actual, const std::vector<double>& forecast);
double mape(const TimeSeries& actual, const TimeSeries& forecast);

/// Which score drives candidate ranking. validation_rmse reproduces the
/// published comparison; training_rmse ranks by the in-sample one-step error
/// on the model's working scale (level for smoothing, differenced for ARIMA)
/// and avoids validation leakage.
enum class SelectionMetric { validation_rmse, training_rmse };

/// Hyperparameters behind a candidate, kept machine-readable so a winning
/// candidate can be refitted elsewhere.
struct ModelSpec {
    enum class Family { arima, hlt, dt } family = Family::hlt;
    ArimaOrder order{};         // family == arima
    SmoothingParams smoothing{};  // family == hlt or dt
};

/// One evaluated hyperparameter point. A candidate whose fit or scoring
/// failed carries the error text instead of metrics and is skipped during
/// selection.
struct CandidateResult {
    std::string model_descriptor;
    Metrics metrics;
    TimeSeries forecast;
    double training_rmse = 0.0;
    std::optional<std::string> error;
};

/// Ranked candidate list for one series; `selected` minimizes the selection
/// metric, ties broken by grid enumeration order.
struct EvaluationReport {
    std::string country;
    std::vector<CandidateResult> candidates;
    std::size_t selected = 0;
    SelectionMetric selection_metric = SelectionMetric::validation_rmse;
};

/// Fits/forecasts/scores one hyperparameter point against the validation
/// window. Failures are captured in the candidate's error field.
CandidateResult evaluate_candidate(const SplitPair& split, const ModelSpec& spec);

inline const std::vector<double>& default_phi_grid() {
    static const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    return grid;
}

/// Evaluates every (alpha, beta*) pair on the 0.1-step grid over [0,1]
/// against each phi in phi_grid (phi fixed at 1 when damped is false): fit on
/// train, forecast the validation horizon, score. Enumeration order is alpha
/// outer, beta* middle, phi inner. When `specs` is non-null it receives the
/// hyperparameters parallel to the candidate list.
EvaluationReport grid_search_smoothing(const SplitPair& split, const std::vector<double>& phi_grid,
                                       bool damped,
                                       SelectionMetric metric = SelectionMetric::validation_rmse,
                                       std::vector<ModelSpec>* specs = nullptr);

/// Determines d from the training series via the ADF loop, then evaluates
/// all (p,q) in {0..max_pq}^2 at that d. Per-candidate fit failures are
/// recorded, not fatal; a training series that never becomes stationary
/// within max_d differences propagates NonStationaryError.
EvaluationReport grid_search_arima(const SplitPair& split, int max_pq = 2,
                                   SelectionMetric metric = SelectionMetric::validation_rmse,
                                   int max_d = 2, std::vector<ModelSpec>* specs = nullptr);

/// Runs the ARIMA grid, the undamped smoothing grid, and the damped
/// smoothing grid, merges the candidates in that order, and selects the
/// global best. A family that fails wholesale is recorded as a single failed
/// candidate; if every family fails the evaluation throws
/// Error(evaluation-error).
EvaluationReport select_across_families(const SplitPair& split,
                                        SelectionMetric metric = SelectionMetric::validation_rmse,
                                        std::vector<ModelSpec>* specs = nullptr);

/// Index of the best usable candidate under `metric`; throws
/// Error(evaluation-error) when no candidate succeeded.
std::size_t select_best(const std::vector<CandidateResult>& candidates, SelectionMetric metric);

}  // namespace casecast

#endif  // CASECAST_EVALUATION_HPP
