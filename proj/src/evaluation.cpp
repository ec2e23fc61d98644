#include "casecast/evaluation.hpp"

#include <cmath>

#include "casecast/error.hpp"
#include "casecast/stationarity.hpp"

namespace casecast {

namespace {

void check_alignment(std::size_t actual, std::size_t forecast) {
    if (actual != forecast || actual == 0) {
        throw Error(errc::alignment_error,
                    "actual has " + std::to_string(actual) + " values, forecast has " +
                        std::to_string(forecast));
    }
}

/// Fits, forecasts and scores one smoothing candidate against the validation
/// window; failures land in the candidate's error field.
CandidateResult evaluate_smoothing_candidate(const SplitPair& split,
                                             const SmoothingParams& params) {
    CandidateResult candidate;
    candidate.model_descriptor = describe(params);
    try {
        const SmoothingModel model = fit_smoothing(split.train, params);
        candidate.forecast = forecast_smoothing(model, static_cast<int>(split.validation.size()));
        candidate.metrics.rmse = rmse(split.validation, candidate.forecast);
        candidate.metrics.mape = mape(split.validation, candidate.forecast);
        candidate.training_rmse = rmse(split.train.values, model.fitted_one_step);
    } catch (const Error& e) {
        candidate.error = std::string(e.code()) + ": " + e.what();
    }
    return candidate;
}

CandidateResult evaluate_arima_candidate(const SplitPair& split, const ArimaOrder& order) {
    CandidateResult candidate;
    candidate.model_descriptor = describe(order);
    try {
        const ArimaModel model = fit_arima(split.train, order);
        candidate.forecast = forecast(model, static_cast<int>(split.validation.size()));
        candidate.metrics.rmse = rmse(split.validation, candidate.forecast);
        candidate.metrics.mape = mape(split.validation, candidate.forecast);
        // One-step error on the differenced working scale.
        candidate.training_rmse =
            std::sqrt(model.css / static_cast<double>(model.residuals.size()));
    } catch (const ConvergenceError& e) {
        candidate.error = std::string(e.code()) + ": " + e.what();
    } catch (const Error& e) {
        candidate.error = std::string(e.code()) + ": " + e.what();
    }
    return candidate;
}

double score_of(const CandidateResult& candidate, SelectionMetric metric) {
    return metric == SelectionMetric::validation_rmse ? candidate.metrics.rmse
                                                      : candidate.training_rmse;
}

}  // namespace

CandidateResult evaluate_candidate(const SplitPair& split, const ModelSpec& spec) {
    if (spec.family == ModelSpec::Family::arima) {
        return evaluate_arima_candidate(split, spec.order);
    }
    return evaluate_smoothing_candidate(split, spec.smoothing);
}

double rmse(const std::vector<double>& actual, const std::vector<double>& forecast) {
    check_alignment(actual.size(), forecast.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double diff = actual[i] - forecast[i];
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(actual.size()));
}

double rmse(const TimeSeries& actual, const TimeSeries& forecast) {
    return rmse(actual.values, forecast.values);
}

double mape(const std::vector<double>& actual, const std::vector<double>& forecast) {
    check_alignment(actual.size(), forecast.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            throw Error(errc::undefined_metric,
                        "MAPE undefined: actual value at index " + std::to_string(i) + " is zero");
        }
        sum += std::abs(actual[i] - forecast[i]) / std::abs(actual[i]);
    }
    return sum / static_cast<double>(actual.size()) * 100.0;
}

double mape(const TimeSeries& actual, const TimeSeries& forecast) {
    return mape(actual.values, forecast.values);
}

std::size_t select_best(const std::vector<CandidateResult>& candidates, SelectionMetric metric) {
    std::size_t best = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].error.has_value()) {
            continue;
        }
        if (best == candidates.size() || score_of(candidates[i], metric) < score_of(candidates[best], metric)) {
            best = i;
        }
    }
    if (best == candidates.size()) {
        throw Error(errc::evaluation_error, "every candidate failed to fit or score");
    }
    return best;
}

EvaluationReport grid_search_smoothing(const SplitPair& split, const std::vector<double>& phi_grid,
                                       bool damped, SelectionMetric metric,
                                       std::vector<ModelSpec>* specs) {
    const std::vector<double> phis = damped ? phi_grid : std::vector<double>{1.0};
    if (phis.empty()) {
        throw Error(errc::invalid_argument, "phi grid must not be empty");
    }
    EvaluationReport report;
    report.selection_metric = metric;
    report.candidates.reserve(121 * phis.size());
    std::vector<ModelSpec> local_specs;
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; b <= 10; ++b) {
            for (double phi : phis) {
                const SmoothingParams params{static_cast<double>(a) / 10.0,
                                             static_cast<double>(b) / 10.0, phi};
                report.candidates.push_back(evaluate_smoothing_candidate(split, params));
                local_specs.push_back(ModelSpec{
                    phi == 1.0 ? ModelSpec::Family::hlt : ModelSpec::Family::dt, {}, params});
            }
        }
    }
    report.selected = select_best(report.candidates, metric);
    // Published only on success so the caller's vector stays parallel to the
    // candidates it actually received.
    if (specs != nullptr) {
        specs->insert(specs->end(), local_specs.begin(), local_specs.end());
    }
    return report;
}

EvaluationReport grid_search_arima(const SplitPair& split, int max_pq, SelectionMetric metric,
                                   int max_d, std::vector<ModelSpec>* specs) {
    if (max_pq < 0) {
        throw Error(errc::invalid_argument, "max_pq must be non-negative");
    }
    const int d = determine_d(split.train, max_d);
    EvaluationReport report;
    report.selection_metric = metric;
    report.candidates.reserve(static_cast<std::size_t>((max_pq + 1) * (max_pq + 1)));
    std::vector<ModelSpec> local_specs;
    for (int p = 0; p <= max_pq; ++p) {
        for (int q = 0; q <= max_pq; ++q) {
            const ArimaOrder order{p, d, q};
            report.candidates.push_back(evaluate_arima_candidate(split, order));
            local_specs.push_back(ModelSpec{ModelSpec::Family::arima, order, {}});
        }
    }
    report.selected = select_best(report.candidates, metric);
    if (specs != nullptr) {
        specs->insert(specs->end(), local_specs.begin(), local_specs.end());
    }
    return report;
}

EvaluationReport select_across_families(const SplitPair& split, SelectionMetric metric,
                                        std::vector<ModelSpec>* specs) {
    EvaluationReport merged;
    merged.selection_metric = metric;
    int failed_families = 0;

    try {
        EvaluationReport arima_report = grid_search_arima(split, 2, metric, 2, specs);
        for (auto& candidate : arima_report.candidates) {
            merged.candidates.push_back(std::move(candidate));
        }
    } catch (const Error& e) {
        ++failed_families;
        CandidateResult failure;
        failure.model_descriptor = "ARIMA(grid)";
        failure.error = std::string(e.code()) + ": " + e.what();
        merged.candidates.push_back(std::move(failure));
        if (specs != nullptr) {
            specs->push_back(ModelSpec{ModelSpec::Family::arima, {}, {}});
        }
    }

    for (bool damped : {false, true}) {
        try {
            EvaluationReport smoothing_report =
                grid_search_smoothing(split, default_phi_grid(), damped, metric, specs);
            for (auto& candidate : smoothing_report.candidates) {
                merged.candidates.push_back(std::move(candidate));
            }
        } catch (const Error& e) {
            ++failed_families;
            CandidateResult failure;
            failure.model_descriptor = damped ? "DT(grid)" : "HLT(grid)";
            failure.error = std::string(e.code()) + ": " + e.what();
            merged.candidates.push_back(std::move(failure));
            if (specs != nullptr) {
                specs->push_back(ModelSpec{
                    damped ? ModelSpec::Family::dt : ModelSpec::Family::hlt, {}, {}});
            }
        }
    }

    if (failed_families == 3) {
        throw Error(errc::evaluation_error, "all model families failed to evaluate");
    }
    merged.selected = select_best(merged.candidates, metric);
    return merged;
}

}  // namespace casecast
