#include <doctest.h>

#include <cmath>
#include <random>

#include "casecast/error.hpp"
#include "casecast/evaluation.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using casecast::CandidateResult;
using casecast::Error;
using casecast::EvaluationReport;
using casecast::ModelSpec;
using casecast::SelectionMetric;
using casecast::TimeSeries;
using test_support::make_series;

namespace {

/// Noisy upward-drifting cumulative curve; drift keeps d small and the grids
/// well-behaved.
TimeSeries drifting_series(unsigned seed, std::size_t n) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> step(10.0, 4.0);
    std::vector<double> values(n);
    double acc = 100.0;
    for (auto& v : values) {
        acc += std::abs(step(rng));
        v = acc;
    }
    return make_series(values);
}

}  // namespace

TEST_CASE("error metrics reproduce the worked example") {
    const std::vector<double> actual{100, 200};
    const std::vector<double> forecast{110, 190};
    CHECK(casecast::rmse(actual, forecast) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(casecast::mape(actual, forecast) == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("metric scaling laws over randomized inputs") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> value(1.0, 500.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> actual(20), forecast(20);
        for (std::size_t i = 0; i < actual.size(); ++i) {
            actual[i] = value(rng);
            forecast[i] = value(rng);
        }
        const double k = value(rng) / 100.0;
        std::vector<double> actual_k = actual, forecast_k = forecast;
        for (std::size_t i = 0; i < actual.size(); ++i) {
            actual_k[i] *= k;
            forecast_k[i] *= k;
        }
        const double base_rmse = casecast::rmse(actual, forecast);
        CHECK(casecast::rmse(actual_k, forecast_k) ==
              doctest::Approx(k * base_rmse).epsilon(1e-9));
        CHECK(casecast::mape(actual_k, forecast_k) ==
              doctest::Approx(casecast::mape(actual, forecast)).epsilon(1e-9));
    }
}

TEST_CASE("metric error paths") {
    try {
        casecast::mape({0.0, 1.0}, {1.0, 1.0});
        FAIL("expected undefined-metric");
    } catch (const Error& e) {
        CHECK(e.code() == casecast::errc::undefined_metric);
    }
    try {
        casecast::rmse(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0});
        FAIL("expected alignment-error");
    } catch (const Error& e) {
        CHECK(e.code() == casecast::errc::alignment_error);
    }
    CHECK_THROWS_AS(casecast::rmse(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST_CASE("selection skips failures and breaks ties toward the first candidate") {
    CandidateResult ok_a;
    ok_a.metrics.rmse = 5.0;
    ok_a.training_rmse = 9.0;
    CandidateResult failed;
    failed.error = "convergence-error: it broke";
    failed.metrics.rmse = 0.0;  // must be ignored
    CandidateResult ok_b;
    ok_b.metrics.rmse = 5.0;
    ok_b.training_rmse = 1.0;

    const std::vector<CandidateResult> candidates{ok_a, failed, ok_b};
    CHECK(casecast::select_best(candidates, SelectionMetric::validation_rmse) == 0);
    CHECK(casecast::select_best(candidates, SelectionMetric::training_rmse) == 2);

    const std::vector<CandidateResult> all_failed{failed, failed};
    try {
        casecast::select_best(all_failed, SelectionMetric::validation_rmse);
        FAIL("expected evaluation-error");
    } catch (const Error& e) {
        CHECK(e.code() == casecast::errc::evaluation_error);
    }
}

TEST_CASE("smoothing grid enumerates alpha-major, beta-middle, phi-minor") {
    const casecast::SplitPair parts = casecast::split(drifting_series(31, 40), 0.7);

    std::vector<ModelSpec> specs;
    const EvaluationReport undamped = casecast::grid_search_smoothing(
        parts, casecast::default_phi_grid(), false, SelectionMetric::validation_rmse, &specs);
    REQUIRE(undamped.candidates.size() == 121);
    REQUIRE(specs.size() == 121);
    CHECK(undamped.candidates[0].model_descriptor == "HLT(a=0,b=0)");
    CHECK(undamped.candidates[1].model_descriptor == "HLT(a=0,b=0.1)");
    CHECK(undamped.candidates[11].model_descriptor == "HLT(a=0.1,b=0)");
    CHECK(undamped.candidates[120].model_descriptor == "HLT(a=1,b=1)");

    const EvaluationReport damped = casecast::grid_search_smoothing(
        parts, casecast::default_phi_grid(), true, SelectionMetric::validation_rmse);
    REQUIRE(damped.candidates.size() == 121 * 9);
    CHECK(damped.candidates[0].model_descriptor == "DT(a=0,b=0,phi=0.1)");
    CHECK(damped.candidates[8].model_descriptor == "DT(a=0,b=0,phi=0.9)");
    CHECK(damped.candidates[9].model_descriptor == "DT(a=0,b=0.1,phi=0.1)");
}

TEST_CASE("smoothing grid agrees with the exhaustive oracle") {
    for (unsigned seed : {41u, 42u, 43u}) {
        const casecast::SplitPair parts = casecast::split(drifting_series(seed, 50), 0.7);
        const EvaluationReport report = casecast::grid_search_smoothing(
            parts, casecast::default_phi_grid(), false);
        const oracles::GridOutcome expected = oracles::smoothing_grid_oracle(parts);
        CHECK(report.selected == expected.best_index);
        CHECK(report.candidates[report.selected].metrics.rmse == expected.best_score);
        REQUIRE(report.candidates.size() == expected.scores.size());
        for (std::size_t i = 0; i < expected.scores.size(); ++i) {
            if (!std::isnan(expected.scores[i])) {
                CHECK(report.candidates[i].metrics.rmse == expected.scores[i]);
            }
        }
    }
}

TEST_CASE("arima grid agrees with the exhaustive oracle") {
    const casecast::SplitPair parts = casecast::split(drifting_series(55, 60), 0.7);
    std::vector<ModelSpec> specs;
    const EvaluationReport report =
        casecast::grid_search_arima(parts, 2, SelectionMetric::validation_rmse, 2, &specs);
    REQUIRE(report.candidates.size() == 9);
    const int d = specs.front().order.d;
    CHECK(report.candidates[0].model_descriptor ==
          "ARIMA(0," + std::to_string(d) + ",0)");

    const oracles::GridOutcome expected = oracles::arima_grid_oracle(parts, d);
    CHECK(report.selected == expected.best_index);
    CHECK(report.candidates[report.selected].metrics.rmse == expected.best_score);
}

TEST_CASE("family comparison merges candidates in a fixed order") {
    const casecast::SplitPair parts = casecast::split(drifting_series(77, 60), 0.7);
    std::vector<ModelSpec> specs;
    const EvaluationReport report = casecast::select_across_families(
        parts, SelectionMetric::validation_rmse, &specs);
    REQUIRE(report.candidates.size() == 9 + 121 + 121 * 9);
    REQUIRE(specs.size() == report.candidates.size());
    CHECK(report.candidates[0].model_descriptor.rfind("ARIMA(", 0) == 0);
    CHECK(report.candidates[9].model_descriptor == "HLT(a=0,b=0)");
    CHECK(report.candidates[9 + 121].model_descriptor == "DT(a=0,b=0,phi=0.1)");

    // The winner must carry the smallest score among usable candidates.
    const double best = report.candidates[report.selected].metrics.rmse;
    for (const auto& candidate : report.candidates) {
        if (!candidate.error.has_value()) {
            CHECK(best <= candidate.metrics.rmse);
        }
    }
}

TEST_CASE("a family that fails wholesale becomes a single failed candidate") {
    // Noise-free linear data defeats the stationarity loop, so the ARIMA
    // family collapses to one error entry while the smoothing grids proceed.
    std::vector<double> linear(40);
    for (std::size_t i = 0; i < linear.size(); ++i) {
        linear[i] = 7.0 * static_cast<double>(i);
    }
    const casecast::SplitPair parts = casecast::split(make_series(linear), 0.7);
    std::vector<ModelSpec> specs;
    const EvaluationReport report = casecast::select_across_families(
        parts, SelectionMetric::validation_rmse, &specs);
    REQUIRE(report.candidates.size() == 1 + 121 + 121 * 9);
    REQUIRE(specs.size() == report.candidates.size());
    CHECK(report.candidates[0].model_descriptor == "ARIMA(grid)");
    REQUIRE(report.candidates[0].error.has_value());
    CHECK(report.candidates[0].error->find("non-stationary-at-max") != std::string::npos);
    CHECK(report.candidates[report.selected].metrics.rmse == doctest::Approx(0.0));
}

TEST_CASE("evaluate_candidate dispatches on the spec family") {
    const casecast::SplitPair parts = casecast::split(drifting_series(88, 50), 0.7);

    ModelSpec smoothing_spec;
    smoothing_spec.family = ModelSpec::Family::hlt;
    smoothing_spec.smoothing = casecast::SmoothingParams{0.3, 0.2, 1.0};
    const CandidateResult smooth = casecast::evaluate_candidate(parts, smoothing_spec);
    REQUIRE_FALSE(smooth.error.has_value());
    CHECK(smooth.model_descriptor == "HLT(a=0.3,b=0.2)");
    CHECK(smooth.forecast.size() == parts.validation.size());

    ModelSpec arima_spec;
    arima_spec.family = ModelSpec::Family::arima;
    arima_spec.order = casecast::ArimaOrder{1, 1, 0};
    const CandidateResult arima = casecast::evaluate_candidate(parts, arima_spec);
    REQUIRE_FALSE(arima.error.has_value());
    CHECK(arima.model_descriptor == "ARIMA(1,1,0)");
    CHECK(arima.training_rmse > 0.0);

    // A hopeless configuration is captured, not thrown.
    arima_spec.order = casecast::ArimaOrder{2, 25, 2};
    const CandidateResult failed = casecast::evaluate_candidate(parts, arima_spec);
    REQUIRE(failed.error.has_value());
    CHECK(failed.error->find("insufficient-data") != std::string::npos);
}

TEST_CASE("training-rmse selection ranks by in-sample error") {
    const casecast::SplitPair parts = casecast::split(drifting_series(91, 50), 0.7);
    const EvaluationReport report = casecast::grid_search_smoothing(
        parts, casecast::default_phi_grid(), false, SelectionMetric::training_rmse);
    const double best = report.candidates[report.selected].training_rmse;
    for (const auto& candidate : report.candidates) {
        if (!candidate.error.has_value()) {
            CHECK(best <= candidate.training_rmse);
        }
    }
    CHECK(report.selection_metric == SelectionMetric::training_rmse);
}
