// Acceptance gate: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Run with no arguments for the full gate
// or with a criterion number to run just that one. Exit status is zero only
// when every executed criterion passed.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "casecast/arima.hpp"
#include "casecast/csv.hpp"
#include "casecast/error.hpp"
#include "casecast/evaluation.hpp"
#include "casecast/pipeline.hpp"
#include "casecast/series.hpp"
#include "casecast/smoothing.hpp"
#include "casecast/stationarity.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#ifndef CASECAST_DATA_DIR
#error "CASECAST_DATA_DIR must name the bundled data directory"
#endif
#ifndef CASECAST_CLI_PATH
#error "CASECAST_CLI_PATH must name the command-line binary"
#endif

namespace {

using casecast::SplitPair;
using casecast::TimeSeries;
using test_support::make_series;
using test_support::normal_draws;

/// Collects failure details for one criterion.
struct Gate {
    bool ok = true;
    std::vector<std::string> details;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (details.size() < 8) {
                details.push_back(what);
            }
        }
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// --- criterion 1: hand-checkable smoothing recursions -----------------------

void criterion_hand_recursions(Gate& g) {
    const TimeSeries series = make_series({10, 12});

    const casecast::SmoothingModel plain =
        casecast::fit_smoothing(series, casecast::SmoothingParams{0.5, 0.5, 1.0});
    g.expect(plain.level == 12.0, "undamped level != 12");
    g.expect(plain.trend == 2.0, "undamped trend != 2");
    const TimeSeries plain_fc = casecast::forecast_smoothing(plain, 3);
    const double expected_plain[] = {14.0, 16.0, 18.0};
    for (int i = 0; i < 3; ++i) {
        g.expect(near(plain_fc.values[i], expected_plain[i], 1e-12),
                 "undamped forecast step " + std::to_string(i + 1) + " off");
    }

    const casecast::SmoothingModel damped =
        casecast::fit_smoothing(series, casecast::SmoothingParams{0.5, 0.5, 0.5});
    g.expect(damped.level == 11.5, "damped level != 11.5");
    g.expect(damped.trend == 1.25, "damped trend != 1.25");
    const TimeSeries damped_fc = casecast::forecast_smoothing(damped, 2);
    g.expect(near(damped_fc.values[0], 12.125, 1e-12), "damped forecast step 1 off");
    g.expect(near(damped_fc.values[1], 12.4375, 1e-12), "damped forecast step 2 off");
}

// --- criterion 2: phi = 1 equals the undamped model bit for bit -------------

/// Textbook undamped Holt recursion, written with no damping factor anywhere.
struct PlainHolt {
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> fitted;
};

PlainHolt plain_holt(const std::vector<double>& y, double alpha, double beta) {
    PlainHolt state;
    state.level = y[0];
    state.trend = y[1] - y[0];
    state.fitted.push_back(state.level);
    for (std::size_t t = 1; t < y.size(); ++t) {
        state.fitted.push_back(state.level + state.trend);
        const double previous_level = state.level;
        state.level = alpha * y[t] + (1.0 - alpha) * (previous_level + state.trend);
        state.trend = beta * (state.level - previous_level) + (1.0 - beta) * state.trend;
    }
    return state;
}

void criterion_damped_identity(Gate& g) {
    std::mt19937 point_rng(999);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < 20; ++i) {
        points.emplace_back(unit(point_rng), unit(point_rng));
    }

    for (unsigned seed = 1; seed <= 100; ++seed) {
        const std::vector<double> values = normal_draws(seed, 50, 20.0, 6.0);
        const TimeSeries series = make_series(values);
        for (const auto& [alpha, beta] : points) {
            const casecast::SmoothingModel model = casecast::fit_smoothing(
                series, casecast::SmoothingParams{alpha, beta, 1.0});
            const PlainHolt reference = plain_holt(values, alpha, beta);
            const std::string tag = "seed " + std::to_string(seed) + " alpha " +
                                    std::to_string(alpha) + " beta " + std::to_string(beta);
            g.expect(model.level == reference.level, tag + ": level differs");
            g.expect(model.trend == reference.trend, tag + ": trend differs");
            g.expect(model.fitted_one_step == reference.fitted, tag + ": fitted values differ");

            const TimeSeries fc = casecast::forecast_smoothing(model, 8);
            for (int h = 1; h <= 8; ++h) {
                const double textbook = reference.level + static_cast<double>(h) * reference.trend;
                g.expect(fc.values[static_cast<std::size_t>(h - 1)] == textbook,
                         tag + ": forecast step " + std::to_string(h) + " differs");
            }
            if (!g.ok) {
                return;  // one mismatch is conclusive; avoid flooding details
            }
        }
    }
}

// --- criterion 3: metric hand values and scaling laws -----------------------

void criterion_metrics(Gate& g) {
    const std::vector<double> actual{100.0, 200.0};
    const std::vector<double> forecast{110.0, 190.0};
    g.expect(near(casecast::rmse(actual, forecast), 10.0, 1e-12), "rmse hand value off");
    g.expect(near(casecast::mape(actual, forecast), 7.5, 1e-12), "mape hand value off");

    std::mt19937 rng(404);
    std::uniform_int_distribution<int> length(3, 40);
    std::uniform_real_distribution<double> value(50.0, 250.0);
    std::uniform_real_distribution<double> scale(0.1, 6.0);
    std::bernoulli_distribution negate(0.5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = length(rng);
        std::vector<double> a(static_cast<std::size_t>(n));
        std::vector<double> f(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = value(rng);
            f[static_cast<std::size_t>(i)] = value(rng);
        }
        const double k = negate(rng) ? -scale(rng) : scale(rng);
        std::vector<double> ka = a;
        std::vector<double> kf = f;
        for (auto& v : ka) {
            v *= k;
        }
        for (auto& v : kf) {
            v *= k;
        }
        const std::string tag = "trial " + std::to_string(trial);
        g.expect(near_rel(casecast::rmse(ka, kf), std::abs(k) * casecast::rmse(a, f), 1e-9),
                 tag + ": rmse does not scale by |k|");
        g.expect(near_rel(casecast::mape(ka, kf), casecast::mape(a, f), 1e-9),
                 tag + ": mape is not scale-invariant");
    }
}

// --- criterion 4: AR(1)/MA(1) coefficient recovery ---------------------------

std::vector<double> ar1_series(unsigned seed, std::size_t n, double coefficient) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> out;
    out.reserve(n);
    double y = 0.0;
    for (std::size_t i = 0; i < n + 100; ++i) {  // burn-in to forget y0
        y = coefficient * y + noise(rng);
        if (i >= 100) {
            out.push_back(y);
        }
    }
    return out;
}

std::vector<double> ma1_series(unsigned seed, std::size_t n, double coefficient) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> out;
    out.reserve(n);
    double previous = noise(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const double current = noise(rng);
        out.push_back(current + coefficient * previous);
        previous = current;
    }
    return out;
}

void criterion_parameter_recovery(Gate& g) {
    for (unsigned seed = 1; seed <= 20; ++seed) {
        const TimeSeries series = make_series(ar1_series(seed, 800, 0.7));
        try {
            const casecast::ArimaModel model = casecast::fit_arima(series, {1, 0, 0});
            g.expect(near(model.ar_coefficients[0], 0.7, 0.1),
                     "AR seed " + std::to_string(seed) + " estimate " +
                         std::to_string(model.ar_coefficients[0]));
        } catch (const casecast::Error& e) {
            g.expect(false, "AR seed " + std::to_string(seed) + " failed: " + e.what());
        }
    }
    for (unsigned seed = 101; seed <= 120; ++seed) {
        const TimeSeries series = make_series(ma1_series(seed, 800, 0.6));
        try {
            const casecast::ArimaModel model = casecast::fit_arima(series, {0, 0, 1});
            g.expect(near(model.ma_coefficients[0], 0.6, 0.1),
                     "MA seed " + std::to_string(seed) + " estimate " +
                         std::to_string(model.ma_coefficients[0]));
        } catch (const casecast::Error& e) {
            g.expect(false, "MA seed " + std::to_string(seed) + " failed: " + e.what());
        }
    }
}

// --- criterion 5: unit-root test vs the independent oracle ------------------

void criterion_unit_root(Gate& g) {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        const std::vector<double> noise = normal_draws(seed, 200);
        const std::vector<double> walk = [&] {
            std::vector<double> out(200);
            const std::vector<double> steps = normal_draws(seed + 500, 200);
            double level = 0.0;
            for (std::size_t i = 0; i < steps.size(); ++i) {
                level += steps[i];
                out[i] = level;
            }
            return out;
        }();
        for (const std::vector<double>* pair : {&noise, &walk}) {
            const casecast::AdfResult lib = casecast::adf_test(make_series(*pair));
            const oracles::AdfOutcome oracle = oracles::adf_oracle(*pair);
            const std::string tag =
                std::string(pair == &noise ? "noise" : "walk") + " seed " + std::to_string(seed);
            g.expect(!oracle.degenerate && !lib.diagnostic.has_value(),
                     tag + ": unexpected degenerate fit");
            g.expect(near(lib.statistic, oracle.statistic, 1e-6),
                     tag + ": statistic " + std::to_string(lib.statistic) + " vs oracle " +
                         std::to_string(oracle.statistic));
            g.expect(lib.reject_unit_root == oracle.reject, tag + ": 5% decisions differ");
        }
    }
}

// --- criterion 6: grid searches vs independent enumeration ------------------

TimeSeries drifting_series(unsigned seed, std::size_t n) {
    const std::vector<double> steps = normal_draws(seed, n, 8.0, 3.0);
    std::vector<double> values;
    values.reserve(n);
    double level = 50.0;
    for (double s : steps) {
        level += std::abs(s);
        values.push_back(level);
    }
    return make_series(values);
}

void criterion_grid_equivalence(Gate& g) {
    for (unsigned seed = 201; seed <= 210; ++seed) {
        const SplitPair parts = casecast::split(drifting_series(seed, 60), 0.7);
        const std::string tag = "seed " + std::to_string(seed);

        const casecast::EvaluationReport smoothing =
            casecast::grid_search_smoothing(parts, casecast::default_phi_grid(), false);
        const oracles::GridOutcome smoothing_oracle = oracles::smoothing_grid_oracle(parts);
        g.expect(smoothing.selected == smoothing_oracle.best_index,
                 tag + ": smoothing winners differ");
        g.expect(smoothing.candidates[smoothing.selected].metrics.rmse ==
                     smoothing_oracle.best_score,
                 tag + ": smoothing winning scores differ");
        for (std::size_t i = 0; i < smoothing.candidates.size(); ++i) {
            const bool lib_failed = smoothing.candidates[i].error.has_value();
            const bool oracle_failed = std::isnan(smoothing_oracle.scores[i]);
            g.expect(lib_failed == oracle_failed,
                     tag + ": smoothing failure pattern differs at " + std::to_string(i));
            if (!lib_failed && !oracle_failed) {
                g.expect(smoothing.candidates[i].metrics.rmse == smoothing_oracle.scores[i],
                         tag + ": smoothing score differs at " + std::to_string(i));
            }
        }

        std::vector<casecast::ModelSpec> specs;
        const casecast::EvaluationReport arima = casecast::grid_search_arima(
            parts, 2, casecast::SelectionMetric::validation_rmse, 2, &specs);
        const int d = specs.front().order.d;
        const oracles::GridOutcome arima_oracle = oracles::arima_grid_oracle(parts, d);
        g.expect(arima.selected == arima_oracle.best_index, tag + ": order winners differ");
        g.expect(arima.candidates[arima.selected].metrics.rmse == arima_oracle.best_score,
                 tag + ": order winning scores differ");
        if (!g.ok) {
            return;
        }
    }
}

// --- criterion 7: bundled dataset behaviour ----------------------------------

struct ReferenceRow {
    const char* country;
    double mape;
};

/// Frozen accuracy targets for the bundled dataset's fixed per-country
/// configurations; each run must land within +-50% relative and keep the
/// first entry the most accurate and the second the least.
const ReferenceRow kReferenceMape[] = {
    {"Qatar", 0.3056},         {"Bahrain", 15.3610}, {"United Arab Emirates", 1.6212},
    {"Oman", 2.8596},          {"Kuwait", 2.5435},   {"Saudi Arabia", 0.5930},
};

casecast::ModelSpec hlt_spec(double alpha, double beta) {
    casecast::ModelSpec spec;
    spec.family = casecast::ModelSpec::Family::hlt;
    spec.smoothing = casecast::SmoothingParams{alpha, beta, 1.0};
    return spec;
}

casecast::ModelSpec arima_spec(int p, int d, int q) {
    casecast::ModelSpec spec;
    spec.family = casecast::ModelSpec::Family::arima;
    spec.order = casecast::ArimaOrder{p, d, q};
    return spec;
}

/// Damped-trend configuration at fixed weights with the damping factor chosen
/// from the standard grid by validation RMSE, mirroring the pipeline's
/// fixed-(alpha, beta) behaviour.
casecast::ModelSpec best_damped_spec(const SplitPair& parts, double alpha, double beta) {
    std::vector<casecast::CandidateResult> candidates;
    std::vector<casecast::ModelSpec> specs;
    for (double phi : casecast::default_phi_grid()) {
        casecast::ModelSpec spec;
        spec.family = casecast::ModelSpec::Family::dt;
        spec.smoothing = casecast::SmoothingParams{alpha, beta, phi};
        candidates.push_back(casecast::evaluate_candidate(parts, spec));
        specs.push_back(spec);
    }
    return specs[casecast::select_best(candidates, casecast::SelectionMetric::validation_rmse)];
}

void criterion_bundled_dataset(Gate& g) {
    const std::string path = std::string(CASECAST_DATA_DIR) + "/confirmed_cases.csv";
    const casecast::RawCaseTable table = casecast::parse_case_csv_file(path);
    auto series_of = [&](const std::string& name) {
        casecast::CountryQuery query;
        query.country_name = name;
        query.window_start = table.date_header.front();
        query.window_end = table.date_header.back();
        return casecast::extract_country(table, query);
    };

    // (a) one year plus a day, split 256/111 at the default fraction.
    const TimeSeries qatar = series_of("Qatar");
    g.expect(qatar.size() == 367, "window holds " + std::to_string(qatar.size()) + " days");
    const SplitPair qatar_parts = casecast::split(qatar, 0.7);
    g.expect(qatar_parts.train.size() == 256,
             "train size " + std::to_string(qatar_parts.train.size()));
    g.expect(qatar_parts.validation.size() == 111,
             "validation size " + std::to_string(qatar_parts.validation.size()));

    // (b) the smoothing grids pick the documented weights (or tie within 5%
    // validation RMSE of the documented candidate).
    struct SmoothingTarget {
        const char* country;
        double alpha;
        double beta;
        bool damped;
    };
    const SmoothingTarget targets[] = {
        {"Qatar", 0.2, 0.4, false},
        {"Oman", 0.1, 0.5, false},
        {"Kuwait", 0.1, 0.2, false},
        {"Saudi Arabia", 0.8, 0.8, true},
    };
    for (const auto& target : targets) {
        const SplitPair parts = casecast::split(series_of(target.country), 0.7);
        std::vector<casecast::ModelSpec> specs;
        const casecast::EvaluationReport report = casecast::grid_search_smoothing(
            parts, casecast::default_phi_grid(), target.damped,
            casecast::SelectionMetric::validation_rmse, &specs);
        const casecast::SmoothingParams winner = specs[report.selected].smoothing;
        const bool weights_match =
            near(winner.alpha, target.alpha, 1e-9) && near(winner.beta_star, target.beta, 1e-9);
        if (!weights_match) {
            const casecast::ModelSpec documented =
                target.damped ? best_damped_spec(parts, target.alpha, target.beta)
                              : hlt_spec(target.alpha, target.beta);
            const casecast::CandidateResult reference =
                casecast::evaluate_candidate(parts, documented);
            const double selected_rmse = report.candidates[report.selected].metrics.rmse;
            g.expect(!reference.error.has_value() &&
                         std::abs(selected_rmse - reference.metrics.rmse) <=
                             0.05 * reference.metrics.rmse,
                     std::string(target.country) + ": selected (a=" +
                         std::to_string(winner.alpha) + ", b=" + std::to_string(winner.beta_star) +
                         ") and not within 5% RMSE of the documented weights");
        }
    }

    // (c) fixed configurations land within +-50% of the frozen accuracy
    // targets, with Qatar most accurate and Bahrain least.
    double mape_of[6] = {};
    for (int i = 0; i < 6; ++i) {
        const ReferenceRow& row = kReferenceMape[i];
        const SplitPair parts = casecast::split(series_of(row.country), 0.7);
        casecast::ModelSpec spec;
        const std::string name = row.country;
        if (name == "United Arab Emirates") {
            spec = arima_spec(2, 2, 2);
        } else if (name == "Bahrain") {
            spec = arima_spec(0, 2, 2);
        } else if (name == "Qatar") {
            spec = hlt_spec(0.2, 0.4);
        } else if (name == "Oman") {
            spec = hlt_spec(0.1, 0.5);
        } else if (name == "Kuwait") {
            spec = hlt_spec(0.1, 0.2);
        } else {
            spec = best_damped_spec(parts, 0.8, 0.8);
        }
        const casecast::CandidateResult candidate = casecast::evaluate_candidate(parts, spec);
        if (candidate.error.has_value()) {
            g.expect(false, name + ": fixed configuration failed: " + *candidate.error);
            continue;
        }
        mape_of[i] = candidate.metrics.mape;
        g.expect(std::abs(candidate.metrics.mape - row.mape) <= 0.5 * row.mape,
                 name + ": MAPE " + std::to_string(candidate.metrics.mape) +
                     " outside +-50% of " + std::to_string(row.mape));
    }
    for (int i = 0; i < 6; ++i) {
        if (i != 0) {
            g.expect(mape_of[0] < mape_of[i], "Qatar is not the most accurate country");
        }
        if (i != 1) {
            g.expect(mape_of[1] > mape_of[i], "Bahrain is not the least accurate country");
        }
    }
}

// --- criterion 8: round-trip identity and byte-stable CLI -------------------

void criterion_roundtrip_determinism(Gate& g) {
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> length(5, 60);
    std::uniform_int_distribution<int> order(0, 3);
    std::uniform_int_distribution<int> count(0, 100000);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = length(rng);
        const int d = std::min(order(rng), n - 1);
        std::vector<double> values(static_cast<std::size_t>(n));
        for (auto& v : values) {
            v = static_cast<double>(count(rng));
        }
        const TimeSeries series = make_series(values);
        const TimeSeries round = casecast::integrate(casecast::difference(series, d));
        g.expect(round.values == series.values && round.start_date == series.start_date,
                 "round trip " + std::to_string(trial) + " (n=" + std::to_string(n) +
                     ", d=" + std::to_string(d) + ") is not exact");
        if (!g.ok) {
            return;
        }
    }

    const std::string input = std::string(CASECAST_DATA_DIR) + "/confirmed_cases.csv";
    test_support::TempDir tmp("gate");
    const std::string base = std::string(CASECAST_CLI_PATH) + " evaluate --input '" + input +
                             "' --country Qatar --plot --out ";
    const auto first = test_support::run_command(base + (tmp.path() / "r1").string(), tmp.path());
    const auto second = test_support::run_command(base + (tmp.path() / "r2").string(), tmp.path());
    g.expect(first.exit_code == 0, "first evaluation exited " + std::to_string(first.exit_code));
    g.expect(second.exit_code == 0,
             "second evaluation exited " + std::to_string(second.exit_code));
    for (const char* name : {"report.json", "report.csv", "curves.csv", "chart.svg"}) {
        g.expect(test_support::read_file(tmp.path() / "r1" / name) ==
                     test_support::read_file(tmp.path() / "r2" / name),
                 std::string(name) + " differs between identical runs");
    }

    const std::string forecast_base = std::string(CASECAST_CLI_PATH) + " forecast --input '" +
                                      input +
                                      "' --country 'United Arab Emirates' --model arima" +
                                      " --order 2,2,2 --horizon 30 --out ";
    const auto fc1 = test_support::run_command(forecast_base + (tmp.path() / "f1").string(),
                                               tmp.path());
    const auto fc2 = test_support::run_command(forecast_base + (tmp.path() / "f2").string(),
                                               tmp.path());
    g.expect(fc1.exit_code == 0 && fc2.exit_code == 0, "forecast runs did not exit cleanly");
    for (const char* name : {"forecast.csv", "model.json"}) {
        g.expect(test_support::read_file(tmp.path() / "f1" / name) ==
                     test_support::read_file(tmp.path() / "f2" / name),
                 std::string(name) + " differs between identical runs");
    }
}

struct Criterion {
    int id;
    const char* label;
    void (*run)(Gate&);
};

const Criterion kCriteria[] = {
    {1, "hand-checkable smoothing recursions", &criterion_hand_recursions},
    {2, "damped recursion with phi=1 matches the undamped model bit for bit",
     &criterion_damped_identity},
    {3, "error metrics match hand values and scaling laws", &criterion_metrics},
    {4, "AR(1)/MA(1) coefficients recovered on synthetic series",
     &criterion_parameter_recovery},
    {5, "unit-root test agrees with the independent regression oracle", &criterion_unit_root},
    {6, "grid searches match an independent exhaustive enumeration",
     &criterion_grid_equivalence},
    {7, "bundled dataset: split, selected weights, and accuracy targets",
     &criterion_bundled_dataset},
    {8, "round-trip identities and byte-stable command-line output",
     &criterion_roundtrip_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int requested = 0;
    if (argc > 1) {
        requested = std::atoi(argv[1]);
        if (requested < 1 || requested > 8) {
            std::cerr << "usage: " << argv[0] << " [criterion 1-8]\n";
            return 2;
        }
    }

    bool all_ok = true;
    for (const Criterion& criterion : kCriteria) {
        if (requested != 0 && criterion.id != requested) {
            continue;
        }
        Gate gate;
        const auto started = std::chrono::steady_clock::now();
        try {
            criterion.run(gate);
        } catch (const std::exception& e) {
            gate.expect(false, std::string("unhandled exception: ") + e.what());
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        std::cout << "criterion " << criterion.id << ": " << (gate.ok ? "PASS" : "FAIL")
                  << " — " << criterion.label << " (" << elapsed << " ms)\n";
        for (const std::string& detail : gate.details) {
            std::cerr << "  detail: " << detail << '\n';
        }
        all_ok = all_ok && gate.ok;
    }
    return all_ok ? 0 : 1;
}
