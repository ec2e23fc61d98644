#include "casecast/pipeline.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "casecast/csv.hpp"
#include "casecast/error.hpp"
#include "casecast/report_io.hpp"
#include "casecast/smoothing.hpp"

namespace casecast {

namespace {

namespace fs = std::filesystem;

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw Error(errc::invalid_argument, message);
    }
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out.good()) {
        throw Error(errc::io_error, "failed while writing " + path.string());
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out = open_output(path);
    out << content;
    finish_output(out, path);
}

/// Candidate errors are stored as "<code>: <message>"; for a single fixed
/// configuration the original code is worth surfacing instead of a generic
/// selection failure.
[[noreturn]] void rethrow_candidate_error(const CandidateResult& candidate) {
    const std::string& text = *candidate.error;
    const auto separator = text.find(": ");
    if (separator == std::string::npos) {
        throw Error(errc::evaluation_error, text);
    }
    throw Error(text.substr(0, separator), text.substr(separator + 2));
}

ModelSpec fixed_arima_spec(const RunConfig& config) {
    return ModelSpec{ModelSpec::Family::arima, *config.order, {}};
}

ModelSpec fixed_smoothing_spec(const RunConfig& config, double phi) {
    ModelSpec spec;
    spec.family = phi == 1.0 ? ModelSpec::Family::hlt : ModelSpec::Family::dt;
    spec.smoothing = SmoothingParams{*config.alpha, *config.beta_star, phi};
    return spec;
}

EvaluationReport single_candidate_report(const SplitPair& parts, const ModelSpec& spec,
                                         SelectionMetric metric,
                                         std::vector<ModelSpec>& specs) {
    EvaluationReport report;
    report.selection_metric = metric;
    report.candidates.push_back(evaluate_candidate(parts, spec));
    specs.push_back(spec);
    if (report.candidates.front().error.has_value()) {
        rethrow_candidate_error(report.candidates.front());
    }
    report.selected = 0;
    return report;
}

/// Builds the candidate set the configuration asks for: a single fixed
/// model, a restricted grid, or the full cross-family comparison. `specs`
/// ends up parallel to the returned candidate list.
EvaluationReport plan_candidates(const RunConfig& config, const SplitPair& parts,
                                 std::vector<ModelSpec>& specs) {
    const SelectionMetric metric = config.selection_metric;
    EvaluationReport report;
    switch (config.model) {
        case ModelChoice::auto_select:
            report = select_across_families(parts, metric, &specs);
            break;
        case ModelChoice::arima:
            if (config.order.has_value()) {
                report = single_candidate_report(parts, fixed_arima_spec(config), metric, specs);
            } else {
                report = grid_search_arima(parts, 2, metric, 2, &specs);
            }
            break;
        case ModelChoice::hlt:
            if (config.alpha.has_value()) {
                report = single_candidate_report(parts, fixed_smoothing_spec(config, 1.0), metric,
                                                 specs);
            } else {
                report = grid_search_smoothing(parts, default_phi_grid(), false, metric, &specs);
            }
            break;
        case ModelChoice::dt: {
            const std::vector<double> phis = config.phi.has_value()
                                                 ? std::vector<double>{*config.phi}
                                                 : default_phi_grid();
            if (config.alpha.has_value() && config.phi.has_value()) {
                report = single_candidate_report(parts, fixed_smoothing_spec(config, *config.phi),
                                                 metric, specs);
            } else if (config.alpha.has_value()) {
                // Fixed (alpha, beta*), phi searched over the default grid.
                report.selection_metric = metric;
                for (double phi : phis) {
                    const ModelSpec spec = fixed_smoothing_spec(config, phi);
                    report.candidates.push_back(evaluate_candidate(parts, spec));
                    specs.push_back(spec);
                }
                report.selected = select_best(report.candidates, metric);
            } else {
                report = grid_search_smoothing(parts, phis, true, metric, &specs);
            }
            break;
        }
    }
    report.country = config.country;
    return report;
}

/// Model to use for forecasting: taken verbatim when fully pinned by the
/// configuration, otherwise chosen by the same train/validation evaluation
/// run_evaluate performs.
ModelSpec resolve_forecast_spec(const RunConfig& config, const TimeSeries& series) {
    if (config.model == ModelChoice::arima && config.order.has_value()) {
        return fixed_arima_spec(config);
    }
    if (config.model == ModelChoice::hlt && config.alpha.has_value()) {
        return fixed_smoothing_spec(config, 1.0);
    }
    if (config.model == ModelChoice::dt && config.alpha.has_value() && config.phi.has_value()) {
        return fixed_smoothing_spec(config, *config.phi);
    }
    const SplitPair parts = split(series, config.train_fraction);
    std::vector<ModelSpec> specs;
    const EvaluationReport report = plan_candidates(config, parts, specs);
    return specs.at(report.selected);
}

}  // namespace

void validate_config(const RunConfig& config) {
    require(!config.input_path.empty(), "an input file is required");
    require(!config.country.empty(), "a country name is required");
    require(config.train_fraction > 0.0 && config.train_fraction < 1.0,
            "train fraction must lie strictly between 0 and 1");
    if (config.window_start.has_value() && config.window_end.has_value()) {
        require(*config.window_start <= *config.window_end, "window start is after window end");
    }

    const bool has_smoothing_params =
        config.alpha.has_value() || config.beta_star.has_value() || config.phi.has_value();
    switch (config.model) {
        case ModelChoice::auto_select:
            require(!has_smoothing_params && !config.order.has_value(),
                    "automatic selection accepts no fixed hyperparameters");
            break;
        case ModelChoice::arima:
            require(!has_smoothing_params, "alpha/beta/phi do not apply to an ARIMA model");
            if (config.order.has_value()) {
                require(config.order->p >= 0 && config.order->d >= 0 && config.order->q >= 0,
                        "order components must be non-negative");
            }
            break;
        case ModelChoice::hlt:
            require(!config.order.has_value(), "--order applies only to ARIMA models");
            require(!config.phi.has_value(), "phi applies only to the damped-trend model");
            break;
        case ModelChoice::dt:
            require(!config.order.has_value(), "--order applies only to ARIMA models");
            if (config.phi.has_value()) {
                require(*config.phi > 0.0 && *config.phi <= 1.0, "phi must lie in (0, 1]");
            }
            break;
    }
    if (config.model == ModelChoice::hlt || config.model == ModelChoice::dt) {
        require(config.alpha.has_value() == config.beta_star.has_value(),
                "alpha and beta must be given together");
        if (config.alpha.has_value()) {
            require(*config.alpha >= 0.0 && *config.alpha <= 1.0, "alpha must lie in [0, 1]");
            require(*config.beta_star >= 0.0 && *config.beta_star <= 1.0,
                    "beta must lie in [0, 1]");
        }
    }
}

TimeSeries load_series(const RunConfig& config, std::vector<std::string>* warnings) {
    const RawCaseTable table = parse_case_csv_file(config.input_path);
    if (table.date_header.empty()) {
        throw Error(errc::structural_error, config.input_path + " contains no date columns");
    }
    CountryQuery query;
    query.country_name = config.country;
    query.window_start = config.window_start.value_or(table.date_header.front());
    query.window_end = config.window_end.value_or(table.date_header.back());
    return extract_country(table, query, warnings);
}

EvaluateArtifacts run_evaluate(const RunConfig& config, std::vector<std::string>* warnings) {
    validate_config(config);
    const TimeSeries series = load_series(config, warnings);
    const SplitPair parts = split(series, config.train_fraction);
    std::vector<ModelSpec> specs;
    EvaluationReport report = plan_candidates(config, parts, specs);

    const fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);  // failures surface as io-error on open below

    EvaluateArtifacts artifacts;
    artifacts.report_json = dir / "report.json";
    write_text_file(artifacts.report_json, report_to_json(report));

    artifacts.report_csv = dir / "report.csv";
    {
        std::ofstream out = open_output(artifacts.report_csv);
        write_report_csv(report, out);
        finish_output(out, artifacts.report_csv);
    }

    if (config.emit_plot) {
        const CandidateResult& winner = report.candidates[report.selected];
        artifacts.curves_csv = dir / "curves.csv";
        {
            std::ofstream out = open_output(*artifacts.curves_csv);
            write_curves_csv(parts, winner.forecast, out);
            finish_output(out, *artifacts.curves_csv);
        }
        artifacts.chart_svg = dir / "chart.svg";
        {
            std::ofstream out = open_output(*artifacts.chart_svg);
            write_svg_chart(parts, winner.forecast,
                            report.country + " - " + winner.model_descriptor, out);
            finish_output(out, *artifacts.chart_svg);
        }
    }

    artifacts.report = std::move(report);
    return artifacts;
}

ForecastArtifacts run_forecast(const RunConfig& config, int horizon,
                               std::vector<std::string>* warnings) {
    validate_config(config);
    require(horizon >= 1, "horizon must be at least 1");
    const TimeSeries series = load_series(config, warnings);
    const ModelSpec spec = resolve_forecast_spec(config, series);

    TimeSeries train_window;
    if (config.fit_on_train_only) {
        train_window = split(series, config.train_fraction).train;
    }
    const TimeSeries& fit_window = config.fit_on_train_only ? train_window : series;

    ForecastArtifacts artifacts;
    std::string model_json;
    if (spec.family == ModelSpec::Family::arima) {
        const ArimaModel model = fit_arima(fit_window, spec.order);
        artifacts.forecast = forecast(model, horizon);
        artifacts.model_descriptor = describe(model.order);
        model_json = arima_to_json(model);
    } else {
        const SmoothingModel model = fit_smoothing(fit_window, spec.smoothing);
        artifacts.forecast = forecast_smoothing(model, horizon);
        artifacts.model_descriptor = describe(model.params);
        model_json = smoothing_to_json(model);
    }

    const fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    artifacts.forecast_csv = dir / "forecast.csv";
    {
        std::ofstream out = open_output(artifacts.forecast_csv);
        write_forecast_csv(artifacts.forecast, out);
        finish_output(out, artifacts.forecast_csv);
    }
    artifacts.model_json = dir / "model.json";
    write_text_file(artifacts.model_json, model_json);
    return artifacts;
}

std::filesystem::path run_report(const std::vector<std::string>& report_paths,
                                 const std::string& output_dir) {
    if (report_paths.empty()) {
        throw Error(errc::invalid_argument, "at least one report.json path is required");
    }
    std::vector<EvaluationReport> reports;
    reports.reserve(report_paths.size());
    for (const auto& path : report_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw Error(errc::io_error, "cannot open " + path);
        }
        nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
        if (doc.is_discarded()) {
            throw Error(errc::parse_error, path + " is not valid JSON");
        }
        try {
            EvaluationReport summary;
            summary.country = doc.at("country").get<std::string>();
            const auto selected = doc.at("selected").get<std::size_t>();
            const auto& entry = doc.at("candidates").at(selected);
            CandidateResult candidate;
            candidate.model_descriptor = entry.at("model").get<std::string>();
            candidate.metrics.rmse = entry.at("rmse").get<double>();
            candidate.metrics.mape = entry.at("mape").get<double>();
            summary.candidates.push_back(std::move(candidate));
            summary.selected = 0;
            reports.push_back(std::move(summary));
        } catch (const nlohmann::json::exception&) {
            throw Error(errc::parse_error, path + " does not look like an evaluation report");
        }
    }

    const fs::path dir = output_dir.empty() ? fs::path(".") : fs::path(output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path table_path = dir / "table.csv";
    std::ofstream out = open_output(table_path);
    write_table_csv(reports, out);
    finish_output(out, table_path);
    return table_path;
}

}  // namespace casecast
