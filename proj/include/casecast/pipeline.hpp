#ifndef CASECAST_PIPELINE_HPP
#define CASECAST_PIPELINE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "casecast/arima.hpp"
#include "casecast/date.hpp"
#include "casecast/evaluation.hpp"
#include "casecast/series.hpp"

namespace casecast {

/// Model family requested on the command line. auto_select compares every
/// family's grid and keeps the global best.
enum class ModelChoice { auto_select, arima, hlt, dt };

/// One invocation's worth of settings, validated up front before any file or
/// numeric work happens.
struct RunConfig {
    std::string input_path;
    std::string country;
    std::optional<Date> window_start;  // defaults to the file's first date
    std::optional<Date> window_end;    // defaults to the file's last date
    double train_fraction = 0.7;
    ModelChoice model = ModelChoice::auto_select;
    // Fixed hyperparameters; which ones are legal depends on `model`.
    std::optional<double> alpha;
    std::optional<double> beta_star;
    std::optional<double> phi;
    std::optional<ArimaOrder> order;
    SelectionMetric selection_metric = SelectionMetric::validation_rmse;
    std::string output_dir = ".";
    bool emit_plot = false;
    // Forecast mode only: fit on the training split instead of the full
    // window, so the output reproduces the evaluation forecast byte for byte.
    bool fit_on_train_only = false;
};

/// Throws Error(invalid-argument) when fields are out of range or the fixed
/// hyperparameters do not belong to the chosen model family.
void validate_config(const RunConfig& config);

/// Cumulative series for the configured country and window.
TimeSeries load_series(const RunConfig& config, std::vector<std::string>* warnings = nullptr);

/// What run_evaluate wrote and where.
struct EvaluateArtifacts {
    EvaluationReport report;
    std::filesystem::path report_json;
    std::filesystem::path report_csv;
    std::optional<std::filesystem::path> curves_csv;
    std::optional<std::filesystem::path> chart_svg;
};

/// Splits the series, evaluates the configured candidate set, and writes
/// report.json plus report.csv (and curves.csv plus chart.svg when
/// emit_plot) into output_dir.
EvaluateArtifacts run_evaluate(const RunConfig& config,
                               std::vector<std::string>* warnings = nullptr);

/// What run_forecast wrote and where.
struct ForecastArtifacts {
    TimeSeries forecast;
    std::string model_descriptor;
    std::filesystem::path forecast_csv;
    std::filesystem::path model_json;
};

/// Resolves the model (fixed hyperparameters directly; otherwise the same
/// grid selection as run_evaluate on the train/validation split), refits it
/// on the full window (or the training split with fit_on_train_only), and
/// writes forecast.csv plus model.json into output_dir.
ForecastArtifacts run_forecast(const RunConfig& config, int horizon,
                               std::vector<std::string>* warnings = nullptr);

/// Merges the selected rows of previously written report.json files into one
/// table.csv (one row per report, Table-style columns) under output_dir.
std::filesystem::path run_report(const std::vector<std::string>& report_paths,
                                 const std::string& output_dir);

}  // namespace casecast

#endif  // CASECAST_PIPELINE_HPP
