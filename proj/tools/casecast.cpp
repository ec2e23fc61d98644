#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casecast/date.hpp"
#include "casecast/error.hpp"
#include "casecast/pipeline.hpp"

namespace {

struct CliOptions {
    std::string input;
    std::string country;
    std::string start;
    std::string end;
    double train_frac = 0.7;
    std::string model = "auto";
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> phi;
    std::string order;
    std::string metric = "validation-rmse";
    std::string out = ".";
    bool plot = false;
    int horizon = 0;
    std::string fit_window = "full";
    std::vector<std::string> reports;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--input", opts.input, "Wide-format cumulative case CSV")->required();
    cmd->add_option("--country", opts.country, "Country/Region value to extract")->required();
    cmd->add_option("--start", opts.start, "First date of the window (YYYY-MM-DD)");
    cmd->add_option("--end", opts.end, "Last date of the window (YYYY-MM-DD)");
    cmd->add_option("--train-frac", opts.train_frac,
                    "Fraction of the window used for fitting (default 0.7)");
    cmd->add_option("--model", opts.model, "Model family (default auto)")
        ->check(CLI::IsMember({"auto", "arima", "hlt", "dt"}));
    cmd->add_option("--alpha", opts.alpha, "Fixed level-smoothing weight in [0,1]");
    cmd->add_option("--beta", opts.beta, "Fixed trend-smoothing weight in [0,1]");
    cmd->add_option("--phi", opts.phi, "Fixed damping parameter in (0,1]");
    cmd->add_option("--order", opts.order, "Fixed ARIMA order as p,d,q");
    cmd->add_option("--selection-metric", opts.metric, "Score that ranks candidates")
        ->check(CLI::IsMember({"validation-rmse", "training-rmse"}));
    cmd->add_option("--out", opts.out, "Output directory (default .)");
}

casecast::ArimaOrder parse_order(const std::string& text) {
    int p = 0;
    int d = 0;
    int q = 0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%d,%d,%d%c", &p, &d, &q, &tail) != 3 || p < 0 || d < 0 ||
        q < 0) {
        throw casecast::Error(casecast::errc::invalid_argument,
                              "--order expects three non-negative integers as p,d,q");
    }
    return casecast::ArimaOrder{p, d, q};
}

casecast::RunConfig build_config(const CliOptions& opts) {
    casecast::RunConfig config;
    config.input_path = opts.input;
    config.country = opts.country;
    if (!opts.start.empty()) {
        config.window_start = casecast::parse_iso(opts.start);
    }
    if (!opts.end.empty()) {
        config.window_end = casecast::parse_iso(opts.end);
    }
    config.train_fraction = opts.train_frac;
    if (opts.model == "auto") {
        config.model = casecast::ModelChoice::auto_select;
    } else if (opts.model == "arima") {
        config.model = casecast::ModelChoice::arima;
    } else if (opts.model == "hlt") {
        config.model = casecast::ModelChoice::hlt;
    } else {
        config.model = casecast::ModelChoice::dt;
    }
    config.alpha = opts.alpha;
    config.beta_star = opts.beta;
    config.phi = opts.phi;
    if (!opts.order.empty()) {
        config.order = parse_order(opts.order);
    }
    config.selection_metric = opts.metric == "training-rmse"
                                  ? casecast::SelectionMetric::training_rmse
                                  : casecast::SelectionMetric::validation_rmse;
    config.output_dir = opts.out;
    config.emit_plot = opts.plot;
    config.fit_on_train_only = opts.fit_window == "train";
    return config;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& warning : warnings) {
        std::cerr << nlohmann::json{{"warning", warning}}.dump() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cumulative case-count forecasting with ARIMA and trend smoothing"};
    app.require_subcommand(1);
    CliOptions opts;

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Fit candidates on the training split and score them on the validation split");
    add_common_options(evaluate, opts);
    evaluate->add_flag("--plot", opts.plot, "Also write curves.csv and chart.svg");

    CLI::App* forecast = app.add_subcommand(
        "forecast", "Fit on the full window and forecast future dates");
    add_common_options(forecast, opts);
    forecast->add_option("--horizon", opts.horizon, "Number of days to forecast")->required();
    forecast
        ->add_option("--fit-window", opts.fit_window,
                     "Fit on the full window or the training split only (default full)")
        ->check(CLI::IsMember({"full", "train"}));

    CLI::App* report = app.add_subcommand(
        "report", "Merge report.json files into one comparison table");
    report->add_option("reports", opts.reports, "report.json files to merge")->required();
    report->add_option("--out", opts.out, "Output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << nlohmann::json{{"error", "usage-error"}, {"message", e.what()}}.dump()
                  << '\n';
        return 1;
    }

    std::vector<std::string> warnings;
    try {
        if (app.got_subcommand(evaluate)) {
            const casecast::EvaluateArtifacts artifacts =
                casecast::run_evaluate(build_config(opts), &warnings);
            print_warnings(warnings);
            const casecast::CandidateResult& winner =
                artifacts.report.candidates[artifacts.report.selected];
            std::cout << "selected " << winner.model_descriptor << '\n';
            std::cout << "wrote " << artifacts.report_json.string() << '\n';
            std::cout << "wrote " << artifacts.report_csv.string() << '\n';
            if (artifacts.curves_csv.has_value()) {
                std::cout << "wrote " << artifacts.curves_csv->string() << '\n';
            }
            if (artifacts.chart_svg.has_value()) {
                std::cout << "wrote " << artifacts.chart_svg->string() << '\n';
            }
        } else if (app.got_subcommand(forecast)) {
            const casecast::ForecastArtifacts artifacts =
                casecast::run_forecast(build_config(opts), opts.horizon, &warnings);
            print_warnings(warnings);
            std::cout << "model " << artifacts.model_descriptor << '\n';
            std::cout << "wrote " << artifacts.forecast_csv.string() << '\n';
            std::cout << "wrote " << artifacts.model_json.string() << '\n';
        } else {
            const std::filesystem::path table = casecast::run_report(opts.reports, opts.out);
            std::cout << "wrote " << table.string() << '\n';
        }
    } catch (const casecast::Error& e) {
        print_warnings(warnings);
        std::cerr << nlohmann::json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
        return e.code() == casecast::errc::country_not_found ? 2 : 1;
    } catch (const std::exception& e) {
        print_warnings(warnings);
        std::cerr << nlohmann::json{{"error", "internal-error"}, {"message", e.what()}}.dump()
                  << '\n';
        return 1;
    }
    return 0;
}
