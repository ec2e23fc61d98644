#include "casecast/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

namespace casecast {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json series_to_json(const TimeSeries& series) {
    ordered_json doc;
    doc["start"] = format_iso(series.start_date);
    doc["values"] = series.values;
    return doc;
}

const char* metric_name(SelectionMetric metric) {
    return metric == SelectionMetric::validation_rmse ? "validation_rmse" : "training_rmse";
}

struct ChartSeries {
    const std::vector<double>* values;
    std::size_t offset;  // days from chart origin
    const char* color;
    const char* label;
};

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string arima_to_json(const ArimaModel& model) {
    ordered_json doc;
    doc["order"] = {model.order.p, model.order.d, model.order.q};
    doc["intercept"] = model.intercept;
    doc["ar"] = model.ar_coefficients;
    doc["ma"] = model.ma_coefficients;
    doc["head"] = model.head_values;
    ordered_json tail;
    tail["values"] = model.tail_values;
    tail["residuals"] = model.tail_residuals;
    tail["integration"] = model.level_tails;
    doc["tail"] = tail;
    return doc.dump();
}

std::string smoothing_to_json(const SmoothingModel& model) {
    ordered_json doc;
    doc["alpha"] = model.params.alpha;
    doc["beta_star"] = model.params.beta_star;
    doc["phi"] = model.params.phi;
    doc["level"] = model.level;
    doc["trend"] = model.trend;
    return doc.dump();
}

std::string report_to_json(const EvaluationReport& report) {
    ordered_json doc;
    doc["country"] = report.country;
    doc["selection_metric"] = metric_name(report.selection_metric);
    doc["selected"] = report.selected;
    doc["selected_model"] = report.candidates[report.selected].model_descriptor;
    ordered_json candidates = ordered_json::array();
    for (const auto& candidate : report.candidates) {
        ordered_json entry;
        entry["model"] = candidate.model_descriptor;
        if (candidate.error.has_value()) {
            entry["error"] = *candidate.error;
        } else {
            entry["rmse"] = candidate.metrics.rmse;
            entry["mape"] = candidate.metrics.mape;
            entry["training_rmse"] = candidate.training_rmse;
            entry["forecast"] = series_to_json(candidate.forecast);
        }
        candidates.push_back(std::move(entry));
    }
    doc["candidates"] = std::move(candidates);
    return doc.dump(2);
}

std::string format_fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

void write_report_csv(const EvaluationReport& report, std::ostream& out) {
    out << "country,model,rmse,mape\n";
    const auto& selected = report.candidates[report.selected];
    out << report.country << ',' << selected.model_descriptor << ','
        << format_fixed4(selected.metrics.rmse) << ',' << format_fixed4(selected.metrics.mape)
        << '\n';
}

void write_table_csv(const std::vector<EvaluationReport>& reports, std::ostream& out) {
    out << "country,model,rmse,mape\n";
    for (const auto& report : reports) {
        const auto& selected = report.candidates[report.selected];
        out << report.country << ',' << selected.model_descriptor << ','
            << format_fixed4(selected.metrics.rmse) << ','
            << format_fixed4(selected.metrics.mape) << '\n';
    }
}

void write_curves_csv(const SplitPair& split, const TimeSeries& forecast, std::ostream& out) {
    out << "date,actual,forecast,segment\n";
    for (std::size_t i = 0; i < split.train.size(); ++i) {
        out << format_iso(split.train.date_at(i)) << ',' << format_fixed4(split.train.values[i])
            << ",,train\n";
    }
    for (std::size_t i = 0; i < split.validation.size(); ++i) {
        out << format_iso(split.validation.date_at(i)) << ','
            << format_fixed4(split.validation.values[i]) << ',' << format_fixed4(forecast.values[i])
            << ",validation\n";
    }
}

void write_forecast_csv(const TimeSeries& forecast, std::ostream& out) {
    out << "date,forecast\n";
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        out << format_iso(forecast.date_at(i)) << ',' << format_fixed4(forecast.values[i]) << '\n';
    }
}

void write_svg_chart(const SplitPair& split, const TimeSeries& forecast, const std::string& title,
                     std::ostream& out) {
    constexpr int width = 900;
    constexpr int height = 480;
    constexpr int margin_left = 90;
    constexpr int margin_right = 30;
    constexpr int margin_top = 40;
    constexpr int margin_bottom = 50;
    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;

    const std::size_t total_days = split.train.size() + split.validation.size();
    double lo = split.train.values.front();
    double hi = lo;
    const auto widen = [&](const std::vector<double>& values) {
        for (double v : values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    };
    widen(split.train.values);
    widen(split.validation.values);
    widen(forecast.values);
    if (hi == lo) {
        hi = lo + 1.0;
    }

    const auto x_of = [&](std::size_t day) {
        return margin_left + plot_w * static_cast<double>(day) /
                                 static_cast<double>(total_days > 1 ? total_days - 1 : 1);
    };
    const auto y_of = [&](double value) {
        return margin_top + plot_h * (1.0 - (value - lo) / (hi - lo));
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape_xml(title) << "</text>\n";

    // axes
    out << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\"" << margin_left
        << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double value = lo + (hi - lo) * tick / 4.0;
        const double y = y_of(value);
        out << "<line x1=\"" << margin_left - 4 << "\" y1=\"" << y << "\" x2=\"" << margin_left
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_fixed4(value) << "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const std::size_t day = total_days > 1 ? (total_days - 1) * tick / 4 : 0;
        const double x = x_of(day);
        const Date date = split.train.start_date + std::chrono::days(static_cast<int>(day));
        out << "<line x1=\"" << x << "\" y1=\"" << margin_top + plot_h << "\" x2=\"" << x
            << "\" y2=\"" << margin_top + plot_h + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << margin_top + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_iso(date) << "</text>\n";
    }

    const ChartSeries layers[] = {
        {&split.train.values, 0, "#1f77b4", "train"},
        {&split.validation.values, split.train.size(), "#2ca02c", "actual"},
        {&forecast.values, split.train.size(), "#d62728", "forecast"},
    };
    for (const auto& layer : layers) {
        out << "<polyline fill=\"none\" stroke=\"" << layer.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < layer.values->size(); ++i) {
            if (i != 0) {
                out << ' ';
            }
            out << x_of(layer.offset + i) << ',' << y_of((*layer.values)[i]);
        }
        out << "\"/>\n";
    }
    int legend_y = margin_top + 10;
    for (const auto& layer : layers) {
        out << "<line x1=\"" << width - 150 << "\" y1=\"" << legend_y << "\" x2=\"" << width - 120
            << "\" y2=\"" << legend_y << "\" stroke=\"" << layer.color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - 112 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << layer.label << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

}  // namespace casecast
