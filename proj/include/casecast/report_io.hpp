#ifndef CASECAST_REPORT_IO_HPP
#define CASECAST_REPORT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "casecast/arima.hpp"
#include "casecast/evaluation.hpp"
#include "casecast/series.hpp"
#include "casecast/smoothing.hpp"

namespace casecast {

/// Model documents with a fixed field order, so identical models always
/// serialize to identical bytes.
std::string arima_to_json(const ArimaModel& model);
std::string smoothing_to_json(const SmoothingModel& model);

/// Full report document: country, selection metric, every candidate with its
/// scores (full precision), and the selected index.
std::string report_to_json(const EvaluationReport& report);

/// Selected-model summary row, columns country,model,rmse,mape with numbers
/// fixed at four decimals.
void write_report_csv(const EvaluationReport& report, std::ostream& out);

/// One summary row per report (the multi-country table analogue).
void write_table_csv(const std::vector<EvaluationReport>& reports, std::ostream& out);

/// Plot-ready data behind the report figures: date,actual,forecast,segment
/// rows covering train then validation; the forecast column is empty for
/// train rows.
void write_curves_csv(const SplitPair& split, const TimeSeries& forecast, std::ostream& out);

/// Future-forecast rows: date,forecast.
void write_forecast_csv(const TimeSeries& forecast, std::ostream& out);

/// Dependency-free static SVG line chart of the curves data: actual train,
/// actual validation, and forecast.
void write_svg_chart(const SplitPair& split, const TimeSeries& forecast, const std::string& title,
                     std::ostream& out);

/// Fixed four-decimal formatting used by every CSV number column.
std::string format_fixed4(double value);

}  // namespace casecast

#endif  // CASECAST_REPORT_IO_HPP
