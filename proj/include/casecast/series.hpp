#ifndef CASECAST_SERIES_HPP
#define CASECAST_SERIES_HPP

#include <cstddef>
#include <vector>

#include "casecast/date.hpp"

namespace casecast {

/// Daily observations of a cumulative count, anchored at a start date.
/// Values are stored as reals because differenced series and forecasts are
/// real-valued even when the raw counts are integers.
struct TimeSeries {
    Date start_date{};
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    /// Date of the i-th observation.
    Date date_at(std::size_t i) const { return start_date + std::chrono::days(static_cast<int>(i)); }

    /// Date of the last observation. Requires a non-empty series.
    Date end_date() const { return date_at(values.size() - 1); }
};

/// Result of applying first-differencing `order` times. head_values holds the
/// first value of each intermediate series, outermost first, so the original
/// series can be reconstructed exactly.
struct DifferencedSeries {
    int order = 0;
    std::vector<double> head_values;
    std::vector<double> values;
    Date start_date{};  // start date of the original (undifferenced) series

    /// Length of the original series this was derived from.
    std::size_t original_size() const { return values.size() + static_cast<std::size_t>(order); }
};

/// Chronological train/validation partition of a series.
struct SplitPair {
    TimeSeries train;
    TimeSeries validation;
};

/// Applies first-differencing d times. Throws Error(insufficient-data) when
/// d >= length(series).
DifferencedSeries difference(const TimeSeries& series, int d);

/// Exact inverse of difference(). Throws Error(structural-error) when
/// head_values does not hold exactly `order` values.
TimeSeries integrate(const DifferencedSeries& diff);

/// Forecast-mode integration: cumulates new order-d differenced values onto
/// the last known state of a series. `level_tails[i]` is the last value of the
/// i-times-differenced series, for i = 0..d-1. Returns the values on the
/// original (cumulative) scale.
std::vector<double> integrate_forecast(const std::vector<double>& level_tails,
                                       const std::vector<double>& differenced_forecasts);

/// Last value of each differencing level 0..d-1, as consumed by
/// integrate_forecast.
std::vector<double> integration_tails(const TimeSeries& series, int d);

/// Splits chronologically: train gets floor(train_fraction * n) observations,
/// validation the rest. Throws Error(invalid-argument) for a fraction outside
/// (0,1) and Error(insufficient-data) when either side would be empty.
SplitPair split(const TimeSeries& series, double train_fraction);

}  // namespace casecast

#endif  // CASECAST_SERIES_HPP
