#include "casecast/series.hpp"

#include <cmath>
#include <string>

#include "casecast/error.hpp"

namespace casecast {

DifferencedSeries difference(const TimeSeries& series, int d) {
    if (d < 0) {
        throw Error(errc::invalid_argument, "differencing order must be non-negative");
    }
    if (static_cast<std::size_t>(d) >= series.size()) {
        throw Error(errc::insufficient_data,
                    "cannot difference " + std::to_string(series.size()) + " observations " +
                        std::to_string(d) + " times");
    }
    DifferencedSeries out;
    out.order = d;
    out.start_date = series.start_date;
    out.values = series.values;
    out.head_values.reserve(static_cast<std::size_t>(d));
    for (int round = 0; round < d; ++round) {
        out.head_values.push_back(out.values.front());
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
            out.values[i] = out.values[i + 1] - out.values[i];
        }
        out.values.pop_back();
    }
    return out;
}

TimeSeries integrate(const DifferencedSeries& diff) {
    if (diff.head_values.size() != static_cast<std::size_t>(diff.order)) {
        throw Error(errc::structural_error,
                    "head_values has " + std::to_string(diff.head_values.size()) +
                        " entries but differencing order is " + std::to_string(diff.order));
    }
    std::vector<double> values = diff.values;
    for (int level = diff.order - 1; level >= 0; --level) {
        double acc = diff.head_values[static_cast<std::size_t>(level)];
        values.insert(values.begin(), acc);
        for (std::size_t i = 1; i < values.size(); ++i) {
            acc += values[i];
            values[i] = acc;
        }
    }
    return TimeSeries{diff.start_date, std::move(values)};
}

std::vector<double> integrate_forecast(const std::vector<double>& level_tails,
                                       const std::vector<double>& differenced_forecasts) {
    std::vector<double> state = level_tails;
    std::vector<double> out;
    out.reserve(differenced_forecasts.size());
    for (double forecast : differenced_forecasts) {
        double carry = forecast;
        for (std::size_t level = state.size(); level-- > 0;) {
            state[level] += carry;
            carry = state[level];
        }
        out.push_back(carry);
    }
    return out;
}

std::vector<double> integration_tails(const TimeSeries& series, int d) {
    if (static_cast<std::size_t>(d) >= series.size()) {
        throw Error(errc::insufficient_data, "series too short for integration tails");
    }
    std::vector<double> tails;
    tails.reserve(static_cast<std::size_t>(d));
    std::vector<double> work = series.values;
    for (int level = 0; level < d; ++level) {
        tails.push_back(work.back());
        for (std::size_t i = 0; i + 1 < work.size(); ++i) {
            work[i] = work[i + 1] - work[i];
        }
        work.pop_back();
    }
    return tails;
}

SplitPair split(const TimeSeries& series, double train_fraction) {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
        throw Error(errc::invalid_argument, "train fraction must lie strictly between 0 and 1");
    }
    const auto n = series.size();
    // The small nudge keeps exact products like 0.7 * 10 from flooring to 6.
    const auto train_len =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 1e-9));
    if (train_len == 0 || train_len >= n) {
        throw Error(errc::insufficient_data,
                    "split of " + std::to_string(n) + " observations at fraction " +
                        std::to_string(train_fraction) + " leaves an empty part");
    }
    SplitPair pair;
    pair.train.start_date = series.start_date;
    pair.train.values.assign(series.values.begin(),
                             series.values.begin() + static_cast<std::ptrdiff_t>(train_len));
    pair.validation.start_date = series.start_date + std::chrono::days(static_cast<int>(train_len));
    pair.validation.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(train_len),
                                  series.values.end());
    return pair;
}

}  // namespace casecast
