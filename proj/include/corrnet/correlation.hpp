#pragma once

#include "corrnet/error.hpp"
#include "corrnet/timeseries.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <exception>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace corrnet {

/// Half-open range [start, end) of return columns.
struct Window {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    bool operator==(const Window&) const = default;
};

/// Symmetric, unit-diagonal matrix of Pearson coefficients over one window.
struct CorrelationMatrix {
    std::vector<std::string> symbols;
    Eigen::MatrixXd values;
    Window window;

    std::size_t size() const noexcept { return symbols.size(); }
    std::size_t window_length() const noexcept { return window.length(); }
};

/// Date-indexed observable, one value per window position.
template <typename T>
struct RollingSeries {
    std::vector<Date> dates;
    std::vector<T> values;

    std::size_t size() const noexcept { return dates.size(); }
};

/// Pearson coefficient with population moments, clamped to [-1, 1].
/// Throws DataError if either sequence has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Correlation matrix of the return columns in `window`.
CorrelationMatrix correlation_matrix(const ReturnMatrix& returns, Window window);

/// Full-sample correlation matrix.
inline CorrelationMatrix correlation_matrix(const ReturnMatrix& returns) {
    return correlation_matrix(returns, Window{0, returns.num_observations()});
}

/// Arithmetic mean of the upper-triangle coefficients.
double mean_correlation(const CorrelationMatrix& c);

/// Population variance of the upper-triangle coefficients.
double correlation_variance(const CorrelationMatrix& c);

/// Window ends visited by a rolling analysis: window_length, window_length + step, ..., <= T.
std::vector<std::size_t> rolling_window_ends(std::size_t num_observations, std::size_t window_length,
                                             std::size_t step);

/// Runs `fn(i)` for every i in [0, count), spreading the indices over up to
/// `threads` workers. Each index is evaluated by exactly one worker, so
/// results stored per index do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += threads) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Slides a window of `window_length` returns over the data in steps of
/// `step` and applies `observable` to each window's correlation matrix.
/// Values are indexed by the date of the last return in the window.
template <typename Observable>
auto rolling_apply(const ReturnMatrix& returns, std::size_t window_length, std::size_t step,
                   Observable&& observable, unsigned threads = 1)
    -> RollingSeries<std::decay_t<std::invoke_result_t<Observable&, const CorrelationMatrix&>>> {
    using Value = std::decay_t<std::invoke_result_t<Observable&, const CorrelationMatrix&>>;
    const auto ends = rolling_window_ends(returns.num_observations(), window_length, step);

    RollingSeries<Value> series;
    series.dates.reserve(ends.size());
    for (auto end : ends) series.dates.push_back(returns.dates[end - 1]);
    series.values.resize(ends.size());

    parallel_for(ends.size(), threads, [&](std::size_t k) {
        const auto c = correlation_matrix(returns, Window{ends[k] - window_length, ends[k]});
        series.values[k] = observable(c);
    });
    return series;
}

/// Pearson coefficient between two scalar series sampled on identical dates.
double series_correlation(const RollingSeries<double>& a, const RollingSeries<double>& b);

}  // namespace corrnet
