#include "corrnet/correlation.hpp"

#include <cmath>
#include <limits>

namespace corrnet {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw UsageError("pearson: length mismatch");
    if (x.size() < 2) throw UsageError("pearson: need at least 2 observations");

    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0, scale_x = 0.0, scale_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
        scale_x = std::max(scale_x, std::abs(x[k]));
        scale_y = std::max(scale_y, std::abs(y[k]));
    }
    mx /= n;
    my /= n;

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx;
        const double dy = y[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }

    // A constant series can leave rounding residue of order eps * |x| per term.
    constexpr double tol = 64.0 * std::numeric_limits<double>::epsilon();
    if (sxx <= n * (tol * scale_x) * (tol * scale_x)) throw DataError("pearson: zero variance in first series");
    if (syy <= n * (tol * scale_y) * (tol * scale_y)) throw DataError("pearson: zero variance in second series");

    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const ReturnMatrix& returns, Window window) {
    const auto t = returns.num_observations();
    if (window.start >= window.end || window.end > t) {
        throw UsageError("correlation window [" + std::to_string(window.start) + ", " +
                         std::to_string(window.end) + ") outside data of length " + std::to_string(t));
    }
    if (window.length() < 2) throw UsageError("correlation window shorter than 2 records");

    const auto n = returns.num_series();
    const auto len = static_cast<Eigen::Index>(window.length());
    // Row-major copy so each series slice is contiguous.
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const RowMajor slice = returns.values.middleCols(static_cast<Eigen::Index>(window.start), len);

    CorrelationMatrix c;
    c.symbols = returns.symbols;
    c.window = window;
    c.values = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

    auto row = [&](std::size_t i) {
        return std::span<const double>(slice.row(static_cast<Eigen::Index>(i)).data(),
                                       static_cast<std::size_t>(len));
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double r = 0.0;
            try {
                r = pearson(row(i), row(j));
            } catch (const DataError&) {
                std::string who = returns.symbols[i];
                try {
                    pearson(row(i), row(i));
                    who = returns.symbols[j];
                } catch (const DataError&) {
                }
                throw DataError("series '" + who + "' is constant on window [" +
                                std::to_string(window.start) + ", " + std::to_string(window.end) + ")");
            }
            c.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r;
            c.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = r;
        }
    }
    return c;
}

namespace {

// Upper-triangle coefficients in ascending order. Summing a sorted copy makes
// the averages below independent of the symbol order.
std::vector<double> sorted_upper_triangle(const CorrelationMatrix& c) {
    const auto n = static_cast<Eigen::Index>(c.size());
    if (n < 2) throw UsageError("correlation summaries need at least 2 series");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) v.push_back(c.values(i, j));
    }
    std::sort(v.begin(), v.end());
    return v;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

}  // namespace

double mean_correlation(const CorrelationMatrix& c) { return mean_of(sorted_upper_triangle(c)); }

double correlation_variance(const CorrelationMatrix& c) {
    const auto v = sorted_upper_triangle(c);
    const double mean = mean_of(v);
    double sum = 0.0;
    for (double x : v) sum += (x - mean) * (x - mean);
    return sum / static_cast<double>(v.size());
}

std::vector<std::size_t> rolling_window_ends(std::size_t num_observations, std::size_t window_length,
                                             std::size_t step) {
    if (step < 1) throw UsageError("rolling step must be at least 1");
    if (window_length < 2) throw UsageError("rolling window must be at least 2 records");
    if (window_length > num_observations) {
        throw DataError("window exceeds data: " + std::to_string(window_length) + " > " +
                        std::to_string(num_observations) + " returns");
    }
    std::vector<std::size_t> ends;
    for (auto end = window_length; end <= num_observations; end += step) ends.push_back(end);
    return ends;
}

double series_correlation(const RollingSeries<double>& a, const RollingSeries<double>& b) {
    if (a.dates != b.dates) throw UsageError("series_correlation: series sampled on different dates");
    return pearson(a.values, b.values);
}

}  // namespace corrnet
