#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace onlinecol::stats {

// One-sided 99% normal quantile.
inline constexpr double kZ99 = 2.3263478740408408;

// Wilson score lower confidence bound for a binomial proportion.
inline double wilson_lower_bound(long long successes, long long trials, double z = kZ99) {
    if (trials <= 0) throw std::invalid_argument("wilson_lower_bound: no trials");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = p + z2 / (2.0 * n);
    double margin = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return (center - margin) / denom;
}

// Pearson chi-square statistic for observed counts against a uniform null.
inline double chi_square_uniform(std::span<const long long> observed) {
    long long total = 0;
    for (long long c : observed) total += c;
    if (observed.empty() || total == 0)
        throw std::invalid_argument("chi_square_uniform: empty sample");
    double expected = static_cast<double>(total) / static_cast<double>(observed.size());
    double stat = 0.0;
    for (long long c : observed) {
        double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

// 99th percentile of chi-square with 63 degrees of freedom (64 cells).
inline constexpr double kChiSquare99Df63 = 92.01;

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Least squares fit y ~ slope * log2(n) + intercept. Needs at least three
// distinct n values to say anything about growth.
inline SlopeFit fit_log_slope(std::span<const std::pair<long long, double>> points) {
    std::vector<double> xs, ys;
    for (auto [n, y] : points) {
        if (n <= 0) throw std::invalid_argument("fit_log_slope: n must be positive");
        xs.push_back(std::log2(static_cast<double>(n)));
        ys.push_back(y);
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_log_slope: need at least 3 distinct n");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    SlopeFit fit;
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / m;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual =
            std::max(fit.max_residual, std::abs(ys[i] - fit.slope * xs[i] - fit.intercept));
    return fit;
}

} // namespace onlinecol::stats
