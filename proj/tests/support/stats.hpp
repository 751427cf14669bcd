#pragma once

// Small statistical helpers for the test suites: summary statistics,
// Kolmogorov-Smirnov and chi-square checks, total variation distance.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace teststat {

inline double mean(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
    double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

inline double std_error(const std::vector<double>& xs) {
    return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

// One-sample KS statistic against a CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Asymptotic critical value at level 0.01.
inline double ks_critical_01(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

inline double exp1_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

// Pearson chi-square statistic for observed counts against probabilities.
inline double chi_square(const std::vector<std::int64_t>& observed,
                         const std::vector<double>& probs) {
    if (observed.size() != probs.size()) throw std::invalid_argument("chi_square size mismatch");
    std::int64_t total = std::accumulate(observed.begin(), observed.end(), std::int64_t{0});
    double stat = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0.0) continue;
        double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

// 99th percentile of chi-square by degrees of freedom (1-based index).
inline double chi_square_critical_01(int dof) {
    static const double table[] = {0.0,     6.63490, 9.21034, 11.34487, 13.27670,
                                   15.0863, 16.8119, 18.4753, 20.0902,  21.6660};
    if (dof < 1 || dof > 9) throw std::invalid_argument("chi-square dof out of table");
    return table[dof];
}

inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
    return 0.5 * d;
}

inline std::vector<double> frequencies(const std::vector<std::int64_t>& counts) {
    double total = static_cast<double>(
        std::accumulate(counts.begin(), counts.end(), std::int64_t{0}));
    std::vector<double> f(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) f[i] = static_cast<double>(counts[i]) / total;
    return f;
}

}  // namespace teststat
