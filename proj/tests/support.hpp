#ifndef RECOBS_TESTS_SUPPORT_HPP
#define RECOBS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

// Critical value at the 1% level for the two-sample statistic.
inline double ks_two_sample_crit_1pct(std::size_t n, std::size_t m) {
    return 1.628 * std::sqrt(static_cast<double>(n + m) /
                             (static_cast<double>(n) * static_cast<double>(m)));
}

// One-sample statistic against the uniform CDF on [0,1).
inline double ks_uniform01(std::vector<double> a) {
    std::sort(a.begin(), a.end());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double lo = static_cast<double>(i) / static_cast<double>(a.size());
        double hi = static_cast<double>(i + 1) / static_cast<double>(a.size());
        d = std::max(d, std::fabs(a[i] - lo));
        d = std::max(d, std::fabs(a[i] - hi));
    }
    return d;
}

inline double ks_one_sample_crit_1pct(std::size_t n) {
    return 1.628 / std::sqrt(static_cast<double>(n));
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double stddev_of(const std::vector<double>& v) {
    double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace testing

#endif
