#ifndef RECOBS_VECN_HPP
#define RECOBS_VECN_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "recobs/errors.hpp"

namespace recobs {

// Observation values live in R^N with N <= 3.
inline constexpr int kMaxObsDim = 3;

struct VecN {
    std::array<double, kMaxObsDim> c{0.0, 0.0, 0.0};
    int n = 0;

    VecN() = default;
    explicit VecN(double x) : c{x, 0.0, 0.0}, n(1) {}
    VecN(double x, double y) : c{x, y, 0.0}, n(2) {}
    VecN(double x, double y, double z) : c{x, y, z}, n(3) {}

    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
};

inline bool operator==(const VecN& a, const VecN& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
        if (a.c[static_cast<std::size_t>(i)] != b.c[static_cast<std::size_t>(i)]) return false;
    return true;
}

enum class MetricKind { euclidean, torus };

// Distance on the 1-torus with unit circumference.
inline double torus_dist(double a, double b) {
    double d = std::fabs(a - b);
    return d <= 0.5 ? d : 1.0 - d;
}

inline double euclidean_dist(const VecN& a, const VecN& b) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Metric on observation space. Torus metric is only defined for N = 1.
inline double metric_dist(MetricKind m, const VecN& a, const VecN& b) {
    if (a.n != b.n) throw ArgumentError("metric_dist: dimension mismatch");
    if (m == MetricKind::torus) {
        if (a.n != 1) throw ArgumentError("torus metric requires N = 1");
        return torus_dist(a[0], b[0]);
    }
    return euclidean_dist(a, b);
}

// Reduce into [0,1). Floor subtraction, then a clamp for the case where
// rounding lands exactly on 1.
inline double wrap01(double x) {
    double y = x - std::floor(x);
    return (y >= 1.0 || y < 0.0) ? 0.0 : y;
}

}  // namespace recobs

#endif
