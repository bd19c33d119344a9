#include "recobs/diophantine.hpp"

#include <cmath>

#include "recobs/errors.hpp"

namespace recobs {

namespace {

constexpr double kGoldenMean = 0.61803398874989484820458683436564;

}  // namespace

RotationNumber::RotationNumber(double value, std::vector<Convergent> convergents,
                               std::string tag)
    : value_(value), convergents_(std::move(convergents)), tag_(std::move(tag)) {
    if (!(value_ > 0.0 && value_ < 1.0))
        throw ArgumentError("RotationNumber: value must lie in (0,1)");
    for (const auto& c : convergents_) {
        if (c.q < 1) throw ArgumentError("RotationNumber: convergent with q < 1");
        double err = std::fabs(value_ - static_cast<double>(c.p) / static_cast<double>(c.q));
        double bound = 1.0 / (static_cast<double>(c.q) * static_cast<double>(c.q));
        if (err >= bound)
            throw ArgumentError("RotationNumber: " + std::to_string(c.p) + "/" +
                                std::to_string(c.q) + " violates the 1/q^2 convergent bound");
    }
}

RotationNumber RotationNumber::golden_mean(std::int64_t q_max) {
    // All partial quotients of (sqrt(5)-1)/2 are 1, so p_k/q_k are ratios of
    // consecutive Fibonacci numbers.
    std::vector<Convergent> cs;
    std::int64_t p_prev = 1, q_prev = 0;  // h_{-1}, k_{-1} convention
    std::int64_t p = 0, q = 1;            // a_0 = 0
    while (true) {
        std::int64_t p_next = p + p_prev;
        std::int64_t q_next = q + q_prev;
        if (q_next > q_max) break;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        cs.push_back({p, q});
    }
    return RotationNumber(kGoldenMean, std::move(cs), "golden_mean");
}

RotationNumber RotationNumber::from_convergents(double value,
                                                std::vector<Convergent> convergents,
                                                std::string tag) {
    return RotationNumber(value, std::move(convergents), std::move(tag));
}

double circle_norm(double t) {
    double f = std::fabs(t - std::round(t));
    return f > 0.5 ? 0.5 : f;  // round ties keep f <= 0.5 anyway
}

double approx_exponent(const RotationNumber& alpha, std::int64_t q_max) {
    if (q_max < 100) throw ArgumentError("approx_exponent: q_max must be >= 100");
    std::vector<double> lx, ly;
    for (const auto& c : alpha.convergents()) {
        if (c.q > q_max) continue;
        double err =
            std::fabs(alpha.value() - static_cast<double>(c.p) / static_cast<double>(c.q));
        if (!(err > 0.0)) continue;  // exactly representable; no information
        lx.push_back(std::log(static_cast<double>(c.q)));
        ly.push_back(-std::log(err));
    }
    if (lx.empty()) throw ArgumentError("approx_exponent: no usable convergents");
    double delta;
    if (lx.size() == 1) {
        delta = lx[0] > 0.0 ? ly[0] / lx[0] - 1.0 : 1.0;
    } else {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        delta = sxy / sxx - 1.0;
    }
    return delta < 1.0 ? 1.0 : delta;
}

std::int64_t k0_scan(const RotationNumber& alpha, double eps, std::int64_t q_max) {
    if (!(eps > 0.0)) throw ArgumentError("k0_scan: eps must be > 0");
    if (q_max < 1) throw ArgumentError("k0_scan: q_max must be >= 1");
    const double a = alpha.value();
    std::int64_t last_violation = 0;
    for (std::int64_t k = 1; k <= q_max; ++k) {
        double norm = circle_norm(static_cast<double>(k) * a);
        double bound = std::pow(static_cast<double>(k), -(1.0 + eps));
        if (norm < bound) last_violation = k;
    }
    if (last_violation >= q_max)
        throw NotFoundError("k0_scan: no K <= q_max satisfies the bound (alpha too well "
                            "approximable at eps = " +
                            std::to_string(eps) + ")");
    return last_violation + 1;
}

std::int64_t m_n_eps(const RotationNumber& alpha, std::int64_t n, double eps,
                     std::int64_t k0) {
    if (!(eps > 0.0)) throw ArgumentError("m_n_eps: eps must be > 0");
    if (n < k0) throw ArgumentError("m_n_eps: requires n >= k0");
    const double a = alpha.value();
    const double threshold = std::pow(static_cast<double>(n), -(1.0 + eps));
    // Denominators with ||q alpha|| <= t recur with gaps of order 1/t, so a
    // few multiples of n^(1+eps) past k0 suffice for any irrational alpha;
    // when even that window has no hit the scan reports rather than guesses.
    const std::int64_t scan_max =
        k0 +
        4 * static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 + eps))) +
        16;
    // Incremental fractional part: the accumulated error stays ~q*2^-53,
    // orders of magnitude below any threshold reachable at this scale.
    double start = static_cast<double>(k0) * a;
    double frac = start - std::floor(start);
    for (std::int64_t q = k0 + 1; q <= scan_max; ++q) {
        frac += a;
        if (frac >= 1.0) frac -= 1.0;
        double norm = frac > 0.5 ? 1.0 - frac : frac;
        if (norm <= threshold) {
            if (q < n)
                throw InvariantError("m_n_eps: found q = " + std::to_string(q) +
                                     " below n = " + std::to_string(n) +
                                     " (k0 does not validate the bound)");
            return q;
        }
    }
    throw NotFoundError("m_n_eps: no q found within the Dirichlet bound");
}

}  // namespace recobs
