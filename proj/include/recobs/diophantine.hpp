#ifndef RECOBS_DIOPHANTINE_HPP
#define RECOBS_DIOPHANTINE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace recobs {

struct Convergent {
    std::int64_t p = 0;
    std::int64_t q = 1;
};

// A rotation amount together with its continued-fraction convergents.
// The golden-mean constructor derives convergents from the exact all-ones
// continued fraction (consecutive Fibonacci ratios); arbitrary values take
// a caller-supplied list, which sidesteps the instability of expanding a
// continued fraction from a rounded double.
class RotationNumber {
public:
    static RotationNumber golden_mean(std::int64_t q_max = 1'000'000);
    static RotationNumber from_convergents(double value, std::vector<Convergent> convergents,
                                           std::string tag);

    double value() const { return value_; }
    const std::string& tag() const { return tag_; }
    const std::vector<Convergent>& convergents() const { return convergents_; }

private:
    RotationNumber(double value, std::vector<Convergent> convergents, std::string tag);

    double value_;
    std::vector<Convergent> convergents_;
    std::string tag_;
};

// Distance from t to the nearest integer, in [0, 1/2].
double circle_norm(double t);

// Approximation exponent estimate: the regression slope of -log|alpha - p/q|
// against log q over the convergents with q <= q_max, minus one, clamped
// below at 1 (Dirichlet). A lower estimate, honest about q_max truncation:
// convergents are the best rational approximations, and the slope reads off
// the exponent they realize.
double approx_exponent(const RotationNumber& alpha, std::int64_t q_max);

// Smallest K <= q_max with ||k alpha|| >= k^-(1+eps) for all k in [K, q_max].
// The bound is only verified up to q_max; throws NotFoundError when every
// K <= q_max fails (alpha too well approximable at this eps / q_max).
std::int64_t k0_scan(const RotationNumber& alpha, double eps, std::int64_t q_max);

// inf{ q > k0 : ||q alpha|| <= n^-(1+eps) } by direct scan. Checks the
// lower bound m >= n and throws InvariantError on violation (a bad k0).
std::int64_t m_n_eps(const RotationNumber& alpha, std::int64_t n, double eps,
                     std::int64_t k0);

}  // namespace recobs

#endif
