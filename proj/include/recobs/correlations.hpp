#ifndef RECOBS_CORRELATIONS_HPP
#define RECOBS_CORRELATIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "recobs/dynamics.hpp"

namespace recobs {

// Bundled Lipschitz test functions X -> R. They read the "primary" real
// coordinate of a state: x on the interval and on T^2, the fiber y on the
// skew space.
enum class TestFunctionKind { coordinate, cosine };

std::string to_string(TestFunctionKind k);

class TestFunction {
public:
    explicit TestFunction(TestFunctionKind kind);

    TestFunctionKind kind() const { return kind_; }
    // Lipschitz norm: sup|phi| + Lip(phi).
    double norm() const { return sup_ + lip_; }
    double sup() const { return sup_; }

    double operator()(const SystemState& s) const;

private:
    TestFunctionKind kind_;
    double sup_;
    double lip_;
};

struct CorrelationEstimate {
    double value = 0.0;   // |E[phi o T^n . psi] - E[phi] E[psi]|, Monte Carlo
    double stderr_ = 0.0;  // delta-method standard error
};

// Monte Carlo correlation at a single lag over M invariant samples.
CorrelationEstimate correlation(const SystemSpec& spec, const TestFunction& phi,
                                const TestFunction& psi, std::int64_t n, std::size_t M,
                                std::uint64_t seed);

// Correlation estimates over lags 0..n_max with one shared sample set
// (common random numbers), so the profile is smooth in n and deterministic
// in the seed.
struct DecayProfile {
    std::vector<double> c_hat;    // per lag, absolute value
    std::vector<double> stderr_;  // per lag
    std::vector<double> theta_hat;  // c_hat / (norm(phi) * norm(psi))
    std::size_t samples = 0;
    double norm_product = 1.0;

    std::size_t lags() const { return c_hat.size(); }
    // 3x the largest per-lag standard error; lags below it carry no signal.
    double noise_floor() const;
};

DecayProfile decay_profile(const SystemSpec& spec, const TestFunction& phi,
                           const TestFunction& psi, std::int64_t n_max, std::size_t M,
                           std::uint64_t seed);

// Number of leading lags above the noise floor. The usable range is a
// prefix: once a lag drops below the floor its successors are noise as
// well, and an isolated |noise| excursion above the floor at a large lag
// must not re-enter the fit.
std::size_t above_noise_prefix(const DecayProfile& profile);

enum class DecayVerdict { decaying, not_decaying, indeterminate };

std::string to_string(DecayVerdict v);

// Per-exponent verdict on whether c_hat(n) * n^p tends to zero.
//
// The above-noise lags are fitted with two one-parameter trends, exponential
// (log c vs n) and polynomial (log c vs log n), and the better-fitting one
// decides: a significantly negative exponential rate beats every polynomial,
// otherwise the polynomial index beta must exceed p with 95% confidence.
// trend_slope and its CI are reported in log(c_hat n^p) terms: per unit n
// under the exponential model, per unit log n under the polynomial one.
struct SuperpolyVerdict {
    double p = 0.0;
    double trend_slope = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    DecayVerdict verdict = DecayVerdict::indeterminate;
};

std::vector<SuperpolyVerdict> superpoly_check(const DecayProfile& profile,
                                              const std::vector<double>& p_list);

}  // namespace recobs

#endif
