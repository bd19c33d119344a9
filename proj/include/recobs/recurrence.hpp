#ifndef RECOBS_RECURRENCE_HPP
#define RECOBS_RECURRENCE_HPP

#include <cstdint>
#include <vector>

#include "recobs/dynamics.hpp"
#include "recobs/observables.hpp"

namespace recobs {

// Return times of one observed orbit over a decreasing radius grid, at a
// fixed non-instantaneity p. tau[i] is the smallest k in (p, H] whose
// observed value lands strictly inside the open ball B(f(x), radii[i]),
// or kCensored when the horizon ran out first.
struct ReturnTimeProfile {
    static constexpr std::int64_t kCensored = -1;

    std::int64_t p = 0;
    std::vector<double> radii;       // strictly decreasing, positive
    std::vector<std::int64_t> tau;   // same length; > p or kCensored
    std::int64_t horizon = 0;

    bool censored(std::size_t i) const { return tau[i] == kCensored; }
    std::size_t uncensored_count() const;
    double censor_fraction() const;
};

// Scaling estimate of log(tau - p) against -log r.
//
// The subtraction of p removes the tau >= p+1 floor, which otherwise
// flattens every profile at radii whose return scale 1/measure(B) is below
// p; with it the estimate is flat in p for mixing systems and the r -> 0
// limit being estimated is unchanged.
struct RateEstimate {
    std::int64_t p = 0;
    double slope = 0.0;    // OLS point estimate
    double lower = 0.0;    // min adjacent-pair slope (liminf proxy)
    double upper = 0.0;    // max adjacent-pair slope (limsup proxy)
    double stderr_ = 0.0;  // OLS slope standard error
    std::size_t n_radii = 0;
    double censor_frac = 0.0;
    bool clamped = false;  // some pair slope was negative and clamped to 0
};

// Per-p estimates plus the p-limit proxy.
struct RecurrenceRateResult {
    std::vector<ReturnTimeProfile> profiles;  // one per schedule entry
    std::vector<RateEstimate> per_p;          // same order as the schedule
    RateEstimate final_estimate;
    bool stabilized = false;  // false -> final is the largest-p estimate
};

// First k in (p, H] with d(f(T^k x), f(x)) < r, or kCensored. Direct scan;
// also serves as the oracle for return_profile.
std::int64_t return_time(const SystemSpec& spec, const Observable& obs,
                         const SystemState& x, double r, std::int64_t p,
                         std::int64_t horizon);

// Whole profile in one orbit traversal: radii are decreasing, so the hit
// set is always a prefix and each step settles every still-unhit radius
// larger than the current distance.
ReturnTimeProfile return_profile(const SystemSpec& spec, const Observable& obs,
                                 const SystemState& x, const std::vector<double>& radii,
                                 std::int64_t p, std::int64_t horizon);

// One traversal serving an increasing p schedule: a hit at step k settles,
// for each radius, every pending p < k.
std::vector<ReturnTimeProfile> return_profiles_schedule(
    const SystemSpec& spec, const Observable& obs, const SystemState& x,
    const std::vector<double>& radii, const std::vector<std::int64_t>& p_schedule,
    std::int64_t horizon);

// Needs at least 3 uncensored radii, else InsufficientDataError.
RateEstimate rate_estimate(const ReturnTimeProfile& profile);

// Estimates along p_schedule plus the stabilization rule: the final estimate
// is taken at the largest p whose slope moved by less than `stab_threshold`
// from the previous p; when no p stabilizes, the largest-p estimate is
// returned with stabilized = false.
RecurrenceRateResult recurrence_rate(const SystemSpec& spec, const Observable& obs,
                                     const SystemState& x, const std::vector<double>& radii,
                                     const std::vector<std::int64_t>& p_schedule,
                                     std::int64_t horizon, double stab_threshold = 0.05);

// Finite-horizon proxy for liminf_n n^(1/a) d(f(x), f(T^n x)):
// the minimum over 1 <= n <= n_max. Non-increasing in n_max.
double boshernitzan_statistic(const SystemSpec& spec, const Observable& obs,
                              const SystemState& x, double alpha_exponent,
                              std::int64_t n_max);

}  // namespace recobs

#endif
