#include "recobs/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace recobs {

namespace {

void check_radii(const std::vector<double>& radii) {
    if (radii.empty()) throw ArgumentError("radius grid is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw ArgumentError("radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw ArgumentError("radii must be strictly decreasing");
    }
}

void check_window(std::int64_t p, std::int64_t horizon) {
    if (p < 0) throw ArgumentError("p must be >= 0");
    if (horizon <= p)
        throw ArgumentError("horizon H = " + std::to_string(horizon) +
                            " must exceed p = " + std::to_string(p));
}

// Simple-regression slope of y on x with standard error.
struct Ols {
    double slope = 0.0;
    double stderr_ = 0.0;
};

Ols ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Ols out;
    out.slope = sxy / sxx;
    if (n > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double resid = y[i] - my - out.slope * (x[i] - mx);
            sse += resid * resid;
        }
        out.stderr_ = std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx);
    }
    return out;
}

}  // namespace

std::size_t ReturnTimeProfile::uncensored_count() const {
    std::size_t n = 0;
    for (auto t : tau)
        if (t != kCensored) ++n;
    return n;
}

double ReturnTimeProfile::censor_fraction() const {
    if (tau.empty()) return 0.0;
    return 1.0 - static_cast<double>(uncensored_count()) / static_cast<double>(tau.size());
}

std::int64_t return_time(const SystemSpec& spec, const Observable& obs,
                         const SystemState& x, double r, std::int64_t p,
                         std::int64_t horizon) {
    if (!(r > 0.0)) throw ArgumentError("return_time: r must be > 0");
    check_window(p, horizon);
    const VecN f0 = obs.evaluate(x);
    SystemState s = x;
    for (std::int64_t k = 1; k <= horizon; ++k) {
        s = step(spec, s);
        if (k <= p) continue;
        if (obs_distance(obs, obs.evaluate(s), f0) < r) return k;
    }
    return ReturnTimeProfile::kCensored;
}

ReturnTimeProfile return_profile(const SystemSpec& spec, const Observable& obs,
                                 const SystemState& x, const std::vector<double>& radii,
                                 std::int64_t p, std::int64_t horizon) {
    check_radii(radii);
    check_window(p, horizon);
    ReturnTimeProfile prof;
    prof.p = p;
    prof.radii = radii;
    prof.tau.assign(radii.size(), ReturnTimeProfile::kCensored);
    prof.horizon = horizon;

    const VecN f0 = obs.evaluate(x);
    SystemState s = x;
    std::size_t next = 0;  // first radius not yet hit
    for (std::int64_t k = 1; k <= horizon && next < radii.size(); ++k) {
        s = step(spec, s);
        if (k <= p) continue;
        double d = obs_distance(obs, obs.evaluate(s), f0);
        while (next < radii.size() && d < radii[next]) prof.tau[next++] = k;
    }
    return prof;
}

std::vector<ReturnTimeProfile> return_profiles_schedule(
    const SystemSpec& spec, const Observable& obs, const SystemState& x,
    const std::vector<double>& radii, const std::vector<std::int64_t>& p_schedule,
    std::int64_t horizon) {
    check_radii(radii);
    if (p_schedule.empty()) throw ArgumentError("p schedule is empty");
    for (std::size_t j = 0; j < p_schedule.size(); ++j) {
        if (j > 0 && !(p_schedule[j] > p_schedule[j - 1]))
            throw ArgumentError("p schedule must be strictly increasing");
    }
    check_window(p_schedule.back(), horizon);

    const std::size_t nr = radii.size();
    const std::size_t np = p_schedule.size();
    std::vector<ReturnTimeProfile> profs(np);
    for (std::size_t j = 0; j < np; ++j) {
        profs[j].p = p_schedule[j];
        profs[j].radii = radii;
        profs[j].tau.assign(nr, ReturnTimeProfile::kCensored);
        profs[j].horizon = horizon;
    }

    // pending[i] = index into p_schedule of the smallest p not yet answered
    // for radius i. A hit at step k answers every pending p < k: between two
    // consecutive hits there are no qualifying steps, so k is the first
    // return past each of those p.
    std::vector<std::size_t> pending(nr, 0);
    std::size_t open = nr * np;
    const VecN f0 = obs.evaluate(x);
    SystemState s = x;
    for (std::int64_t k = 1; k <= horizon && open > 0; ++k) {
        s = step(spec, s);
        double d = obs_distance(obs, obs.evaluate(s), f0);
        for (std::size_t i = 0; i < nr; ++i) {
            if (d >= radii[i]) break;  // radii decrease: smaller ones can't be hit either
            while (pending[i] < np && p_schedule[pending[i]] < k) {
                profs[pending[i]].tau[i] = k;
                ++pending[i];
                --open;
            }
        }
    }
    return profs;
}

RateEstimate rate_estimate(const ReturnTimeProfile& profile) {
    RateEstimate est;
    est.p = profile.p;
    est.censor_frac = profile.censor_fraction();

    std::vector<double> x;  // -log r
    std::vector<double> y;  // log(tau - p)
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        if (profile.censored(i)) continue;
        x.push_back(-std::log(profile.radii[i]));
        y.push_back(std::log(static_cast<double>(profile.tau[i] - profile.p)));
    }
    est.n_radii = x.size();
    if (x.size() < 3)
        throw InsufficientDataError(
            "rate_estimate: needs >= 3 uncensored radii, got " + std::to_string(x.size()),
            x.empty() ? std::nan("") : profile.radii.front());

    Ols fit = ols_slope(x, y);
    est.slope = fit.slope;
    est.stderr_ = fit.stderr_;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double s = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    est.lower = lo;
    est.upper = hi;
    if (est.lower < 0.0) {
        // tau failed to be monotone in r at this resolution
        est.clamped = true;
        est.lower = 0.0;
        est.slope = std::max(est.slope, 0.0);
        est.upper = std::max(est.upper, 0.0);
    }
    return est;
}

RecurrenceRateResult recurrence_rate(const SystemSpec& spec, const Observable& obs,
                                     const SystemState& x, const std::vector<double>& radii,
                                     const std::vector<std::int64_t>& p_schedule,
                                     std::int64_t horizon, double stab_threshold) {
    RecurrenceRateResult res;
    res.profiles = return_profiles_schedule(spec, obs, x, radii, p_schedule, horizon);
    res.per_p.reserve(res.profiles.size());
    for (const auto& prof : res.profiles) res.per_p.push_back(rate_estimate(prof));

    res.stabilized = false;
    std::size_t pick = res.per_p.size() - 1;
    for (std::size_t j = res.per_p.size(); j-- > 1;) {
        if (std::fabs(res.per_p[j].slope - res.per_p[j - 1].slope) < stab_threshold) {
            pick = j;
            res.stabilized = true;
            break;
        }
    }
    res.final_estimate = res.per_p[pick];
    return res;
}

double boshernitzan_statistic(const SystemSpec& spec, const Observable& obs,
                              const SystemState& x, double alpha_exponent,
                              std::int64_t n_max) {
    if (!(alpha_exponent > 0.0)) throw ArgumentError("boshernitzan: alpha must be > 0");
    if (n_max < 1) throw ArgumentError("boshernitzan: n_max must be >= 1");
    const VecN f0 = obs.evaluate(x);
    const double inv_alpha = 1.0 / alpha_exponent;
    double best = std::numeric_limits<double>::infinity();
    SystemState s = x;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        s = step(spec, s);
        double d = obs_distance(obs, obs.evaluate(s), f0);
        if (d == 0.0) return 0.0;  // the minimum cannot go lower
        double v = std::pow(static_cast<double>(n), inv_alpha) * d;
        best = std::min(best, v);
    }
    return best;
}

}  // namespace recobs
