#include "recobs/correlations.hpp"

#include <algorithm>
#include <cmath>

namespace recobs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double primary_coordinate(const SystemState& s) {
    if (const auto* p = std::get_if<IntervalPoint>(&s)) return p->x;
    if (const auto* t = std::get_if<TorusPoint>(&s)) return t->x;
    return std::get<SkewPoint>(s).y;
}

// One-sided 95% Student quantiles; asymptote beyond the table.
double t95(std::size_t df) {
    static constexpr double table[] = {6.3138, 2.9200, 2.3534, 2.1318, 2.0150,
                                       1.9432, 1.8946, 1.8595, 1.8331, 1.8125,
                                       1.7959, 1.7823, 1.7709, 1.7613, 1.7531,
                                       1.7459, 1.7396, 1.7341, 1.7291, 1.7247};
    if (df == 0) return 6.3138;
    if (df <= 20) return table[df - 1];
    if (df <= 30) return 1.70;
    return 1.6449;
}

struct Fit {
    double slope = 0.0;
    double se = 0.0;
    double sse = 0.0;
    std::size_t n = 0;
    bool valid = false;
};

Fit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    Fit f;
    f.n = x.size();
    if (f.n < 3) return f;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(f.n);
    my /= static_cast<double>(f.n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) return f;
    f.slope = sxy / sxx;
    for (std::size_t i = 0; i < f.n; ++i) {
        double r = y[i] - my - f.slope * (x[i] - mx);
        f.sse += r * r;
    }
    f.se = std::sqrt(f.sse / (static_cast<double>(f.n) - 2.0) / sxx);
    f.valid = true;
    return f;
}

struct MomentSums {
    double a = 0, a2 = 0, ab = 0, a2b = 0, ab2 = 0, a2b2 = 0;
    void add(double A, double B) {
        a += A;
        a2 += A * A;
        ab += A * B;
        a2b += A * A * B;
        ab2 += A * B * B;
        a2b2 += A * A * B * B;
    }
};

CorrelationEstimate finish(const MomentSums& m, double sb, double sb2, std::size_t M) {
    double n = static_cast<double>(M);
    double mu_a = m.a / n, mu_b = sb / n, mu_ab = m.ab / n;
    double var_a = m.a2 / n - mu_a * mu_a;
    double var_b = sb2 / n - mu_b * mu_b;
    double var_ab = m.a2b2 / n - mu_ab * mu_ab;
    double cov_ab_a = m.a2b / n - mu_ab * mu_a;
    double cov_ab_b = m.ab2 / n - mu_ab * mu_b;
    double cov_a_b = mu_ab - mu_a * mu_b;

    // influence function of the sample covariance: h = AB - mu_b A - mu_a B
    double var_h = var_ab + mu_b * mu_b * var_a + mu_a * mu_a * var_b -
                   2.0 * mu_b * cov_ab_a - 2.0 * mu_a * cov_ab_b +
                   2.0 * mu_a * mu_b * cov_a_b;
    CorrelationEstimate est;
    est.value = std::fabs(cov_a_b);
    est.stderr_ = std::sqrt(std::fmax(0.0, var_h) / n);
    return est;
}

}  // namespace

std::string to_string(TestFunctionKind k) {
    return k == TestFunctionKind::coordinate ? "coordinate" : "cosine";
}

TestFunction::TestFunction(TestFunctionKind kind) : kind_(kind) {
    if (kind == TestFunctionKind::coordinate) {
        sup_ = 1.0;
        lip_ = 1.0;
    } else {
        sup_ = 1.0;
        lip_ = kTwoPi;
    }
}

double TestFunction::operator()(const SystemState& s) const {
    double c = primary_coordinate(s);
    return kind_ == TestFunctionKind::coordinate ? c : std::cos(kTwoPi * c);
}

CorrelationEstimate correlation(const SystemSpec& spec, const TestFunction& phi,
                                const TestFunction& psi, std::int64_t n, std::size_t M,
                                std::uint64_t seed) {
    if (n < 0) throw ArgumentError("correlation: lag must be >= 0");
    if (M < 1000) throw ArgumentError("correlation: M must be >= 10^3");
    MomentSums m;
    double sb = 0.0, sb2 = 0.0;
    for (const auto& x0 : sample_invariant(spec, seed, M)) {
        double B = psi(x0);
        SystemState s = x0;
        for (std::int64_t k = 0; k < n; ++k) s = step(spec, s);
        double A = phi(s);
        m.add(A, B);
        sb += B;
        sb2 += B * B;
    }
    return finish(m, sb, sb2, M);
}

double DecayProfile::noise_floor() const {
    double mx = 0.0;
    for (double s : stderr_) mx = std::max(mx, s);
    return 3.0 * mx;
}

DecayProfile decay_profile(const SystemSpec& spec, const TestFunction& phi,
                           const TestFunction& psi, std::int64_t n_max, std::size_t M,
                           std::uint64_t seed) {
    if (n_max < 2) throw ArgumentError("decay_profile: n_max must be >= 2");
    if (M < 1000) throw ArgumentError("decay_profile: M must be >= 10^3");
    const std::size_t lags = static_cast<std::size_t>(n_max) + 1;
    std::vector<MomentSums> m(lags);
    double sb = 0.0, sb2 = 0.0;
    for (const auto& x0 : sample_invariant(spec, seed, M)) {
        double B = psi(x0);
        sb += B;
        sb2 += B * B;
        SystemState s = x0;
        for (std::size_t lag = 0; lag < lags; ++lag) {
            m[lag].add(phi(s), B);
            if (lag + 1 < lags) s = step(spec, s);
        }
    }
    DecayProfile prof;
    prof.samples = M;
    prof.norm_product = phi.norm() * psi.norm();
    prof.c_hat.reserve(lags);
    prof.stderr_.reserve(lags);
    prof.theta_hat.reserve(lags);
    for (std::size_t lag = 0; lag < lags; ++lag) {
        CorrelationEstimate est = finish(m[lag], sb, sb2, M);
        prof.c_hat.push_back(est.value);
        prof.stderr_.push_back(est.stderr_);
        prof.theta_hat.push_back(est.value / prof.norm_product);
    }
    return prof;
}

std::string to_string(DecayVerdict v) {
    switch (v) {
        case DecayVerdict::decaying: return "decaying";
        case DecayVerdict::not_decaying: return "not_decaying";
        case DecayVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

std::size_t above_noise_prefix(const DecayProfile& profile) {
    const double floor_ = profile.noise_floor();
    std::size_t n = 0;
    while (n < profile.lags() && profile.c_hat[n] > floor_ && profile.c_hat[n] > 0.0) ++n;
    return n;
}

std::vector<SuperpolyVerdict> superpoly_check(const DecayProfile& profile,
                                              const std::vector<double>& p_list) {
    const std::size_t above_total = above_noise_prefix(profile);
    std::vector<double> ns, log_c;  // above-noise lags with n >= 1
    for (std::size_t n = 1; n < above_total; ++n) {
        ns.push_back(static_cast<double>(n));
        log_c.push_back(std::log(profile.c_hat[n]));
    }

    std::vector<SuperpolyVerdict> out;
    auto indeterminate_all = [&]() {
        for (double p : p_list) out.push_back({p, 0.0, 0.0, 0.0, DecayVerdict::indeterminate});
        return out;
    };
    if (above_total < 5 || ns.size() < 3) return indeterminate_all();

    std::vector<double> log_n(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) log_n[i] = std::log(ns[i]);
    Fit exp_fit = fit_line(ns, log_c);     // log c ~ s * n : exponential decay
    Fit poly_fit = fit_line(log_n, log_c);  // log c ~ -beta * log n : polynomial decay
    if (!exp_fit.valid || !poly_fit.valid) return indeterminate_all();

    const bool exponential = exp_fit.sse <= poly_fit.sse;
    for (double p : p_list) {
        SuperpolyVerdict v;
        v.p = p;
        if (exponential) {
            // a negative exponential rate dominates any power of n
            double t = t95(exp_fit.n - 2);
            v.trend_slope = exp_fit.slope;
            v.ci_low = exp_fit.slope - t * exp_fit.se;
            v.ci_high = exp_fit.slope + t * exp_fit.se;
            v.verdict =
                v.ci_high < 0.0 ? DecayVerdict::decaying : DecayVerdict::not_decaying;
        } else {
            // c_hat ~ n^-beta, so c_hat n^p trends like n^(p - beta)
            double beta = -poly_fit.slope;
            double t = t95(poly_fit.n - 2);
            v.trend_slope = p - beta;
            v.ci_low = v.trend_slope - t * poly_fit.se;
            v.ci_high = v.trend_slope + t * poly_fit.se;
            v.verdict =
                v.ci_high < 0.0 ? DecayVerdict::decaying : DecayVerdict::not_decaying;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace recobs
