// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs every tolerance from the experiment definitions plus the
// correlation, arithmetic and property criteria end to end.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "recobs/correlations.hpp"
#include "recobs/csvio.hpp"
#include "recobs/dimension.hpp"
#include "recobs/diophantine.hpp"
#include "recobs/experiments.hpp"

using namespace recobs;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) { return csv::fmt(v); }

// Criteria 1-5: the built-in experiments with their pinned tolerances.
void run_experiment_criterion(const std::string& name, const std::string& label) {
    ExperimentConfig cfg = builtin_experiment(name);
    cfg.workers = 4;
    ExperimentReport rep = run_experiment(cfg);
    std::ostringstream detail;
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const auto& c = rep.checks[i];
        if (i) detail << "; ";
        detail << c.name << "=" << fmt(c.value) << (c.pass ? "" : " OUT OF") << " ["
               << fmt(c.lo) << "," << (std::isinf(c.hi) ? "inf" : fmt(c.hi)) << "]";
    }
    report(label, rep.passed(), detail.str());
}

void criterion_correlation_decay() {
    bool pass = true;
    std::ostringstream detail;

    auto trip = SystemSpec::tripling_map();
    TestFunction coord(TestFunctionKind::coordinate);
    DecayProfile prof = decay_profile(trip, coord, coord, 12, 1000000, 2026);

    std::size_t usable = above_noise_prefix(prof);
    double rho = 0.0;
    if (usable >= 3) {
        double mx = 0, my = 0;
        std::vector<double> xs, ys;
        for (std::size_t n = 0; n < usable; ++n) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(prof.c_hat[n]));
            mx += xs.back();
            my += ys.back();
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        rho = std::exp(sxy / sxx);
    }
    pass = pass && rho > 0.25 && rho < 0.45;
    detail << "exp_ratio=" << fmt(rho) << " [0.25,0.45]";

    auto verdicts = superpoly_check(prof, {1, 2, 4, 8});
    for (const auto& v : verdicts) {
        bool ok = v.verdict == DecayVerdict::decaying;
        pass = pass && ok;
        detail << "; p=" << fmt(v.p) << ":" << to_string(v.verdict);
    }

    auto ident = SystemSpec::identity_map();
    DecayProfile flat = decay_profile(ident, coord, coord, 12, 1000000, 2027);
    for (const auto& v : superpoly_check(flat, {1, 2, 4, 8})) {
        bool ok = v.verdict == DecayVerdict::not_decaying;
        pass = pass && ok;
        detail << "; identity p=" << fmt(v.p) << ":" << to_string(v.verdict);
    }
    report("C6 correlation decay", pass, detail.str());
}

void criterion_diophantine_chain() {
    bool pass = true;
    std::ostringstream detail;
    RotationNumber golden = RotationNumber::golden_mean();

    std::int64_t k0 = k0_scan(golden, 0.5, 1000000);
    detail << "k0=" << k0;

    std::int64_t checked = 0;
    std::int64_t worst_margin = std::numeric_limits<std::int64_t>::max();
    try {
        for (std::int64_t n = k0; n <= 10000; ++n) {
            std::int64_t m = m_n_eps(golden, n, 0.5, k0);  // throws if m < n
            worst_margin = std::min(worst_margin, m - n);
            ++checked;
        }
    } catch (const Error& e) {
        pass = false;
        detail << "; bound violated: " << e.what();
    }
    detail << "; m>=n for " << checked << " values, min margin " << worst_margin;

    double dexp = approx_exponent(golden, 1000000);
    bool ok = dexp >= 1.0 && dexp <= 1.05;
    pass = pass && ok && checked == 10000 - k0 + 1;
    detail << "; approx_exponent=" << fmt(dexp) << " [1,1.05]";
    report("C7 diophantine chain", pass, detail.str());
}

// Criterion 8: the always-on property suite.
void criterion_properties() {
    bool pass = true;
    std::ostringstream detail;
    rng::Stream rs(1001);

    // tau > p, monotone in r and p, profile equals the per-radius oracle
    std::size_t oracle_checked = 0;
    bool tau_ok = true, mono_r_ok = true, mono_p_ok = true, oracle_ok = true;
    for (std::size_t i = 0; i < 100; ++i) {
        SystemSpec spec;
        Observable obs(ObservableKind::identity);
        switch (i % 3) {
            case 0:
                spec = SystemSpec::tripling_map(7);
                break;
            case 1:
                spec = SystemSpec::cat_map(7);
                break;
            default:
                spec = SystemSpec::skew_product(0.61803398874989484820, 0.5, 7);
                obs = Observable(ObservableKind::projection);
                break;
        }
        SystemState x = sample_invariant(spec, rng::mix(77, i), 1).front();
        std::vector<double> radii;
        double r = 0.3 * (0.5 + rs.next_u01());
        std::size_t nr = 3 + (rs.next_u64() % 4);
        for (std::size_t k = 0; k < nr; ++k) {
            radii.push_back(r);
            r *= 0.45 + 0.35 * rs.next_u01();
        }
        std::int64_t horizon = 50 + static_cast<std::int64_t>(rs.next_u64() % 1500);
        std::vector<std::int64_t> schedule{0, 2, 9};
        auto profs = return_profiles_schedule(spec, obs, x, radii, schedule, horizon);
        for (std::size_t j = 0; j < profs.size(); ++j) {
            const auto& pr = profs[j];
            for (std::size_t k = 0; k < pr.tau.size(); ++k) {
                if (!pr.censored(k)) {
                    tau_ok = tau_ok && pr.tau[k] > pr.p;
                    if (k > 0 && !pr.censored(k - 1))
                        mono_r_ok = mono_r_ok && pr.tau[k] >= pr.tau[k - 1];
                }
                std::int64_t cur = pr.censored(k) ? horizon + 1 : pr.tau[k];
                std::int64_t prev =
                    j > 0 ? (profs[j - 1].censored(k) ? horizon + 1 : profs[j - 1].tau[k])
                          : 0;
                mono_p_ok = mono_p_ok && cur >= prev;
                std::int64_t oracle = return_time(spec, obs, x, radii[k], pr.p, horizon);
                oracle_ok = oracle_ok && oracle == pr.tau[k];
                ++oracle_checked;
            }
        }
    }
    pass = pass && tau_ok && mono_r_ok && mono_p_ok && oracle_ok;
    detail << "tau>p:" << (tau_ok ? "ok" : "VIOLATED")
           << "; mono_r:" << (mono_r_ok ? "ok" : "VIOLATED")
           << "; mono_p:" << (mono_p_ok ? "ok" : "VIOLATED") << "; oracle_eq("
           << oracle_checked << "):" << (oracle_ok ? "ok" : "VIOLATED");

    // ball counting: grid equals scan, mass monotone in r
    std::vector<VecN> pts;
    for (std::size_t i = 0; i < 30000; ++i)
        pts.emplace_back(rng::u01(rng::mix(5, 2 * i)), rng::u01(rng::mix(5, 2 * i + 1)));
    PointCloud cloud(std::move(pts), MetricKind::euclidean, 0x1p-9);
    bool index_ok = true, mono_mass_ok = true;
    for (int i = 0; i < 1000; ++i) {
        VecN y{rs.next_u01(), rs.next_u01()};
        double r0 = std::pow(2.0, -(1.0 + 7.0 * rs.next_u01()));
        index_ok = index_ok && cloud.count_within(y, r0) == cloud.count_within_scan(y, r0);
        mono_mass_ok =
            mono_mass_ok && cloud.count_within(y, 2.0 * r0) >= cloud.count_within(y, r0);
    }
    pass = pass && index_ok && mono_mass_ok;
    detail << "; index_vs_scan:" << (index_ok ? "ok" : "VIOLATED")
           << "; mass_monotone:" << (mono_mass_ok ? "ok" : "VIOLATED");

    // maximal separated set: brute-force postconditions
    std::vector<VecN> sp;
    for (int i = 0; i < 800; ++i) sp.emplace_back(rs.next_u01(), rs.next_u01());
    auto sel = maximal_separated_set(sp, MetricKind::euclidean, 0.07);
    bool sep_ok = true, cover_ok = true;
    for (std::size_t a = 0; a < sel.size(); ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b)
            sep_ok = sep_ok &&
                     metric_dist(MetricKind::euclidean, sp[sel[a]], sp[sel[b]]) >= 0.07;
    for (const auto& p : sp) {
        double best = 1e9;
        for (std::size_t s : sel)
            best = std::min(best, metric_dist(MetricKind::euclidean, p, sp[s]));
        cover_ok = cover_ok && best < 0.07;
    }
    pass = pass && sep_ok && cover_ok;
    detail << "; separated(" << sel.size()
           << "):" << (sep_ok && cover_ok ? "ok" : "VIOLATED");

    // circle norm symmetry and periodicity
    bool norm_ok = true;
    for (int i = 0; i < 5000; ++i) {
        double t = (rs.next_u01() - 0.5) * 100.0;
        norm_ok = norm_ok && std::fabs(circle_norm(t) - circle_norm(-t)) < 1e-12 &&
                  std::fabs(circle_norm(t) - circle_norm(t + 1.0)) < 1e-12;
    }
    pass = pass && norm_ok;
    detail << "; circle_norm:" << (norm_ok ? "ok" : "VIOLATED");

    // byte-identical reruns of a scaled-down experiment
    namespace fs = std::filesystem;
    ExperimentConfig cfg = builtin_experiment("E4");
    cfg.starts = 5;
    cfg.cloud_size = 20000;
    cfg.out_dir = fs::temp_directory_path() / "recobs_acceptance_rerun";
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    write_outputs(run_experiment(cfg));
    std::string r1 = slurp(cfg.out_dir / "rates.csv") + slurp(cfg.out_dir / "dims.csv") +
                     slurp(cfg.out_dir / "report.txt");
    write_outputs(run_experiment(cfg));
    std::string r2 = slurp(cfg.out_dir / "rates.csv") + slurp(cfg.out_dir / "dims.csv") +
                     slurp(cfg.out_dir / "report.txt");
    fs::remove_all(cfg.out_dir);
    bool rerun_ok = !r1.empty() && r1 == r2;
    pass = pass && rerun_ok;
    detail << "; rerun_bytes:" << (rerun_ok ? "identical" : "DIFFER");

    report("C8 property suite", pass, detail.str());
}

}  // namespace

int main() {
    run_experiment_criterion("E1", "C1 E1 mixing equality");
    run_experiment_criterion("E2", "C2 E2 Lipschitz observable");
    run_experiment_criterion("E3", "C3 E3 instantaneous vs windowed");
    run_experiment_criterion("E4", "C4 E4 strict inequality");
    run_experiment_criterion("E5", "C5 E5 rank theorem");
    criterion_correlation_decay();
    criterion_diophantine_chain();
    criterion_properties();

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
