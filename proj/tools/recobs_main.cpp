// recobs command line: experiment runner and per-module drivers.
//
// Exit codes: 0 pass, 1 tolerance fail, 2 configuration error, 3 runtime error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "recobs/correlations.hpp"
#include "recobs/csvio.hpp"
#include "recobs/diophantine.hpp"
#include "recobs/experiments.hpp"

namespace fs = std::filesystem;
using namespace recobs;

namespace {

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> workers;
    std::optional<std::int64_t> horizon;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--seed", f.seed, "override the configured seed");
    cmd->add_option("--out-dir", f.out_dir, "output directory");
    cmd->add_option("--workers", f.workers, "worker threads for starts/probes");
    cmd->add_option("--horizon", f.horizon, "orbit horizon H");
}

void apply_common(ExperimentConfig& cfg, const CommonFlags& f) {
    if (f.seed) cfg.system.seed = *f.seed;
    if (f.out_dir) cfg.out_dir = *f.out_dir;
    if (f.workers) cfg.workers = *f.workers;
    if (f.horizon) cfg.horizon = *f.horizon;
    validate(cfg);
}

ExperimentConfig resolve_config(const std::string& what) {
    if (is_builtin_experiment(what)) return builtin_experiment(what);
    return load_config(what);
}

int cmd_run(const std::string& what, const CommonFlags& flags) {
    ExperimentConfig cfg = resolve_config(what);
    apply_common(cfg, flags);
    ExperimentReport rep = run_experiment(cfg);
    write_outputs(rep);
    std::cout << rep.summary();
    std::cout << (rep.passed() ? "RESULT: pass" : "RESULT: fail") << "\n";
    return rep.passed() ? 0 : 1;
}

int cmd_list() {
    for (const auto& e : list_experiments()) std::cout << e.name << "  " << e.claim << "\n";
    return 0;
}

int cmd_return_times(const std::string& config_path, const CommonFlags& flags) {
    ExperimentConfig cfg = resolve_config(config_path);
    apply_common(cfg, flags);
    Observable obs(cfg.observable);
    SystemState x0 = sample_starts(cfg.system, cfg.system.seed, 1, cfg.start_filter).front();
    RecurrenceRateResult res =
        recurrence_rate(cfg.system, obs, x0, cfg.radii, cfg.p_schedule, cfg.horizon);

    fs::create_directories(cfg.out_dir);
    csv::Writer prof({"p", "r", "tau", "censored"});
    for (const auto& pr : res.profiles)
        for (std::size_t i = 0; i < pr.radii.size(); ++i)
            prof.row({csv::fmt(pr.p), csv::fmt(pr.radii[i]), csv::fmt(pr.tau[i]),
                      pr.censored(i) ? "1" : "0"});
    prof.write(cfg.out_dir / "profile.csv");

    csv::Writer rates({"p", "slope", "lower", "upper", "stderr", "n_radii", "censor_frac"});
    for (const auto& e : res.per_p)
        rates.row({csv::fmt(e.p), csv::fmt(e.slope), csv::fmt(e.lower), csv::fmt(e.upper),
                   csv::fmt(e.stderr_), csv::fmt(static_cast<std::uint64_t>(e.n_radii)),
                   csv::fmt(e.censor_frac)});
    rates.write(cfg.out_dir / "rates.csv");
    std::cout << "final slope " << csv::fmt(res.final_estimate.slope)
              << (res.stabilized ? "" : " (p schedule did not stabilize)") << "\n";
    return 0;
}

int cmd_local_dim(const std::string& config_path, const CommonFlags& flags, bool dump_cloud,
                  const std::string& cloud_csv) {
    ExperimentConfig cfg = resolve_config(config_path);
    apply_common(cfg, flags);
    Observable obs(cfg.observable);
    PointCloud cloud =
        cloud_csv.empty()
            ? pushforward_cloud(cfg.system, obs, cfg.cloud_size, cfg.system.seed + 1,
                                cfg.cloud_mode, cfg.dimension_radii().back())
            : import_cloud_csv(cloud_csv, obs.metric(), cfg.dimension_radii().back());

    fs::create_directories(cfg.out_dir);
    csv::Writer dims({"probe", "slope", "lower", "upper", "n_radii", "min_count"});
    for (std::size_t i = 0; i < cfg.probes; ++i) {
        VecN y = cloud.point(rng::mix(cfg.system.seed + 2, i) % cloud.size());
        DimEstimate est = local_dimension(cloud, y, cfg.dimension_radii(), cfg.min_count);
        dims.row({csv::fmt(static_cast<std::uint64_t>(i)), csv::fmt(est.slope),
                  csv::fmt(est.lower), csv::fmt(est.upper),
                  csv::fmt(static_cast<std::uint64_t>(est.n_radii)),
                  csv::fmt(static_cast<std::uint64_t>(est.min_count))});
    }
    dims.write(cfg.out_dir / "dims.csv");

    // ball-mass profile at the first probe, for scaling plots
    VecN y0 = cloud.point(rng::mix(cfg.system.seed + 2, 0) % cloud.size());
    MassProfile mp = mass_profile(cloud, y0, cfg.dimension_radii());
    csv::Writer mass({"r", "count", "fraction"});
    for (std::size_t k = 0; k < mp.radii.size(); ++k)
        mass.row({csv::fmt(mp.radii[k]), csv::fmt(static_cast<std::uint64_t>(mp.counts[k])),
                  csv::fmt(mp.fraction(k))});
    mass.write(cfg.out_dir / "mass.csv");

    if (dump_cloud) export_cloud_csv(cloud, cfg.out_dir / "cloud.csv");
    return 0;
}

int cmd_corr_decay(const std::string& config_path, const CommonFlags& flags) {
    ExperimentConfig cfg = resolve_config(config_path);
    apply_common(cfg, flags);
    TestFunction phi(cfg.phi), psi(cfg.psi);
    DecayProfile prof = decay_profile(cfg.system, phi, psi, cfg.corr_n_max, cfg.corr_samples,
                                      cfg.system.seed);
    std::vector<SuperpolyVerdict> verdicts = superpoly_check(prof, cfg.corr_p_list);

    fs::create_directories(cfg.out_dir);
    csv::Writer decay({"n", "c_hat", "stderr", "theta_hat"});
    for (std::size_t n = 0; n < prof.lags(); ++n)
        decay.row({csv::fmt(static_cast<std::uint64_t>(n)), csv::fmt(prof.c_hat[n]),
                   csv::fmt(prof.stderr_[n]), csv::fmt(prof.theta_hat[n])});
    decay.write(cfg.out_dir / "decay.csv");

    csv::Writer vt({"p", "trend_slope", "ci_low", "ci_high", "verdict"});
    for (const auto& v : verdicts)
        vt.row({csv::fmt(v.p), csv::fmt(v.trend_slope), csv::fmt(v.ci_low),
                csv::fmt(v.ci_high), to_string(v.verdict)});
    vt.write(cfg.out_dir / "verdicts.csv");
    for (const auto& v : verdicts)
        std::cout << "p=" << csv::fmt(v.p) << "  " << to_string(v.verdict) << "\n";
    return 0;
}

int cmd_rank_map(const std::string& config_path, const CommonFlags& flags, int grid_n) {
    ExperimentConfig cfg = resolve_config(config_path);
    apply_common(cfg, flags);
    Observable obs(cfg.observable);
    RankField field = rank_field(obs, 0.0, 1.0, 0.0, 1.0, grid_n, grid_n);

    fs::create_directories(cfg.out_dir);
    csv::Writer w({"x", "y", "rank"});
    for (int j = 0; j < field.ny; ++j)
        for (int i = 0; i < field.nx; ++i)
            w.row({csv::fmt(field.grid_x(i)), csv::fmt(field.grid_y(j)),
                   csv::fmt(static_cast<std::int64_t>(field.rank[static_cast<std::size_t>(
                       j * field.nx + i)]))});
    w.write(cfg.out_dir / "rank.csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical return-time and pointwise-dimension experiments"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonFlags flags;
    std::string target;
    bool dump_cloud = false;
    std::string cloud_csv;
    int grid_n = 64;

    CLI::App* run = app.add_subcommand("run", "run a built-in experiment or a config file");
    run->add_option("experiment", target, "E1..E5 or a config path")->required();
    add_common(run, flags);

    app.add_subcommand("list", "list the built-in experiments");

    CLI::App* rt = app.add_subcommand("return-times", "return-time profile for one start");
    rt->add_option("config", target, "E1..E5 or a config path")->required();
    add_common(rt, flags);

    CLI::App* ld = app.add_subcommand("local-dim", "pushforward cloud local dimensions");
    ld->add_option("config", target, "E1..E5 or a config path")->required();
    ld->add_flag("--dump-cloud", dump_cloud, "also write cloud.csv");
    ld->add_option("--cloud-csv", cloud_csv, "probe an imported cloud instead of sampling");
    add_common(ld, flags);

    CLI::App* cd = app.add_subcommand("corr-decay", "correlation decay profile and verdicts");
    cd->add_option("config", target, "E1..E5 or a config path")->required();
    add_common(cd, flags);

    CLI::App* rm = app.add_subcommand("rank-map", "Jacobian rank over the unit square");
    rm->add_option("config", target, "E1..E5 or a config path")->required();
    rm->add_option("--grid", grid_n, "grid points per axis");
    add_common(rm, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand("run")) return cmd_run(target, flags);
        if (app.got_subcommand("return-times")) return cmd_return_times(target, flags);
        if (app.got_subcommand("local-dim"))
            return cmd_local_dim(target, flags, dump_cloud, cloud_csv);
        if (app.got_subcommand("corr-decay")) return cmd_corr_decay(target, flags);
        if (app.got_subcommand("rank-map")) return cmd_rank_map(target, flags, grid_n);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
