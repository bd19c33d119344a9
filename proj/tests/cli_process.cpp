// Drives the installed binary through a shell, checking exit codes and the
// emitted files. argv[1] is the path to the executable under test.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "recobs/csvio.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_bin;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    std::string cmd = g_bin + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string capture(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "recobs_cli_capture.txt";
    std::string cmd = g_bin + " " + args + " > " + tmp.string() + " 2>&1";
    int ignored = std::system(cmd.c_str());
    (void)ignored;
    std::ifstream f(tmp);
    std::ostringstream ss;
    ss << f.rdbuf();
    fs::remove(tmp);
    return ss.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Every emitted CSV must parse back: named columns present, numeric cells
// numeric on every row.
void expect_parseable(const fs::path& p, const std::vector<std::string>& numeric_cols) {
    try {
        recobs::csv::Table t = recobs::csv::read(p);
        if (t.rows.empty()) {
            expect(false, p.filename().string() + " has data rows");
            return;
        }
        for (const auto& c : numeric_cols) {
            std::size_t col = t.col(c);
            for (std::size_t i = 0; i < t.rows.size(); ++i) (void)t.num(i, col);
        }
        expect(true, p.filename().string() + " parses back");
    } catch (const std::exception& e) {
        expect(false, p.filename().string() + " parses back (" + e.what() + ")");
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_process <path-to-binary>\n");
        return 2;
    }
    g_bin = argv[1];
    fs::path work = fs::temp_directory_path() / "recobs_cli_test";
    fs::remove_all(work);
    fs::create_directories(work);

    // list: stable catalog
    std::string listing = capture("list");
    for (const char* name : {"E1", "E2", "E3", "E4", "E5"})
        expect(listing.find(name) != std::string::npos, std::string("list mentions ") + name);
    expect(listing == capture("list"), "list output is stable");

    // a passing run exits 0 and leaves the three outputs
    int rc = run("run E4 --out-dir " + (work / "e4").string());
    expect(rc == 0, "run E4 exits 0, got " + std::to_string(rc));
    for (const char* f : {"rates.csv", "dims.csv", "report.txt"})
        expect(fs::exists(work / "e4" / f), std::string("E4 wrote ") + f);

    // byte-identical reruns through the process boundary
    std::string before = slurp(work / "e4" / "rates.csv") + slurp(work / "e4" / "dims.csv");
    run("run E4 --out-dir " + (work / "e4").string());
    std::string after = slurp(work / "e4" / "rates.csv") + slurp(work / "e4" / "dims.csv");
    expect(!before.empty() && before == after, "rerun leaves identical CSV bytes");

    // tolerance failure exits 1: E1 tolerances judged against identity-map data
    {
        std::ofstream cfg(work / "fail.cfg");
        cfg << "[system]\nkind = identity\nseed = 4\n";
        cfg << "[observable]\nkind = identity\n";
        cfg << "[experiment]\nname = E1\nstarts = 8\n";
        cfg << "[dimension]\ncloud_size = 20000\n";
    }
    rc = run("run " + (work / "fail.cfg").string() + " --out-dir " + (work / "f").string());
    expect(rc == 1, "tolerance failure exits 1, got " + std::to_string(rc));

    // config errors exit 2 and name the field
    {
        std::ofstream cfg(work / "bad.cfg");
        cfg << "[recurrence]\nradii = 0.5, -0.25\n";
    }
    rc = run("run " + (work / "bad.cfg").string());
    expect(rc == 2, "negative radius exits 2, got " + std::to_string(rc));
    std::string err = capture("run " + (work / "bad.cfg").string());
    expect(err.find("recurrence.radii") != std::string::npos,
           "config error names the offending field");

    rc = run("run " + (work / "missing.cfg").string());
    expect(rc == 2, "missing config exits 2, got " + std::to_string(rc));

    // per-module drivers emit their documented files
    rc = run("return-times E4 --out-dir " + (work / "rt").string());
    expect(rc == 0 && fs::exists(work / "rt" / "profile.csv") &&
               fs::exists(work / "rt" / "rates.csv"),
           "return-times writes profile.csv and rates.csv");
    expect_parseable(work / "rt" / "profile.csv", {"p", "r", "tau", "censored"});
    expect_parseable(work / "rt" / "rates.csv",
                     {"p", "slope", "lower", "upper", "stderr", "n_radii", "censor_frac"});

    {
        std::ofstream cfg(work / "ld.cfg");
        cfg << "[system]\nkind = tripling\nseed = 9\n";
        cfg << "[observable]\nkind = identity\n";
        cfg << "[dimension]\ncloud_size = 20000\nprobes = 10\n";
    }
    rc = run("local-dim " + (work / "ld.cfg").string() + " --dump-cloud --out-dir " +
             (work / "ld").string());
    expect(rc == 0 && fs::exists(work / "ld" / "dims.csv") &&
               fs::exists(work / "ld" / "mass.csv") && fs::exists(work / "ld" / "cloud.csv"),
           "local-dim writes dims.csv, mass.csv and cloud.csv");

    // probing an imported cloud reproduces the sampled-cloud estimates
    rc = run("local-dim " + (work / "ld.cfg").string() + " --cloud-csv " +
             (work / "ld" / "cloud.csv").string() + " --out-dir " + (work / "ld2").string());
    expect(rc == 0 && slurp(work / "ld2" / "dims.csv") == slurp(work / "ld" / "dims.csv"),
           "local-dim on the exported cloud gives identical dims.csv");

    // runtime failures (all radii censored leaves too few points) exit 3
    {
        std::ofstream cfg(work / "rt3.cfg");
        cfg << "[system]\nkind = tripling\nseed = 12\n";
        cfg << "[observable]\nkind = identity\n";
        cfg << "[recurrence]\nradii = 1e-9, 1e-10, 1e-11\np_schedule = 0\nhorizon = 2\n";
    }
    rc = run("return-times " + (work / "rt3.cfg").string() + " --out-dir " +
             (work / "rt3").string());
    expect(rc == 3, "runtime error exits 3, got " + std::to_string(rc));

    {
        std::ofstream cfg(work / "cd.cfg");
        cfg << "[system]\nkind = tripling\nseed = 10\n";
        cfg << "[correlations]\nn_max = 6\nsamples = 50000\n";
    }
    rc = run("corr-decay " + (work / "cd.cfg").string() + " --out-dir " +
             (work / "cd").string());
    expect(rc == 0 && fs::exists(work / "cd" / "decay.csv") &&
               fs::exists(work / "cd" / "verdicts.csv"),
           "corr-decay writes decay.csv and verdicts.csv");
    expect_parseable(work / "cd" / "decay.csv", {"n", "c_hat", "stderr", "theta_hat"});
    expect_parseable(work / "cd" / "verdicts.csv",
                     {"p", "trend_slope", "ci_low", "ci_high"});
    expect_parseable(work / "ld" / "mass.csv", {"r", "count", "fraction"});

    {
        std::ofstream cfg(work / "rm.cfg");
        cfg << "[observable]\nkind = smooth_parabola\n";
    }
    rc = run("rank-map " + (work / "rm.cfg").string() + " --grid 16 --out-dir " +
             (work / "rm").string());
    expect(rc == 0 && fs::exists(work / "rm" / "rank.csv"), "rank-map writes rank.csv");

    fs::remove_all(work);
    if (g_failures == 0) {
        std::printf("cli_process: all checks passed\n");
        return 0;
    }
    std::printf("cli_process: %d checks FAILED\n", g_failures);
    return 1;
}
