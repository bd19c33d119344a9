#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "recobs/csvio.hpp"
#include "recobs/experiments.hpp"

using namespace recobs;

TEST_CASE("config: serialize/parse round trip") {
    ExperimentConfig cfg = builtin_experiment("E3");
    std::string text = serialize_config(cfg);
    ExperimentConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.name == "E3");
    CHECK(back.system.kind == SystemKind::skew);
    CHECK(back.start_filter == StartFilter::omega_not_in_A);
    CHECK(back.p_schedule == cfg.p_schedule);
    CHECK(back.radii == cfg.radii);
}

TEST_CASE("config: defaults for an empty file") {
    ExperimentConfig cfg = parse_config("");
    CHECK(cfg.system.kind == SystemKind::tripling);
    CHECK(cfg.radii == pow2_radii(4, 14));
    CHECK(cfg.p_schedule == std::vector<std::int64_t>{0, 10, 100, 1000});
    CHECK(cfg.horizon == 1000000);
}

TEST_CASE("config: pow2 ranges and explicit lists") {
    ExperimentConfig cfg = parse_config("[recurrence]\nradii_pow2 = 3..6\n");
    CHECK(cfg.radii == std::vector<double>{0.125, 0.0625, 0.03125, 0.015625});
    ExperimentConfig cfg2 = parse_config("[recurrence]\nradii = 0.5, 0.25, 0.125\n");
    CHECK(cfg2.radii == std::vector<double>{0.5, 0.25, 0.125});
}

TEST_CASE("config: errors name the offending field") {
    auto field_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.field;
        }
        return std::string("no error");
    };
    CHECK(field_of("[recurrence]\nradii = 0.5, -0.1\n") == "recurrence.radii");
    CHECK(field_of("[recurrence]\nradii = 0.1, 0.5\n") == "recurrence.radii");
    CHECK(field_of("[system]\nkind = lorenz\n") == "system.kind");
    CHECK(field_of("[system]\nbogus = 1\n") == "system.bogus");
    CHECK(field_of("[recurrence]\nhorizon = 5\np_schedule = 0,10\n") ==
          "recurrence.horizon");
    CHECK(field_of("[experiment]\nstart_filter = omega_not_in_A\n") ==
          "experiment.start_filter");
    CHECK(field_of("stray = 1\n") == "stray");
    CHECK(field_of("[dimension]\nmin_count = 0\n") == "dimension.min_count");
}

TEST_CASE("config: CRLF line endings parse the same") {
    ExperimentConfig cfg = parse_config("[system]\r\nkind = cat\r\nseed = 7\r\n");
    CHECK(cfg.system.kind == SystemKind::cat);
    CHECK(cfg.system.seed == 7);
}

TEST_CASE("config: malformed lines carry the line number") {
    try {
        parse_config("[system]\nkind tripling\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.field == "line 2");
    }
}

TEST_CASE("experiment catalog: exactly E1..E5, stable, described") {
    auto a = list_experiments();
    auto b = list_experiments();
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == "E" + std::to_string(i + 1));
        CHECK(a[i].name == b[i].name);
        CHECK(!a[i].claim.empty());
    }
    CHECK_THROWS_AS(builtin_experiment("E9"), ConfigError);
}

TEST_CASE("csv: shortest round-trip formatting") {
    for (double x : {0.1, 1.0 / 3.0, 6.103515625e-05, 12345.0, 1e-300}) {
        std::string s = csv::fmt(x);
        csv::Table t = csv::parse("v\n" + s + "\n");
        CHECK(t.num(0, 0) == x);
    }
}

TEST_CASE("csv: writer/parser round trip and ragged detection") {
    csv::Writer w({"a", "b"});
    w.row({"1", "2"});
    w.row({csv::fmt(0.25), "x"});
    csv::Table t = csv::parse(w.str());
    REQUIRE(t.rows.size() == 2);
    CHECK(t.num(1, t.col("a")) == 0.25);
    CHECK(t.rows[1][1] == "x");
    CHECK_THROWS_AS(w.row({"only-one"}), Error);
    CHECK_THROWS_AS(csv::parse("a,b\n1\n"), Error);
    CHECK_THROWS_AS((void)t.col("zzz"), Error);
}

TEST_CASE("experiment outputs: byte-identical reruns and parseable CSVs") {
    namespace fs = std::filesystem;
    ExperimentConfig cfg = builtin_experiment("E4");
    cfg.starts = 5;
    cfg.cloud_size = 20000;
    cfg.out_dir = fs::temp_directory_path() / "recobs_rerun_test";

    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };

    ExperimentReport r1 = run_experiment(cfg);
    write_outputs(r1);
    std::string rates1 = slurp(cfg.out_dir / "rates.csv");
    std::string dims1 = slurp(cfg.out_dir / "dims.csv");
    std::string rpt1 = slurp(cfg.out_dir / "report.txt");

    ExperimentReport r2 = run_experiment(cfg);
    write_outputs(r2);
    CHECK(slurp(cfg.out_dir / "rates.csv") == rates1);
    CHECK(slurp(cfg.out_dir / "dims.csv") == dims1);
    CHECK(slurp(cfg.out_dir / "report.txt") == rpt1);

    // rows parse back into the emitting shapes
    csv::Table rates = csv::read(cfg.out_dir / "rates.csv");
    REQUIRE(rates.rows.size() == cfg.starts * cfg.p_schedule.size());
    for (std::size_t i = 0; i < rates.rows.size(); ++i) {
        (void)rates.num(i, rates.col("slope"));
        (void)rates.num(i, rates.col("censor_frac"));
    }
    csv::Table dims = csv::read(cfg.out_dir / "dims.csv");
    REQUIRE(dims.rows.size() == cfg.starts);
    for (std::size_t i = 0; i < dims.rows.size(); ++i) (void)dims.num(i, dims.col("slope"));
    fs::remove_all(cfg.out_dir);
}

TEST_CASE("run_experiment: worker count does not change results") {
    ExperimentConfig a = builtin_experiment("E4");
    a.starts = 6;
    a.cloud_size = 10000;
    a.workers = 1;
    ExperimentConfig b = a;
    b.workers = 4;
    ExperimentReport ra = run_experiment(a);
    ExperimentReport rb = run_experiment(b);
    REQUIRE(ra.final_rates.size() == rb.final_rates.size());
    for (std::size_t i = 0; i < ra.final_rates.size(); ++i)
        CHECK(ra.final_rates[i].slope == rb.final_rates[i].slope);
    for (std::size_t i = 0; i < ra.dims.size(); ++i)
        CHECK(ra.dims[i].est.slope == rb.dims[i].est.slope);
}

TEST_CASE("run_experiment: worker exceptions reach the caller") {
    ExperimentConfig cfg;  // default tripling
    cfg.name = "custom";
    cfg.radii = {1e-9, 1e-10, 1e-11};  // unreachable in two steps: all censored
    cfg.p_schedule = {0};
    cfg.horizon = 2;
    cfg.starts = 8;
    cfg.workers = 4;
    cfg.cloud_size = 1000;
    cfg.dim_radii = pow2_radii(1, 4);
    CHECK_THROWS_AS(run_experiment(cfg), InsufficientDataError);
}

TEST_CASE("run_experiment: E3 exactness shortcut") {
    // instantaneous slope is identically zero for starts outside the cylinder
    ExperimentConfig cfg = builtin_experiment("E3");
    cfg.starts = 4;
    cfg.cloud_size = 20000;
    cfg.probes = 30;
    ExperimentReport rep = run_experiment(cfg);
    for (const auto& row : rep.rates) CHECK(row[0].slope == 0.0);
    for (const auto& prof : rep.profiles)
        for (auto t : prof[0].tau) CHECK(t == 1);
}
