#ifndef RECOBS_EXPERIMENTS_HPP
#define RECOBS_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "recobs/config.hpp"
#include "recobs/dimension.hpp"
#include "recobs/recurrence.hpp"

namespace recobs {

inline constexpr const char* kVersion = "recobs 0.1.0";

// One tolerance judgement. `tolerance` spells out the bound the value was
// held against, so a report line is self-contained.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
    std::string tolerance;
};

struct DimRow {
    std::string label;  // probe group (experiment name or smooth-map name)
    std::size_t probe = 0;
    DimEstimate est;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string version = kVersion;

    // rates[i][j] = estimate for start i at p_schedule[j]
    std::vector<std::vector<RateEstimate>> rates;
    std::vector<std::vector<ReturnTimeProfile>> profiles;  // same indexing
    std::vector<RateEstimate> final_rates;  // per start, after the p rule
    std::vector<bool> stabilized;           // per start
    std::vector<DimRow> dims;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;  // diagnostics (rotation arithmetic etc.)

    bool passed() const;
    std::string summary() const;  // one line per check
};

struct ExperimentInfo {
    std::string name;
    std::string claim;  // the result the experiment reproduces
};

// Catalog of built-in experiments, stable order E1..E5.
std::vector<ExperimentInfo> list_experiments();

// Built-in configuration for E1..E5; throws ConfigError for unknown names.
ExperimentConfig builtin_experiment(const std::string& name);
bool is_builtin_experiment(const std::string& name);

// Runs the configured experiment. Pure compute: no files touched.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Writes rates.csv, dims.csv and report.txt under cfg.out_dir. Deterministic
// byte-for-byte given the same report.
void write_outputs(const ExperimentReport& report);

// Deterministic helper: first `n` invariant samples passing the filter.
std::vector<SystemState> sample_starts(const SystemSpec& spec, std::uint64_t seed,
                                       std::size_t n, StartFilter filter);

// Statistics used by the check tables.
double median(std::vector<double> v);

}  // namespace recobs

#endif
