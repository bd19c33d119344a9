#ifndef RECOBS_CONFIG_HPP
#define RECOBS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "recobs/cloud.hpp"
#include "recobs/correlations.hpp"
#include "recobs/dynamics.hpp"
#include "recobs/observables.hpp"

namespace recobs {

enum class StartFilter { none, omega_not_in_A };

std::string to_string(StartFilter f);

// Everything an experiment run needs, in one value. Parsed from the flat
// key = value config format ([section] headers, '#' comments); every field
// has a default so partial files are fine.
struct ExperimentConfig {
    std::string name = "custom";

    SystemSpec system = SystemSpec::tripling_map();
    ObservableKind observable = ObservableKind::identity;

    std::vector<double> radii;  // strictly decreasing
    std::vector<std::int64_t> p_schedule{0, 10, 100, 1000};
    std::int64_t horizon = 1'000'000;

    std::size_t cloud_size = 100'000;
    SampleMode cloud_mode = SampleMode::iid;
    std::size_t probes = 50;
    std::size_t min_count = 50;
    std::vector<double> dim_radii;  // defaults to `radii` when empty

    TestFunctionKind phi = TestFunctionKind::coordinate;
    TestFunctionKind psi = TestFunctionKind::coordinate;
    std::int64_t corr_n_max = 12;
    std::size_t corr_samples = 1'000'000;
    std::vector<double> corr_p_list{1, 2, 4, 8};

    std::size_t starts = 30;
    StartFilter start_filter = StartFilter::none;
    std::size_t workers = 1;
    std::filesystem::path out_dir = "out";

    ExperimentConfig();  // fills the default radius grid 2^-4 .. 2^-14

    const std::vector<double>& dimension_radii() const {
        return dim_radii.empty() ? radii : dim_radii;
    }
};

// Power-of-two grid 2^-lo .. 2^-hi (decreasing), lo <= hi.
std::vector<double> pow2_radii(int lo, int hi);

// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical echo of a configuration, parseable by parse_config.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace recobs

#endif
