#include "recobs/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "recobs/csvio.hpp"

namespace recobs {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_num(const std::string& field, const std::string& v) {
    double x = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError(field, "'" + v + "' is not a number");
    return x;
}

std::int64_t parse_int(const std::string& field, const std::string& v) {
    std::int64_t x = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError(field, "'" + v + "' is not an integer");
    return x;
}

std::vector<double> parse_num_list(const std::string& field, const std::string& v) {
    std::vector<double> out;
    for (const auto& tok : split(v, ','))
        if (!tok.empty()) out.push_back(parse_num(field, tok));
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& field, const std::string& v) {
    std::vector<std::int64_t> out;
    for (const auto& tok : split(v, ','))
        if (!tok.empty()) out.push_back(parse_int(field, tok));
    return out;
}

// "4..14" -> 2^-4 .. 2^-14
std::vector<double> parse_pow2_range(const std::string& field, const std::string& v) {
    std::size_t pos = v.find("..");
    if (pos == std::string::npos)
        throw ConfigError(field, "expected 'lo..hi', got '" + v + "'");
    int lo = static_cast<int>(parse_int(field, trim(v.substr(0, pos))));
    int hi = static_cast<int>(parse_int(field, trim(v.substr(pos + 2))));
    if (lo > hi) throw ConfigError(field, "range is empty");
    return pow2_radii(lo, hi);
}

SystemKind parse_system_kind(const std::string& v) {
    if (v == "tripling") return SystemKind::tripling;
    if (v == "cat") return SystemKind::cat;
    if (v == "skew") return SystemKind::skew;
    if (v == "identity") return SystemKind::identity;
    throw ConfigError("system.kind", "unknown system '" + v + "'");
}

ObservableKind parse_observable_kind(const std::string& v) {
    if (v == "identity") return ObservableKind::identity;
    if (v == "projection") return ObservableKind::projection;
    if (v == "circle_embedding") return ObservableKind::circle_embedding;
    if (v == "smooth_constant") return ObservableKind::smooth_constant;
    if (v == "smooth_shear") return ObservableKind::smooth_shear;
    if (v == "smooth_identity") return ObservableKind::smooth_identity;
    if (v == "smooth_parabola") return ObservableKind::smooth_parabola;
    throw ConfigError("observable.kind", "unknown observable '" + v + "'");
}

TestFunctionKind parse_testfn(const std::string& field, const std::string& v) {
    if (v == "coordinate") return TestFunctionKind::coordinate;
    if (v == "cosine") return TestFunctionKind::cosine;
    throw ConfigError(field, "unknown test function '" + v + "'");
}

}  // namespace

std::string to_string(StartFilter f) {
    return f == StartFilter::none ? "none" : "omega_not_in_A";
}

ExperimentConfig::ExperimentConfig() : radii(pow2_radii(4, 14)) {}

std::vector<double> pow2_radii(int lo, int hi) {
    std::vector<double> out;
    for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, -k));
    return out;
}

void validate(const ExperimentConfig& cfg) {
    validate(cfg.system);

    auto check_radii = [](const std::string& field, const std::vector<double>& radii) {
        if (radii.empty()) throw ConfigError(field, "no radii given");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] > 0.0))
                throw ConfigError(field, "radius " + csv::fmt(radii[i]) + " is not positive");
            if (i > 0 && !(radii[i] < radii[i - 1]))
                throw ConfigError(field, "radii must be strictly decreasing");
        }
    };
    check_radii("recurrence.radii", cfg.radii);
    check_radii("dimension.radii", cfg.dimension_radii());

    if (cfg.p_schedule.empty()) throw ConfigError("recurrence.p_schedule", "empty schedule");
    for (std::size_t i = 0; i < cfg.p_schedule.size(); ++i) {
        if (cfg.p_schedule[i] < 0)
            throw ConfigError("recurrence.p_schedule", "p must be >= 0");
        if (i > 0 && cfg.p_schedule[i] <= cfg.p_schedule[i - 1])
            throw ConfigError("recurrence.p_schedule", "schedule must be strictly increasing");
    }
    if (cfg.horizon <= cfg.p_schedule.back())
        throw ConfigError("recurrence.horizon", "horizon must exceed the largest p");

    if (cfg.cloud_size < 1) throw ConfigError("dimension.cloud_size", "must be >= 1");
    if (cfg.probes < 1) throw ConfigError("dimension.probes", "must be >= 1");
    if (cfg.min_count < 1) throw ConfigError("dimension.min_count", "must be >= 1");

    if (cfg.corr_n_max < 2) throw ConfigError("correlations.n_max", "must be >= 2");
    if (cfg.corr_samples < 1000) throw ConfigError("correlations.samples", "must be >= 1000");
    for (double p : cfg.corr_p_list)
        if (!(p > 0.0)) throw ConfigError("correlations.p_list", "exponents must be > 0");

    if (cfg.starts < 1) throw ConfigError("experiment.starts", "must be >= 1");
    if (cfg.workers < 1) throw ConfigError("experiment.workers", "must be >= 1");
    if (cfg.start_filter == StartFilter::omega_not_in_A &&
        cfg.system.kind != SystemKind::skew)
        throw ConfigError("experiment.start_filter",
                          "omega_not_in_A only applies to the skew system");
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.radii.clear();  // distinguish "not set" from the default below

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    bool dim_radii_set = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno), "unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::string field = section + "." + key;

        if (section == "system") {
            if (key == "kind") cfg.system.kind = parse_system_kind(value);
            else if (key == "alpha") cfg.system.alpha = parse_num(field, value);
            else if (key == "q") cfg.system.q = parse_num(field, value);
            else if (key == "seed")
                cfg.system.seed = static_cast<std::uint64_t>(parse_int(field, value));
            else throw ConfigError(field, "unknown key");
        } else if (section == "observable") {
            if (key == "kind") cfg.observable = parse_observable_kind(value);
            else throw ConfigError(field, "unknown key");
        } else if (section == "recurrence") {
            if (key == "radii") cfg.radii = parse_num_list(field, value);
            else if (key == "radii_pow2") cfg.radii = parse_pow2_range(field, value);
            else if (key == "p_schedule") cfg.p_schedule = parse_int_list(field, value);
            else if (key == "horizon") cfg.horizon = parse_int(field, value);
            else throw ConfigError(field, "unknown key");
        } else if (section == "dimension") {
            if (key == "cloud_size")
                cfg.cloud_size = static_cast<std::size_t>(parse_int(field, value));
            else if (key == "cloud_mode") {
                if (value == "iid") cfg.cloud_mode = SampleMode::iid;
                else if (value == "orbit") cfg.cloud_mode = SampleMode::orbit;
                else throw ConfigError(field, "expected iid or orbit");
            } else if (key == "probes")
                cfg.probes = static_cast<std::size_t>(parse_int(field, value));
            else if (key == "min_count")
                cfg.min_count = static_cast<std::size_t>(parse_int(field, value));
            else if (key == "radii") {
                cfg.dim_radii = parse_num_list(field, value);
                dim_radii_set = true;
            } else if (key == "radii_pow2") {
                cfg.dim_radii = parse_pow2_range(field, value);
                dim_radii_set = true;
            } else throw ConfigError(field, "unknown key");
        } else if (section == "correlations") {
            if (key == "phi") cfg.phi = parse_testfn(field, value);
            else if (key == "psi") cfg.psi = parse_testfn(field, value);
            else if (key == "n_max") cfg.corr_n_max = parse_int(field, value);
            else if (key == "samples")
                cfg.corr_samples = static_cast<std::size_t>(parse_int(field, value));
            else if (key == "p_list") cfg.corr_p_list = parse_num_list(field, value);
            else throw ConfigError(field, "unknown key");
        } else if (section == "experiment") {
            if (key == "name") cfg.name = value;
            else if (key == "starts")
                cfg.starts = static_cast<std::size_t>(parse_int(field, value));
            else if (key == "start_filter") {
                if (value == "none") cfg.start_filter = StartFilter::none;
                else if (value == "omega_not_in_A")
                    cfg.start_filter = StartFilter::omega_not_in_A;
                else throw ConfigError(field, "expected none or omega_not_in_A");
            } else if (key == "workers")
                cfg.workers = static_cast<std::size_t>(parse_int(field, value));
            else if (key == "out_dir") cfg.out_dir = value;
            else throw ConfigError(field, "unknown key");
        } else {
            throw ConfigError(section.empty() ? key : field,
                              "key outside any known section");
        }
    }
    if (cfg.radii.empty()) cfg.radii = pow2_radii(4, 14);
    if (!dim_radii_set) cfg.dim_radii.clear();
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("file", "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    auto list_num = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += csv::fmt(v[i]);
        }
        return s;
    };
    auto list_int = [](const std::vector<std::int64_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v[i]);
        }
        return s;
    };
    out << "[system]\n";
    out << "kind = " << to_string(cfg.system.kind) << "\n";
    if (cfg.system.kind == SystemKind::skew) {
        out << "alpha = " << csv::fmt(cfg.system.alpha) << "\n";
        out << "q = " << csv::fmt(cfg.system.q) << "\n";
    }
    out << "seed = " << cfg.system.seed << "\n\n";
    out << "[observable]\n";
    out << "kind = " << to_string(cfg.observable) << "\n\n";
    out << "[recurrence]\n";
    out << "radii = " << list_num(cfg.radii) << "\n";
    out << "p_schedule = " << list_int(cfg.p_schedule) << "\n";
    out << "horizon = " << cfg.horizon << "\n\n";
    out << "[dimension]\n";
    out << "cloud_size = " << cfg.cloud_size << "\n";
    out << "cloud_mode = " << to_string(cfg.cloud_mode) << "\n";
    out << "probes = " << cfg.probes << "\n";
    out << "min_count = " << cfg.min_count << "\n";
    if (!cfg.dim_radii.empty()) out << "radii = " << list_num(cfg.dim_radii) << "\n";
    out << "\n[correlations]\n";
    out << "phi = " << to_string(cfg.phi) << "\n";
    out << "psi = " << to_string(cfg.psi) << "\n";
    out << "n_max = " << cfg.corr_n_max << "\n";
    out << "samples = " << cfg.corr_samples << "\n";
    out << "p_list = " << list_num(cfg.corr_p_list) << "\n\n";
    out << "[experiment]\n";
    out << "name = " << cfg.name << "\n";
    out << "starts = " << cfg.starts << "\n";
    out << "start_filter = " << to_string(cfg.start_filter) << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "out_dir = " << cfg.out_dir.string() << "\n";
    return out.str();
}

}  // namespace recobs
