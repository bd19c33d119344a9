#include "recobs/dynamics.hpp"

#include <cmath>

namespace recobs {

namespace {

constexpr std::uint64_t kStreamSalt = 0x5b3c0a9d2f81e647ULL;
constexpr std::uint64_t kFiberSalt = 0x9172f30bd6c45a1dULL;

[[noreturn]] void wrong_space(const SystemSpec& spec) {
    throw PhaseSpaceError("state does not match phase space of system '" +
                          to_string(spec.kind) + "'");
}

}  // namespace

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::tripling: return "tripling";
        case SystemKind::cat: return "cat";
        case SystemKind::skew: return "skew";
        case SystemKind::identity: return "identity";
    }
    return "?";
}

SystemSpec SystemSpec::tripling_map(std::uint64_t seed) {
    SystemSpec s;
    s.kind = SystemKind::tripling;
    s.seed = seed;
    return s;
}

SystemSpec SystemSpec::cat_map(std::uint64_t seed) {
    SystemSpec s;
    s.kind = SystemKind::cat;
    s.seed = seed;
    return s;
}

SystemSpec SystemSpec::identity_map(std::uint64_t seed) {
    SystemSpec s;
    s.kind = SystemKind::identity;
    s.seed = seed;
    return s;
}

SystemSpec SystemSpec::skew_product(double alpha, double q, std::uint64_t seed) {
    SystemSpec s;
    s.kind = SystemKind::skew;
    s.alpha = alpha;
    s.q = q;
    s.seed = seed;
    validate(s);
    return s;
}

void validate(const SystemSpec& spec) {
    if (spec.kind != SystemKind::skew) return;
    if (!(spec.q > 0.0 && spec.q < 1.0))
        throw ConfigError("system.q", "Bernoulli parameter must lie in (0,1)");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw ConfigError("system.alpha", "rotation amount must lie in (0,1)");
    // Reject alpha representable as p/q with q <= 10^6: a rational rotation
    // makes ||q alpha|| vanish and the fiber dynamics periodic. 1e-15 sits
    // between the rounding error of a rational entered as a double (~7e-17)
    // and the closest any badly approximable alpha gets (~6e-13 at q=10^6).
    double a = spec.alpha;
    for (long den = 1; den <= 1000000; ++den) {
        double q_d = static_cast<double>(den);
        double num = std::round(a * q_d);
        if (std::fabs(a - num / q_d) < 1e-15)
            throw ConfigError("system.alpha",
                              "rotation amount is rational to working precision (den " +
                                  std::to_string(den) + ")");
    }
}

bool symbol_at(const SymbolStream& s, std::uint64_t offset, double q) {
    return rng::u01(rng::mix(s.seed, s.cursor + offset)) < q;
}

SystemState step(const SystemSpec& spec, const SystemState& s) {
    switch (spec.kind) {
        case SystemKind::tripling: {
            const auto* p = std::get_if<IntervalPoint>(&s);
            if (!p) wrong_space(spec);
            return IntervalPoint{wrap01(3.0 * p->x)};
        }
        case SystemKind::identity: {
            const auto* p = std::get_if<IntervalPoint>(&s);
            if (!p) wrong_space(spec);
            return *p;
        }
        case SystemKind::cat: {
            const auto* p = std::get_if<TorusPoint>(&s);
            if (!p) wrong_space(spec);
            return TorusPoint{wrap01(2.0 * p->x + p->y), wrap01(p->x + p->y)};
        }
        case SystemKind::skew: {
            const auto* p = std::get_if<SkewPoint>(&s);
            if (!p) wrong_space(spec);
            SkewPoint next = *p;
            if (symbol_at(p->stream, 0, spec.q)) next.y = wrap01(p->y + spec.alpha);
            // w not in A: the fiber is left untouched (bit-exact).
            next.stream.cursor = p->stream.cursor + 1;
            return next;
        }
    }
    wrong_space(spec);
}

std::vector<SystemState> sample_invariant(const SystemSpec& spec, std::uint64_t seed,
                                          std::size_t M) {
    if (M < 1) throw ArgumentError("sample_invariant: M must be >= 1");
    std::vector<SystemState> out;
    out.reserve(M);
    for (std::size_t i = 0; i < M; ++i) {
        switch (spec.kind) {
            case SystemKind::tripling:
            case SystemKind::identity:
                out.emplace_back(IntervalPoint{rng::u01(rng::mix(seed, 2 * i))});
                break;
            case SystemKind::cat:
                out.emplace_back(TorusPoint{rng::u01(rng::mix(seed, 2 * i)),
                                            rng::u01(rng::mix(seed, 2 * i + 1))});
                break;
            case SystemKind::skew: {
                SkewPoint p;
                p.stream.seed = rng::mix(seed ^ kStreamSalt, i);
                p.stream.cursor = 0;
                p.y = rng::u01(rng::mix(seed ^ kFiberSalt, i));
                out.emplace_back(p);
                break;
            }
        }
    }
    return out;
}

std::uint64_t visit_count(const SystemSpec& spec, const SkewPoint& w, std::uint64_t k) {
    if (spec.kind != SystemKind::skew) wrong_space(spec);
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < k; ++i)
        if (symbol_at(w.stream, i, spec.q)) ++count;
    return count;
}

}  // namespace recobs
