#ifndef RECOBS_DYNAMICS_HPP
#define RECOBS_DYNAMICS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "recobs/errors.hpp"
#include "recobs/rng.hpp"
#include "recobs/vecn.hpp"

namespace recobs {

// Bundled measure-preserving systems.
//
//   tripling  x -> 3x mod 1 on [0,1), invariant measure Lebesgue
//   cat       (x,y) -> (2x+y, x+y) mod 1 on T^2, invariant measure Lebesgue
//   skew      (w, y) -> (shift w, y + phi(w)) on {0,1}^N x T^1 where
//             phi(w) = alpha if w_0 = 1 else 0, invariant measure
//             Bernoulli(q) (x) Lebesgue
//   identity  x -> x on [0,1)
//
// Tripling rather than doubling: in binary floating point the doubling map
// reaches 0 after ~52 steps, while 3x mod 1 keeps the mantissa full and
// rounding acts as benign noise on desk-scale orbits.
enum class SystemKind { tripling, cat, skew, identity };

std::string to_string(SystemKind k);

// Lazily realized symbol sequence in {0,1}^N. Symbols come from a
// counter-based hash of (seed, absolute index), so a stream costs O(1)
// memory, is random-access, and the shift is a cursor increment.
struct SymbolStream {
    std::uint64_t seed = 0;
    std::uint64_t cursor = 0;
};

struct IntervalPoint {
    double x = 0.0;
};
struct TorusPoint {
    double x = 0.0, y = 0.0;
};
struct SkewPoint {
    SymbolStream stream;
    double y = 0.0;  // fiber coordinate on T^1
};

using SystemState = std::variant<IntervalPoint, TorusPoint, SkewPoint>;

struct SystemSpec {
    SystemKind kind = SystemKind::tripling;
    // Skew parameters. alpha defaults to the golden mean (sqrt(5)-1)/2,
    // a badly approximable rotation amount; q is the Bernoulli parameter
    // of the base measure, and the distinguished cylinder is {w_0 = 1},
    // so 0 < q < 1 makes 0 < nu(A) < 1.
    double alpha = 0.61803398874989484820;
    double q = 0.5;
    std::uint64_t seed = 0;

    static SystemSpec tripling_map(std::uint64_t seed = 0);
    static SystemSpec cat_map(std::uint64_t seed = 0);
    static SystemSpec identity_map(std::uint64_t seed = 0);
    static SystemSpec skew_product(double alpha, double q, std::uint64_t seed = 0);
};

// Throws ConfigError if parameters are outside their domains (alpha must not
// be p/q with q <= 10^6 to working precision, q must lie in (0,1)).
void validate(const SystemSpec& spec);

// Symbol at position cursor+offset of the stream, under Bernoulli(q).
bool symbol_at(const SymbolStream& s, std::uint64_t offset, double q);

// One application of T. Deterministic; throws PhaseSpaceError when the state
// does not belong to the phase space of `spec`.
SystemState step(const SystemSpec& spec, const SystemState& s);

// M independent draws from the invariant measure, deterministic in `seed`.
std::vector<SystemState> sample_invariant(const SystemSpec& spec, std::uint64_t seed,
                                          std::size_t M);

// q_k(w) = #{ i in [0,k) : w_i = 1 }, counted from the stream's cursor.
std::uint64_t visit_count(const SystemSpec& spec, const SkewPoint& w, std::uint64_t k);

}  // namespace recobs

#endif
