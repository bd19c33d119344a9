#ifndef RECOBS_RNG_HPP
#define RECOBS_RNG_HPP

#include <cstdint>

namespace recobs::rng {

// SplitMix64 step. Small, fast, and good enough statistically for sampling;
// chosen over std engines so that streams are bit-reproducible everywhere.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless hash of a (key, counter) pair. Used for counter-based symbol
// streams: O(1) memory, random access by index.
inline std::uint64_t mix(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t s = key ^ (counter * 0xd1342543de82ef95ULL);
    std::uint64_t a = splitmix64(s);
    return splitmix64(s) ^ a;
}

// Uniform double in [0,1) from 53 high bits.
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential stream with explicit seeding.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() { return splitmix64(state_); }
    double next_u01() { return u01(next_u64()); }

private:
    std::uint64_t state_;
};

}  // namespace recobs::rng

#endif
