#ifndef RECOBS_ORBIT_HPP
#define RECOBS_ORBIT_HPP

#include <cstddef>
#include <vector>

#include "recobs/dynamics.hpp"
#include "recobs/observables.hpp"

namespace recobs {

// Materialized observed orbit: values[k] = f(T^k x0) for k = 0..n.
struct OrbitBuffer {
    SystemState start;
    SystemSpec spec;
    std::vector<VecN> values;  // n+1 entries
};

// In-memory orbit budget; longer orbits must stream instead.
inline constexpr std::size_t kMaxOrbitValues = 64'000'000;

// Throws AllocationLimitError when n+1 values would exceed the budget.
OrbitBuffer orbit_observed(const SystemSpec& spec, const Observable& obs,
                           const SystemState& x0, std::size_t n);

}  // namespace recobs

#endif
