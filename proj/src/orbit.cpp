#include "recobs/orbit.hpp"

#include <string>

namespace recobs {

OrbitBuffer orbit_observed(const SystemSpec& spec, const Observable& obs,
                           const SystemState& x0, std::size_t n) {
    if (n + 1 > kMaxOrbitValues)
        throw AllocationLimitError("orbit_observed: " + std::to_string(n + 1) +
                                   " values exceed the in-memory budget");
    OrbitBuffer buf{x0, spec, {}};
    buf.values.reserve(n + 1);
    SystemState s = x0;
    buf.values.push_back(obs.evaluate(s));
    for (std::size_t k = 1; k <= n; ++k) {
        s = step(spec, s);
        buf.values.push_back(obs.evaluate(s));
    }
    return buf;
}

}  // namespace recobs
