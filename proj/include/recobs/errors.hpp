#ifndef RECOBS_ERRORS_HPP
#define RECOBS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace recobs {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A state was fed to a map or observable defined on a different phase space.
struct PhaseSpaceError : Error {
    explicit PhaseSpaceError(const std::string& what) : Error(what) {}
};

// Bad argument values (violated preconditions).
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

// Too few usable data points for an estimate. Carries the largest radius
// that was still usable, when that is meaningful (NaN otherwise).
struct InsufficientDataError : Error {
    double largest_usable_radius;
    InsufficientDataError(const std::string& what, double largest_usable)
        : Error(what), largest_usable_radius(largest_usable) {}
};

// A scan failed to locate the requested quantity within its search bound.
struct NotFoundError : Error {
    explicit NotFoundError(const std::string& what) : Error(what) {}
};

// A quantity violated an invariant that should hold by construction.
struct InvariantError : Error {
    explicit InvariantError(const std::string& what) : Error(what) {}
};

// Requested allocation exceeds the in-memory orbit budget.
struct AllocationLimitError : Error {
    explicit AllocationLimitError(const std::string& what) : Error(what) {}
};

// Configuration file / experiment setup problems. Carries the field name.
struct ConfigError : Error {
    std::string field;
    ConfigError(const std::string& field_, const std::string& what)
        : Error("config error [" + field_ + "]: " + what), field(field_) {}
};

// A ratio whose denominator came out empty/zero.
struct UndefinedRatioError : Error {
    explicit UndefinedRatioError(const std::string& what) : Error(what) {}
};

}  // namespace recobs

#endif
