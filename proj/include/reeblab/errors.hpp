#pragma once

#include <stdexcept>
#include <string>

namespace reeblab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed call-site input (dimension mismatches and the like).
struct InputError : Error {
    using Error::Error;
};

// Construction-time validation failure (catalog parameters, symmetry data).
struct ParameterError : Error {
    using Error::Error;
};

// A requested operation does not apply to the given structure kind.
struct UnsupportedStructureError : Error {
    using Error::Error;
};

// Event search exhausted its horizon without a hit.
struct NotFoundError : Error {
    using Error::Error;
};

// A loop/orbit has nonzero winding and admits no filling disc.
struct ContractibilityError : Error {
    using Error::Error;
};

// Stabilizing form failed positivity along an orbit.
struct InvalidStabilizationError : Error {
    using Error::Error;
};

// Newton system singular beyond the expected orbit degeneracies.
struct RankDeficiencyError : Error {
    RankDeficiencyError(const std::string& what, int kernel_dim)
        : Error(what), kernel_dimension(kernel_dim) {}
    int kernel_dimension;
};

// Frame for a restricted return map too ill-conditioned to trust.
struct ConditioningError : Error {
    ConditioningError(const std::string& what, double cond)
        : Error(what), condition_number(cond) {}
    double condition_number;
};

// Configuration rejected by the strict schema; carries the offending key.
struct ConfigError : Error {
    ConfigError(const std::string& what, std::string key = "")
        : Error(what), key_path(std::move(key)) {}
    std::string key_path;
};

}  // namespace reeblab
