#pragma once

#include <stdexcept>
#include <string>

namespace armaent {

/// Iterative routine failed to converge, or a linear system is
/// (numerically) singular.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input is outside the mathematical domain of the requested operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Symmetric factorization failed; `pivot` is the first failing pivot index.
struct spd_error : domain_error {
    explicit spd_error(const std::string& msg, std::size_t pivot_index)
        : domain_error(msg), pivot(pivot_index) {}
    std::size_t pivot;
};

/// Operation requires a stable process but the model is not stable.
struct stability_error : domain_error {
    using domain_error::domain_error;
};

/// Operation requires a residual family with finite second moments.
struct family_error : domain_error {
    using domain_error::domain_error;
};

/// Problem size exceeds a configured cap.
struct size_error : domain_error {
    using domain_error::domain_error;
};

} // namespace armaent
