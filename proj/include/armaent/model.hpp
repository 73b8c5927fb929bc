#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "armaent/matrix.hpp"

namespace armaent {

enum class Family { gaussian, cauchy, laplace };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::gaussian: return "gaussian";
        case Family::cauchy: return "cauchy";
        case Family::laplace: return "laplace";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
    if (s == "gaussian") return Family::gaussian;
    if (s == "cauchy") return Family::cauchy;
    if (s == "laplace") return Family::laplace;
    return std::nullopt;
}

/// Residual process description: covariance matrix for the Gaussian and
/// Laplace families, scale matrix for Cauchy.
struct ResidualFamily {
    Family kind = Family::gaussian;
    Mat scale;
};

/**
 * @brief The linear stochastic control system
 *
 *   x(t) = sum_{i=1..p} A_i x(t-i) + sum_{j=0..r} B_j u(t-j)
 *                                  + sum_{k=0..q} D_k w(t-k)
 *
 * with B_0 = D_0 = I implied (never stored), zero-mean residuals, and the
 * control u and noise w independent white processes.
 */
struct ArmaControlModel {
    std::size_t d = 0; ///< state dimension
    std::size_t p = 0; ///< autoregressive order
    std::size_t r = 0; ///< control moving-average order
    std::size_t q = 0; ///< noise moving-average order
    std::vector<Mat> A; ///< A_1..A_p
    std::vector<Mat> B; ///< B_1..B_r
    std::vector<Mat> D; ///< D_1..D_q
    ResidualFamily control;
    ResidualFamily noise;
};

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline void check_coeff_list(const std::vector<Mat>& ms, std::size_t count, std::size_t d,
                             const std::string& name, std::size_t order_field,
                             ValidationReport& rep) {
    if (ms.size() != count) {
        rep.violations.push_back({name, "expected " + std::to_string(count) + " matrices, got " +
                                            std::to_string(ms.size())});
        (void)order_field;
        return;
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string field = name + "[" + std::to_string(i) + "]";
        if (ms[i].rows() != d || ms[i].cols() != d) {
            rep.violations.push_back({field, "dimension mismatch: expected " + std::to_string(d) +
                                                 "x" + std::to_string(d)});
            continue;
        }
        if (!ms[i].all_finite()) rep.violations.push_back({field, "non-finite entry"});
    }
}

inline void check_scale(const Mat& s, std::size_t d, const std::string& field,
                        ValidationReport& rep) {
    if (s.rows() != d || s.cols() != d) {
        rep.violations.push_back({field, "dimension mismatch: expected " + std::to_string(d) +
                                             "x" + std::to_string(d)});
        return;
    }
    if (!s.all_finite()) {
        rep.violations.push_back({field, "non-finite entry"});
        return;
    }
    const double scale = std::max(1.0, s.max_abs());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(s(i, j) - s(j, i)) > 1e-10 * scale) {
                rep.violations.push_back({field, "scale not symmetric"});
                return;
            }
    try {
        spd_factor(s);
    } catch (const domain_error&) {
        rep.violations.push_back({field, "scale not positive definite"});
    }
}

} // namespace detail

/// Structural validation of a model; every violation names the offending
/// field. Side-effect free and idempotent.
inline ValidationReport validate(const ArmaControlModel& m) {
    ValidationReport rep;
    if (m.d < 1) {
        rep.violations.push_back({"d", "state dimension must be >= 1"});
        return rep;
    }
    detail::check_coeff_list(m.A, m.p, m.d, "A", m.p, rep);
    detail::check_coeff_list(m.B, m.r, m.d, "B", m.r, rep);
    detail::check_coeff_list(m.D, m.q, m.d, "D", m.q, rep);
    detail::check_scale(m.control.scale, m.d, "S_u", rep);
    detail::check_scale(m.noise.scale, m.d, "S_w", rep);
    if (m.control.kind != m.noise.kind)
        rep.violations.push_back(
            {"family", std::string("mixed residual families rejected: control is ") +
                           family_name(m.control.kind) + ", noise is " +
                           family_name(m.noise.kind)});
    return rep;
}

/// Throwing wrapper over validate() for call sites that need a valid model.
inline void require_valid(const ArmaControlModel& m) {
    const ValidationReport rep = validate(m);
    if (!rep.ok())
        throw std::invalid_argument("invalid model: " + rep.violations.front().field + ": " +
                                    rep.violations.front().message);
}

/// Strict inequalities in the stability definition get a numeric cushion.
inline constexpr double stability_margin = 1e-9;

/// The autoregressive companion block: top block-row [A_1 ... A_p] with
/// identity blocks on the subdiagonal (dp x dp, requires p >= 1).
inline Mat companion_ar_block(const ArmaControlModel& m) {
    const std::size_t d = m.d, p = m.p;
    Mat t11(d * p, d * p);
    for (std::size_t i = 0; i < p; ++i) t11.set_block(0, i * d, m.A[i]);
    for (std::size_t i = 1; i < p; ++i) t11.set_block(i * d, (i - 1) * d, Mat::identity(d));
    return t11;
}

struct StabilityVerdict {
    bool stable = false;
    double spectral_radius = 0.0;
};

/// Stability of the output process: the companion AR block must have
/// spectral radius < 1 (finite moving averages are always stable).
inline StabilityVerdict is_stable(const ArmaControlModel& m) {
    if (m.p == 0) return {true, 0.0};
    const double rho = spectral_radius(companion_ar_block(m));
    return {rho < 1.0 - stability_margin, rho};
}

inline void require_stable(const ArmaControlModel& m) {
    const StabilityVerdict v = is_stable(m);
    if (!v.stable)
        throw stability_error("unstable: spectral radius " + std::to_string(v.spectral_radius));
}

} // namespace armaent
