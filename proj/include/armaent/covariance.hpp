#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "armaent/realization.hpp"

namespace armaent {

enum class CovMethod { lyapunov, series };

/**
 * @brief Stationary second-order description of the output process.
 *
 * `phi` holds the output autocovariances Phi(0..tau_max); negative lags are
 * Phi(-tau) = Phi(tau)'. The full information-vector covariance is kept only
 * when the Kronecker/vec solve produced it. `residual` is the relative solve
 * residual for the lyapunov method and the certified series tail for the
 * series method.
 */
struct StationaryCovariance {
    std::optional<Mat> phi_tilde0;
    std::vector<Mat> phi;
    CovMethod method = CovMethod::lyapunov;
    double residual = 0.0;

    const Mat& phi0() const { return phi.front(); }
};

/// Dense solve cap: the linear system has (d m)^2 unknowns.
inline constexpr std::size_t lyapunov_dim_cap = 60;

namespace detail {

inline void require_finite_covariance(const ArmaControlModel& m, const char* op) {
    if (m.control.kind == Family::cauchy || m.noise.kind == Family::cauchy)
        throw family_error(std::string(op) +
                           ": Cauchy residuals have no finite covariance, bound unavailable");
}

inline Mat symmetrized(const Mat& a) {
    Mat s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

inline StationaryCovariance degenerate_covariance(const ArmaControlModel& m, CovMethod method) {
    StationaryCovariance cov;
    cov.method = method;
    cov.phi.push_back(m.control.scale + m.noise.scale); // x = u + w, one exact term
    cov.phi_tilde0 = cov.phi.front();
    cov.residual = 0.0;
    return cov;
}

// Lagged series sum Phi(tau) = sum_j (M_{j+tau} S_u M_j' + M*_{j+tau} S_w M*_j').
inline Mat series_lag(const ImpulseResponse& ir, const Mat& su, const Mat& sw,
                      std::size_t tau) {
    const std::size_t d = su.rows();
    Mat phi(d, d);
    for (std::size_t j = 0; j + tau < ir.M.size(); ++j) {
        phi += ir.M[j + tau] * su * ir.M[j].transposed();
        phi += ir.Mstar[j + tau] * sw * ir.Mstar[j].transposed();
    }
    return phi;
}

} // namespace detail

/**
 * @brief Exact stationary covariance through the Kronecker/vec linear solve
 *        (I - theta (x) theta) vec(Phi~) = vec(J1 S_u J1' + J2 S_w J2').
 *
 * Returns Phi(0..p-1) extracted from the leading block grid of Phi~.
 */
inline StationaryCovariance covariance_lyapunov(const ArmaControlModel& m) {
    require_valid(m);
    detail::require_finite_covariance(m, "covariance_lyapunov");
    if (m.p + m.r + m.q == 0) return detail::degenerate_covariance(m, CovMethod::lyapunov);
    require_stable(m);

    const CompanionRealization c = build_companion(m);
    const std::size_t n = c.theta.rows();
    if (n > lyapunov_dim_cap)
        throw size_error("covariance_lyapunov: d(p+r+q) = " + std::to_string(n) +
                         " exceeds the cap " + std::to_string(lyapunov_dim_cap) +
                         "; the dense solve is (dm)^2 x (dm)^2");

    const Mat s_embed = c.sel_J1 * m.control.scale * c.sel_J1.transposed() +
                        c.sel_J2 * m.noise.scale * c.sel_J2.transposed();
    Mat system = kron(c.theta, c.theta);
    for (std::size_t k = 0; k < system.rows(); ++k) {
        for (std::size_t l = 0; l < system.cols(); ++l) system(k, l) = -system(k, l);
        system(k, k) += 1.0;
    }
    const Mat rhs = vec(s_embed);
    const Mat x = solve(system, rhs);
    const Mat defect = system * x - rhs;

    StationaryCovariance cov;
    cov.method = CovMethod::lyapunov;
    cov.residual = defect.frobenius_norm() / rhs.frobenius_norm();
    Mat phi_tilde = detail::symmetrized(unvec(x, n));
    for (std::size_t tau = 0; tau < c.p; ++tau)
        cov.phi.push_back(phi_tilde.block(0, tau * m.d, m.d, m.d));
    cov.phi[0] = detail::symmetrized(cov.phi[0]);
    cov.phi_tilde0 = std::move(phi_tilde);
    return cov;
}

/**
 * @brief Stationary covariance by the truncated moving-average series
 *        Phi(0) = sum_j (M_j S_u M_j' + M*_j S_w M*_j'),
 * truncated so the certified tail of the discarded covariance mass is
 * below `tol`.
 */
inline StationaryCovariance covariance_series(const ArmaControlModel& m, double tol = 1e-10,
                                              std::size_t tau_max = 0) {
    require_valid(m);
    detail::require_finite_covariance(m, "covariance_series");
    if (m.p + m.r + m.q == 0) {
        StationaryCovariance cov = detail::degenerate_covariance(m, CovMethod::series);
        while (cov.phi.size() <= tau_max) cov.phi.push_back(Mat(m.d, m.d));
        return cov;
    }

    const double s_norm = m.control.scale.frobenius_norm() + m.noise.scale.frobenius_norm();
    double impulse_tol = tol;
    ImpulseResponse ir;
    double cov_tail = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        ir = impulse_response(m, impulse_tol);
        const double rho = ir.envelope_rho;
        cov_tail = s_norm * ir.envelope_coeff * ir.envelope_coeff *
                   std::pow(rho, 2.0 * static_cast<double>(ir.truncation + 1)) /
                   (1.0 - rho * rho);
        if (cov_tail < tol) break;
        impulse_tol /= 16.0;
    }
    if (!(cov_tail < tol))
        throw numeric_error("covariance_series: could not certify the requested tolerance");

    StationaryCovariance cov;
    cov.method = CovMethod::series;
    cov.residual = cov_tail;
    cov.phi.push_back(detail::symmetrized(detail::series_lag(ir, m.control.scale,
                                                             m.noise.scale, 0)));
    for (std::size_t tau = 1; tau <= tau_max; ++tau)
        cov.phi.push_back(detail::series_lag(ir, m.control.scale, m.noise.scale, tau));
    return cov;
}

/**
 * @brief Autocovariances Phi(0..tau_max).
 *
 * Lags below the AR block count come from the Kronecker/vec solve; lags in
 * the gap up to max(r, q) come from the lagged series; beyond both, the
 * recursion Phi(tau) = sum A_i Phi(tau-i) extends the sequence.
 */
inline StationaryCovariance autocovariance(const ArmaControlModel& m, std::size_t tau_max,
                                           double tol = 1e-10) {
    StationaryCovariance cov = covariance_lyapunov(m);
    if (m.p + m.r + m.q == 0) {
        while (cov.phi.size() <= tau_max) cov.phi.push_back(Mat(m.d, m.d));
        return cov;
    }
    const std::size_t ma_order = std::max(m.r, m.q);
    if (cov.phi.size() > tau_max + 1) cov.phi.resize(tau_max + 1);

    std::optional<ImpulseResponse> ir;
    while (cov.phi.size() <= tau_max) {
        const std::size_t tau = cov.phi.size();
        if (tau <= ma_order) {
            if (!ir) ir = impulse_response(m, tol);
            cov.phi.push_back(detail::series_lag(*ir, m.control.scale, m.noise.scale, tau));
            cov.residual = std::max(cov.residual, tol);
        } else {
            cov.phi.push_back(autocov_recursion_step(cov.phi, m.A));
        }
    }
    return cov;
}

} // namespace armaent
