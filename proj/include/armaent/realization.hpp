#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "armaent/model.hpp"

namespace armaent {

/**
 * @brief First-order companion embedding of the control system.
 *
 * The information vector stacks x(t..t-p+1), u(t..t-r+1), w(t..t-q+1) and
 * evolves as X(t) = theta X(t-1) + J1 u(t) + J2 w(t). A pure moving-average
 * model (p = 0) is lifted to an explicit zero AR block so the embedding and
 * its selector identities hold unchanged.
 */
struct CompanionRealization {
    std::size_t d = 0;
    std::size_t p = 0; ///< effective AR block count (>= 1 after lifting)
    std::size_t r = 0;
    std::size_t q = 0;
    Mat theta;   ///< d*m x d*m, m = p + r + q
    Mat sel_I;   ///< d x d*m, extracts x(t)
    Mat sel_J1;  ///< d*m x d, injects u(t)
    Mat sel_J2;  ///< d*m x d, injects w(t)

    std::size_t block_count() const { return p + r + q; }
    Mat theta11() const { return theta.block(0, 0, d * p, d * p); }
};

inline CompanionRealization build_companion(const ArmaControlModel& m) {
    require_valid(m);
    if (m.p + m.r + m.q == 0)
        throw domain_error("build_companion: degenerate model (p = r = q = 0), "
                           "use the direct single-term path");
    CompanionRealization c;
    c.d = m.d;
    c.p = std::max<std::size_t>(m.p, 1);
    c.r = m.r;
    c.q = m.q;
    const std::size_t d = m.d;
    const std::size_t n = d * c.block_count();
    c.theta = Mat(n, n);

    // AR block: top block-row [A_1 .. A_p], identities on the subdiagonal.
    for (std::size_t i = 0; i < m.p; ++i) c.theta.set_block(0, i * d, m.A[i]);
    for (std::size_t i = 1; i < c.p; ++i)
        c.theta.set_block(i * d, (i - 1) * d, Mat::identity(d));
    // MA blocks: [B_1 .. B_r D_1 .. D_q] along the top block-row, with the
    // shift registers for the u and w histories below.
    const std::size_t u0 = c.p;
    for (std::size_t j = 0; j < m.r; ++j) c.theta.set_block(0, (u0 + j) * d, m.B[j]);
    for (std::size_t j = 1; j < m.r; ++j)
        c.theta.set_block((u0 + j) * d, (u0 + j - 1) * d, Mat::identity(d));
    const std::size_t w0 = c.p + c.r;
    for (std::size_t k = 0; k < m.q; ++k) c.theta.set_block(0, (w0 + k) * d, m.D[k]);
    for (std::size_t k = 1; k < m.q; ++k)
        c.theta.set_block((w0 + k) * d, (w0 + k - 1) * d, Mat::identity(d));

    c.sel_I = Mat(d, n);
    c.sel_I.set_block(0, 0, Mat::identity(d));
    c.sel_J1 = Mat(n, d);
    c.sel_J1.set_block(0, 0, Mat::identity(d)); // B_0 = I feeds x(t) directly
    if (c.r >= 1) c.sel_J1.set_block(u0 * d, 0, Mat::identity(d));
    c.sel_J2 = Mat(n, d);
    c.sel_J2.set_block(0, 0, Mat::identity(d)); // D_0 = I likewise
    if (c.q >= 1) c.sel_J2.set_block(w0 * d, 0, Mat::identity(d));
    return c;
}

/// Raw impulse-response recursion M_i = B_i + sum_j A_j M_{i-j} (and the
/// noise-side analogue) for i = 0..count, with coefficients beyond their
/// stated orders treated as zero. M_0 and M*_0 are assigned identities.
inline std::pair<std::vector<Mat>, std::vector<Mat>>
impulse_terms(const ArmaControlModel& m, std::size_t count) {
    std::vector<Mat> M, Ms;
    M.reserve(count + 1);
    Ms.reserve(count + 1);
    M.push_back(Mat::identity(m.d));
    Ms.push_back(Mat::identity(m.d));
    for (std::size_t i = 1; i <= count; ++i) {
        Mat mi = (i <= m.r) ? m.B[i - 1] : Mat(m.d, m.d);
        Mat msi = (i <= m.q) ? m.D[i - 1] : Mat(m.d, m.d);
        for (std::size_t j = 1; j <= std::min(i, m.p); ++j) {
            mi += m.A[j - 1] * M[i - j];
            msi += m.A[j - 1] * Ms[i - j];
        }
        M.push_back(std::move(mi));
        Ms.push_back(std::move(msi));
    }
    return {std::move(M), std::move(Ms)};
}

/**
 * @brief Truncated impulse response with a certified geometric tail bound.
 *
 * tail_bound dominates sum_{j>N} (||M_j||_F + ||M*_j||_F) through the
 * envelope ||M_j||_F <= C rho^j, where rho sits strictly above the companion
 * spectral radius and C is fitted (and re-fitted on violation) over all
 * computed terms plus a lookahead window.
 */
struct ImpulseResponse {
    std::vector<Mat> M;     ///< M_0..M_N
    std::vector<Mat> Mstar; ///< M*_0..M*_N
    std::size_t truncation = 0;
    double tail_bound = 0.0;
    double envelope_coeff = 0.0;
    double envelope_rho = 0.0;
};

namespace detail {

inline void check_companion_powers(const ArmaControlModel& m, const std::vector<Mat>& M,
                                   const std::vector<Mat>& Ms, std::size_t depth) {
    if (m.p + m.r + m.q == 0) return;
    const CompanionRealization c = build_companion(m);
    Mat power = Mat::identity(c.theta.rows());
    for (std::size_t j = 0; j <= depth; ++j) {
        const Mat mj = c.sel_I * power * c.sel_J1;
        const Mat msj = c.sel_I * power * c.sel_J2;
        if ((mj - M[j]).max_abs() > 1e-10 || (msj - Ms[j]).max_abs() > 1e-10)
            throw numeric_error("impulse_response: recursion disagrees with companion powers "
                                "at lag " +
                                std::to_string(j));
        power = power * c.theta;
    }
}

} // namespace detail

inline ImpulseResponse impulse_response(const ArmaControlModel& m, double tol) {
    require_valid(m);
    if (!(tol > 0.0)) throw std::invalid_argument("impulse_response: tol must be positive");
    const StabilityVerdict verdict = is_stable(m);
    if (!verdict.stable)
        throw stability_error("impulse_response: unstable model (spectral radius " +
                              std::to_string(verdict.spectral_radius) + "), series diverges");

    ImpulseResponse ir;
    const double rho = std::max(0.1, verdict.spectral_radius + stability_margin);
    ir.envelope_rho = rho;

    const std::size_t max_order = std::max({m.p, m.r, m.q});
    const std::size_t lookahead = 8 + 2 * std::max({m.p, m.r, m.q, std::size_t(1)});
    const std::size_t hard_cap = 200000;

    std::size_t N = max_order + 1;
    auto [M, Ms] = impulse_terms(m, N + lookahead);
    std::vector<double> norms(M.size());
    for (std::size_t j = 0; j < M.size(); ++j)
        norms[j] = std::max(M[j].frobenius_norm(), Ms[j].frobenius_norm());

    for (;;) {
        double c_env = 0.0;
        double rho_pow = 1.0;
        for (std::size_t j = 0; j < norms.size(); ++j) {
            c_env = std::max(c_env, norms[j] / rho_pow);
            rho_pow *= rho;
        }
        const double tail = 2.0 * c_env * std::pow(rho, static_cast<double>(N + 1)) / (1.0 - rho);
        if (tail < tol) {
            ir.envelope_coeff = c_env;
            ir.tail_bound = tail;
            break;
        }
        if (N >= hard_cap)
            throw numeric_error("impulse_response: truncation did not converge below tol");
        N += std::max<std::size_t>(1, N / 2);
        const std::size_t need = N + lookahead;
        // extend the recursion and the norm table
        const std::size_t old = M.size() - 1;
        auto extended = impulse_terms(m, need);
        M = std::move(extended.first);
        Ms = std::move(extended.second);
        norms.resize(M.size());
        for (std::size_t j = old + 1; j < M.size(); ++j)
            norms[j] = std::max(M[j].frobenius_norm(), Ms[j].frobenius_norm());
    }

    detail::check_companion_powers(m, M, Ms, std::min<std::size_t>(N, 30));

    M.resize(N + 1);
    Ms.resize(N + 1);
    ir.M = std::move(M);
    ir.Mstar = std::move(Ms);
    ir.truncation = N;
    return ir;
}

/**
 * @brief One step of the autocovariance recursion
 *        Phi(tau) = sum_{i=1..p} A_i Phi(tau - i).
 *
 * `phi_history` holds Phi(0..tau-1) in ascending lag order, so tau is its
 * length. Only valid for tau beyond both moving-average orders; enforcing
 * that precondition is the caller's job since the step sees only A.
 */
inline Mat autocov_recursion_step(const std::vector<Mat>& phi_history,
                                  const std::vector<Mat>& A) {
    const std::size_t tau = phi_history.size();
    const std::size_t p = A.size();
    if (tau < p)
        throw std::invalid_argument("autocov_recursion_step: need at least p = " +
                                    std::to_string(p) + " preceding blocks, got " +
                                    std::to_string(tau));
    if (p == 0) {
        if (phi_history.empty())
            throw std::invalid_argument("autocov_recursion_step: empty history");
        const std::size_t d = phi_history.front().rows();
        return Mat(d, d);
    }
    Mat phi = A[0] * phi_history[tau - 1];
    for (std::size_t i = 2; i <= p; ++i) phi += A[i - 1] * phi_history[tau - i];
    return phi;
}

} // namespace armaent
