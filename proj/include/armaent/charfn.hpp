#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "armaent/entropy.hpp"

namespace armaent {

/// Characteristic function value at one frequency vector. The residual
/// families here are symmetric and zero mean, so the value is real up to the
/// reported truncation error; it is stored as a complex number for the
/// external interfaces.
struct CharFnValue {
    std::vector<double> s;
    std::complex<double> value;
    double truncation_error = 0.0;
};

namespace detail {

inline void check_frequency(const ArmaControlModel& m, const std::vector<double>& s) {
    if (s.size() != m.d)
        throw std::invalid_argument("charfn: frequency vector length != d");
}

inline double quad_form(const Mat& a, const std::vector<double>& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += s[i] * a(i, j) * s[j];
    return acc;
}

inline double norm2(const std::vector<double>& s) {
    double acc = 0.0;
    for (double x : s) acc += x * x;
    return std::sqrt(acc);
}

} // namespace detail

/// Gaussian output: exp(-s' Phi(0) s / 2) with the exact stationary
/// covariance; the only uncertainty is the linear-solve residual.
inline CharFnValue charfn_gaussian(const ArmaControlModel& m, const std::vector<double>& s) {
    detail::check_frequency(m, s);
    if (m.control.kind != Family::gaussian)
        throw family_error("charfn_gaussian: model is not Gaussian-family");
    const StationaryCovariance cov = covariance_lyapunov(m);
    const double q = detail::quad_form(cov.phi0(), s);
    CharFnValue v;
    v.s = s;
    v.value = std::exp(-0.5 * q);
    v.truncation_error = cov.residual;
    return v;
}

/**
 * @brief Cauchy output: exp of the negated sum of sqrt(s' K_j K_j' s) terms,
 *        truncated with a certified geometric tail below `tol`.
 *
 * When the scale construction is proportional the closed form
 * exp(-sqrt(s' D s)) must agree with the truncated sum; any disagreement
 * beyond the certified slack is an internal fault.
 */
inline CharFnValue charfn_cauchy(const ArmaControlModel& m, const std::vector<double>& s,
                                 double tol = 1e-10) {
    detail::check_frequency(m, s);
    if (m.control.kind != Family::cauchy)
        throw family_error("charfn_cauchy: model is not Cauchy-family");
    const SpdMat lu = spd_factor(m.control.scale);
    const SpdMat lw = spd_factor(m.noise.scale);
    const double s_norm = detail::norm2(s);

    CharFnValue v;
    v.s = s;
    double exponent = 0.0;
    if (m.p + m.r + m.q == 0) {
        exponent = std::sqrt(detail::quad_form(m.control.scale, s)) +
                   std::sqrt(detail::quad_form(m.noise.scale, s));
        v.truncation_error = 0.0;
    } else {
        const double l_norm =
            std::max(lu.factor.frobenius_norm(), lw.factor.frobenius_norm());
        const double scale = std::max(1.0, l_norm * std::max(s_norm, 1e-30));
        const ImpulseResponse ir = impulse_response(m, tol / scale);
        for (std::size_t j = 0; j < ir.M.size(); ++j) {
            exponent += std::sqrt(detail::quad_form(ir.M[j] * m.control.scale *
                                                        ir.M[j].transposed(),
                                                    s));
            exponent += std::sqrt(detail::quad_form(ir.Mstar[j] * m.noise.scale *
                                                        ir.Mstar[j].transposed(),
                                                    s));
        }
        v.truncation_error = l_norm * s_norm * ir.tail_bound;
    }
    v.value = std::exp(-exponent);

    const CauchyScaleResult csr = cauchy_scale_matrix(m);
    if (csr.proportional) {
        const double closed = std::exp(-std::sqrt(detail::quad_form(csr.D, s)));
        const double slack = v.truncation_error + csr.tail_bound * s_norm + 1e-9;
        if (std::abs(closed - v.value.real()) > slack + tol)
            throw numeric_error("charfn_cauchy: truncated product deviates from the "
                                "proportional closed form");
    }
    return v;
}

/// Laplace output: product of 1 / (1 + s' M_j S M_j' s / 2) factors over both
/// residual streams, accumulated in log space; every omitted factor lies in
/// (1 - eps_j, 1], giving a summable multiplicative tail below `tol`.
inline CharFnValue charfn_laplace(const ArmaControlModel& m, const std::vector<double>& s,
                                  double tol = 1e-10) {
    detail::check_frequency(m, s);
    if (m.control.kind != Family::laplace)
        throw family_error("charfn_laplace: model is not Laplace-family");

    CharFnValue v;
    v.s = s;
    if (m.p + m.r + m.q == 0) {
        const double a = 0.5 * detail::quad_form(m.control.scale, s);
        const double b = 0.5 * detail::quad_form(m.noise.scale, s);
        v.value = 1.0 / ((1.0 + a) * (1.0 + b));
        v.truncation_error = 0.0;
        return v;
    }

    const double s_norm2 = detail::quad_form(Mat::identity(m.d), s);
    const double su_norm = m.control.scale.frobenius_norm();
    const double sw_norm = m.noise.scale.frobenius_norm();
    double impulse_tol = tol;
    ImpulseResponse ir;
    double tail = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        ir = impulse_response(m, impulse_tol);
        const double rho = ir.envelope_rho;
        tail = 0.5 * s_norm2 * (su_norm + sw_norm) * ir.envelope_coeff * ir.envelope_coeff *
               std::pow(rho, 2.0 * static_cast<double>(ir.truncation + 1)) /
               (1.0 - rho * rho);
        if (tail < tol) break;
        impulse_tol /= 16.0;
    }
    if (!(tail < tol))
        throw numeric_error("charfn_laplace: could not certify the requested tolerance");

    double log_value = 0.0;
    for (std::size_t j = 0; j < ir.M.size(); ++j) {
        const double a =
            0.5 * detail::quad_form(ir.M[j] * m.control.scale * ir.M[j].transposed(), s);
        const double b = 0.5 * detail::quad_form(ir.Mstar[j] * m.noise.scale *
                                                     ir.Mstar[j].transposed(),
                                                 s);
        log_value -= std::log1p(a) + std::log1p(b);
    }
    v.value = std::exp(log_value);
    v.truncation_error = tail;
    return v;
}

/// Family dispatch for the external interfaces.
inline CharFnValue charfn(const ArmaControlModel& m, const std::vector<double>& s,
                          double tol = 1e-10) {
    switch (m.control.kind) {
        case Family::gaussian: return charfn_gaussian(m, s);
        case Family::cauchy: return charfn_cauchy(m, s, tol);
        case Family::laplace: return charfn_laplace(m, s, tol);
    }
    throw std::logic_error("charfn: unreachable");
}

} // namespace armaent
