#pragma once

#include <cmath>
#include <functional>

#include "armaent/errors.hpp"

namespace armaent {

namespace detail {

struct QuadState {
    double unresolved = 0.0; // |S2 - S1| mass left at the depth cap
};

inline double simpson_estimate(double h, double fa, double fm, double fb) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double m, double fm, double whole, double tol,
                            int depth, QuadState& st) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_estimate(m - a, fa, flm, fm);
    const double right = simpson_estimate(b - m, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
        st.unresolved += std::abs(delta);
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, st) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, st);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth, QuadState& st) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_step(f, a, fa, b, fb, m, fm, simpson_estimate(b - a, fa, fm, fb), tol,
                         depth, st);
}

} // namespace detail

/**
 * @brief Integral of f over the whole real line via the tangent substitution
 *        x = tan(u), dx = (1 + x^2) du.
 *
 * Throws numeric_error when the adaptive refinement leaves significant
 * unresolved mass (non-integrable or wildly singular integrands).
 */
inline double integrate_real_line(const std::function<double(double)>& f, double tol = 1e-10) {
    auto g = [&f](double u) {
        const double x = std::tan(u);
        const double w = 1.0 + x * x;
        const double v = f(x) * w;
        return std::isfinite(v) ? v : 0.0;
    };
    detail::QuadState st;
    const double half_pi = std::asin(1.0);
    const double lim_outer = half_pi - 1e-12;
    const double lim_inner = half_pi - 1e-6;
    // split at zero so an origin peak is never straddled by one panel
    const double core = detail::adaptive_simpson(g, -lim_inner, 0.0, 0.5 * tol, 52, st) +
                        detail::adaptive_simpson(g, 0.0, lim_inner, 0.5 * tol, 52, st);
    // the outermost slivers probe the tail: for an integrable f their mass is
    // negligible, for a divergent one it blows up and is reported as such
    const double edge = detail::adaptive_simpson(g, -lim_outer, -lim_inner, 0.5 * tol, 48, st) +
                        detail::adaptive_simpson(g, lim_inner, lim_outer, 0.5 * tol, 48, st);
    const double value = core + edge;
    if (std::abs(edge) > std::max(1e-3, 1e-3 * std::abs(value)) || !std::isfinite(value))
        throw numeric_error("integrate_real_line: tail mass did not converge (edge " +
                            std::to_string(edge) + ")");
    if (st.unresolved > std::max(1e4 * tol, 1e-6 * std::abs(value)) && st.unresolved > 1e-9)
        throw numeric_error("integrate_real_line: quadrature did not converge "
                            "(unresolved mass " +
                            std::to_string(st.unresolved) + ")");
    return value;
}

/**
 * @brief Entropy of a univariate density by adaptive quadrature: the Shannon
 *        integral for alpha = 1, otherwise ln of the alpha-power integral
 *        scaled by 1/(1 - alpha). Absolute error target 1e-7.
 */
inline double entropy_numeric_1d(const std::function<double(double)>& density, double alpha,
                                 double tol = 1e-10) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("entropy_numeric_1d: alpha must be positive");
    if (alpha == 1.0) {
        auto g = [&density](double x) {
            const double fx = density(x);
            return fx > 0.0 ? -fx * std::log(fx) : 0.0;
        };
        return integrate_real_line(g, tol);
    }
    auto g = [&density, alpha](double x) {
        const double fx = density(x);
        return fx > 0.0 ? std::pow(fx, alpha) : 0.0;
    };
    const double mass = integrate_real_line(g, tol);
    if (!(mass > 0.0))
        throw numeric_error("entropy_numeric_1d: alpha-power integral is not positive");
    return std::log(mass) / (1.0 - alpha);
}

} // namespace armaent
