#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "armaent/matrix.hpp"

namespace oracles {

using armaent::Mat;

// Kronecker product straight from the four-index definition.
inline Mat kron_brute(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j)
            k(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    return k;
}

// Determinant by cofactor expansion along the first row.
inline double det_cofactor(const Mat& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Mat minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = a(i, c);
            }
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        d += sign * a(0, j) * det_cofactor(minor);
    }
    return d;
}

// Polynomials with ascending coefficients, enough for small-degree work.
using Poly = std::vector<double>;

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly nb = b;
    for (double& c : nb) c = -c;
    return poly_add(a, nb);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// All roots of a real polynomial by Durand-Kerner iteration.
inline std::vector<std::complex<double>> poly_roots(Poly c) {
    while (c.size() > 1 && std::abs(c.back()) < 1e-14) c.pop_back();
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return {};
    std::vector<std::complex<double>> w(deg);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (std::size_t k = 0; k < deg; ++k) {
        acc *= seed;
        w[k] = acc;
    }
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v(0.0, 0.0);
        for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
        return v;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        double step = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            std::complex<double> denom = c.back();
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) denom *= (w[k] - w[j]);
            const std::complex<double> delta = eval(w[k]) / denom;
            w[k] -= delta;
            step = std::max(step, std::abs(delta));
        }
        if (step < 1e-13) break;
    }
    return w;
}

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion,
// returned ascending so poly_roots can consume them directly.
inline Poly charpoly_faddeev(const Mat& a) {
    const std::size_t n = a.rows();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Mat m = a;
    for (std::size_t k = 1; k <= n; ++k) {
        const double ck = -m.trace() / static_cast<double>(k);
        c[n - k] = ck;
        if (k < n) {
            Mat shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) += ck;
            m = a * shifted;
        }
    }
    return c;
}

inline double spectral_radius_via_roots(const Mat& a) {
    double rho = 0.0;
    for (const auto& z : poly_roots(charpoly_faddeev(a))) rho = std::max(rho, std::abs(z));
    return rho;
}

// det(I - sum_i A[i] z^{i+1}) expanded as a polynomial in z (d <= 3).
inline Poly stability_polynomial(const std::vector<Mat>& A, std::size_t d) {
    std::vector<std::vector<Poly>> e(d, std::vector<Poly>(d));
    const std::size_t p = A.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Poly q(p + 1, 0.0);
            q[0] = (i == j) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < p; ++k) q[k + 1] = -A[k](i, j);
            e[i][j] = q;
        }
    if (d == 1) return e[0][0];
    if (d == 2) return poly_sub(poly_mul(e[0][0], e[1][1]), poly_mul(e[0][1], e[1][0]));
    if (d == 3) {
        Poly m0 = poly_sub(poly_mul(e[1][1], e[2][2]), poly_mul(e[1][2], e[2][1]));
        Poly m1 = poly_sub(poly_mul(e[1][0], e[2][2]), poly_mul(e[1][2], e[2][0]));
        Poly m2 = poly_sub(poly_mul(e[1][0], e[2][1]), poly_mul(e[1][1], e[2][0]));
        return poly_add(poly_sub(poly_mul(e[0][0], m0), poly_mul(e[0][1], m1)),
                        poly_mul(e[0][2], m2));
    }
    throw std::invalid_argument("stability_polynomial: d must be <= 3");
}

// Smallest root modulus of det(I - A(z)); infinity for a zero polynomial tail.
inline double min_root_modulus(const std::vector<Mat>& A, std::size_t d) {
    const auto roots = poly_roots(stability_polynomial(A, d));
    double m = std::numeric_limits<double>::infinity();
    for (const auto& z : roots) m = std::min(m, std::abs(z));
    return m;
}

// ---------------------------------------------------------------------------
// Quadrature oracles (recursive adaptive Simpson).

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double fa, double b,
                      double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11, int depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return detail::adapt(f, a, fa, b, fb, m, fm, detail::simpson(f, a, fa, b, fb, m, fm), tol,
                         depth);
}

// Renyi entropy of a univariate density by direct quadrature over [lo, hi].
inline double renyi_quad_1d(const std::function<double(double)>& density, double alpha,
                            double lo, double hi) {
    if (alpha == 1.0) {
        auto g = [&](double x) {
            const double fx = density(x);
            return fx > 0.0 ? -fx * std::log(fx) : 0.0;
        };
        return integrate(g, lo, hi);
    }
    auto g = [&](double x) { return std::pow(density(x), alpha); };
    return std::log(integrate(g, lo, hi)) / (1.0 - alpha);
}

// Renyi entropy of a centred bivariate Gaussian with covariance S by nested
// adaptive quadrature; S is inverted in closed form so the oracle shares no
// code with the library.
inline double gaussian_renyi_quad_2d(const Mat& S, double alpha) {
    const double a = S(0, 0), b = S(0, 1), c = S(1, 1);
    const double dS = a * c - b * b;
    const double i00 = c / dS, i01 = -b / dS, i11 = a / dS;
    const double norm = 1.0 / (2.0 * M_PI * std::sqrt(dS));
    auto f = [&](double x, double y) {
        return norm * std::exp(-0.5 * (i00 * x * x + 2.0 * i01 * x * y + i11 * y * y));
    };
    const double L = 14.0 * std::sqrt(std::max(a, c)) / std::sqrt(std::min(alpha, 1.0));
    if (alpha == 1.0) {
        auto outer = [&](double x) {
            return integrate(
                [&](double y) {
                    const double v = f(x, y);
                    return v > 0.0 ? -v * std::log(v) : 0.0;
                },
                -L, L, 1e-12, 44);
        };
        return integrate(outer, -L, L, 1e-11, 44);
    }
    auto outer = [&](double x) {
        return integrate([&](double y) { return std::pow(f(x, y), alpha); }, -L, L, 1e-12, 44);
    };
    return std::log(integrate(outer, -L, L, 1e-11, 44)) / (1.0 - alpha);
}

// ---------------------------------------------------------------------------
// Deterministic random inputs.

inline Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, double lo = -1.0,
                      double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

inline Mat random_spd(std::mt19937_64& rng, std::size_t n, double ridge = 0.15) {
    const Mat g = random_mat(rng, n, n);
    Mat s = g * g.transposed();
    for (std::size_t i = 0; i < n; ++i) s(i, i) += ridge;
    return s;
}

} // namespace oracles
