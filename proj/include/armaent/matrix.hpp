#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "armaent/errors.hpp"

namespace armaent {

/**
 * @brief Dense real matrix with row-major storage.
 *
 * Deliberately minimal: it supplies exactly the constructions the rest of
 * the library needs (Kronecker product, column-stacking vec, LU solve,
 * determinant, Cholesky factorization, spectral radius). All arithmetic is
 * in 64-bit floating point.
 */
class Mat {
public:
    Mat() = default;

    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    Mat(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        v_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Mat: ragged initializer list");
            v_.insert(v_.end(), row.begin(), row.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return v_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return v_[i * cols_ + j];
    }

    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        assert(i0 + nr <= rows_ && j0 + nc <= cols_);
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }

    void set_block(std::size_t i0, std::size_t j0, const Mat& m) {
        assert(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double x : v_) s += x * x;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

    bool all_finite() const {
        return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
    }

    Mat& operator+=(const Mat& o) {
        check_same_shape(o, "+=");
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o, "-=");
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }
    Mat& operator*=(double c) {
        for (double& x : v_) x *= c;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, double c) { return a *= c; }
    friend Mat operator*(double c, Mat a) { return a *= c; }
    friend Mat operator-(Mat a) { return a *= -1.0; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("Mat multiply: inner dimensions disagree");
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.v_ == b.v_;
    }

private:
    void check_same_shape(const Mat& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Mat ") + op + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
inline Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
        }
    return k;
}

/// Column-stacking vec operator: stacks the columns of `a` into one column.
inline Mat vec(const Mat& a) {
    Mat v(a.rows() * a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v(j * a.rows() + i, 0) = a(i, j);
    return v;
}

/// Inverse of vec for a square target: unstacks a column vector into n x n.
inline Mat unvec(const Mat& v, std::size_t n) {
    assert(v.cols() == 1 && v.rows() == n * n);
    Mat a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) = v(j * n + i, 0);
    return a;
}

namespace detail {

struct LuFactors {
    Mat lu;                        // packed L (unit diagonal) and U
    std::vector<std::size_t> perm; // row permutation
    double parity = 1.0;           // sign of the permutation
    bool singular = false;
};

inline LuFactors lu_factor(Mat a) {
    const std::size_t n = a.rows();
    LuFactors f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.parity = -f.parity;
        }
        const double ukk = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double lik = a(i, k) / ukk;
            a(i, k) = lik;
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

// Solve using the packed factors; `rhs` holds one column.
inline void lu_solve_inplace(const LuFactors& f, std::vector<double>& x) {
    const std::size_t n = f.lu.rows();
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = x[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) b[i] -= f.lu(i, j) * b[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) b[ii] -= f.lu(ii, j) * b[j];
        b[ii] /= f.lu(ii, ii);
    }
    x = std::move(b);
}

// Solve A' y = x with the factors of A (A = P' L U, so A' = U' L' P).
inline void lu_solve_transposed_inplace(const LuFactors& f, std::vector<double>& x) {
    const std::size_t n = f.lu.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(j, i) * x[j];
        x[i] /= f.lu(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;)
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(j, ii) * x[j];
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[f.perm[i]] = x[i];
    x = std::move(y);
}

inline double norm1(const Mat& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Hager's 1-norm estimate of ||A^{-1}|| from an existing factorization.
inline double inverse_norm1_estimate(const LuFactors& f) {
    const std::size_t n = f.lu.rows();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<double> y = x;
        lu_solve_inplace(f, y);
        est = 0.0;
        for (double v : y) est += std::abs(v);
        std::vector<double> xi(n);
        for (std::size_t i = 0; i < n; ++i) xi[i] = (y[i] >= 0.0) ? 1.0 : -1.0;
        lu_solve_transposed_inplace(f, xi);
        std::size_t jmax = 0;
        double zmax = 0.0, zdotx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            zdotx += xi[i] * x[i];
            if (std::abs(xi[i]) > zmax) {
                zmax = std::abs(xi[i]);
                jmax = i;
            }
        }
        if (zmax <= zdotx) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[jmax] = 1.0;
    }
    return est;
}

} // namespace detail

/**
 * @brief Solve a x = b for a square matrix by LU with partial pivoting.
 *
 * Throws numeric_error when `a` is singular or its estimated 1-norm
 * condition number exceeds 1e12.
 */
inline Mat solve(const Mat& a, const Mat& b) {
    if (!a.square()) throw std::invalid_argument("solve: matrix must be square");
    if (b.rows() != a.rows()) throw std::invalid_argument("solve: rhs row count mismatch");
    detail::LuFactors f = detail::lu_factor(a);
    if (f.singular) throw numeric_error("solve: matrix is singular");
    const double cond = detail::norm1(a) * detail::inverse_norm1_estimate(f);
    if (cond > 1e12)
        throw numeric_error("solve: near-singular system, condition estimate " +
                            std::to_string(cond));
    Mat x(b.rows(), b.cols());
    std::vector<double> col(b.rows());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        detail::lu_solve_inplace(f, col);
        for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = col[i];
    }
    return x;
}

/// Determinant via the same pivoted factorization `solve` uses.
/// Zero is a valid result; singular input does not throw.
inline double det(const Mat& a) {
    if (!a.square()) throw std::invalid_argument("det: matrix must be square");
    detail::LuFactors f = detail::lu_factor(a);
    if (f.singular) return 0.0;
    double d = f.parity;
    for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

/**
 * @brief Symmetric positive-definite matrix together with its Cholesky factor.
 *
 * `base` = `factor` * `factor`', with `factor` lower triangular and a
 * strictly positive diagonal. Obtained through spd_factor().
 */
struct SpdMat {
    Mat base;
    Mat factor;

    std::size_t dim() const { return base.rows(); }

    /// log det(base), computed stably from the factor diagonal.
    double log_det() const {
        double s = 0.0;
        for (std::size_t i = 0; i < factor.rows(); ++i) s += std::log(factor(i, i));
        return 2.0 * s;
    }
};

/**
 * @brief Cholesky factorization of a symmetric positive-definite matrix.
 *
 * The input is symmetrized as (s + s')/2 first; asymmetry beyond 1e-10
 * relative is rejected. A non-positive pivot raises spd_error carrying the
 * failing pivot index.
 */
inline SpdMat spd_factor(const Mat& s) {
    if (!s.square()) throw std::invalid_argument("spd_factor: matrix must be square");
    const std::size_t n = s.rows();
    const double scale = std::max(1.0, s.max_abs());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(s(i, j) - s(j, i)) > 1e-10 * scale)
                throw domain_error("spd_factor: matrix is not symmetric at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
    Mat sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (s(i, j) + s(j, i));

    Mat L(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = sym(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0))
            throw spd_error("spd_factor: pivot " + std::to_string(j) +
                                " is not positive (matrix not positive definite)",
                            j);
        L(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = sym(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= L(i, k) * L(j, k);
            L(i, j) = v / L(j, j);
        }
    }
    return SpdMat{std::move(sym), std::move(L)};
}

namespace detail {

// Diagonal balancing (norm-reducing similarity by powers of 2).
inline void balance(Mat& a) {
    const std::size_t n = a.rows();
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s && f != 1.0) {
                again = true;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (in place).
inline void hessenberg(Mat& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = (a(k + 1, k) >= 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        // A <- (I - beta v v') A
        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * a(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        // A <- A (I - beta v v')
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Double-shift QR iteration on an upper Hessenberg matrix; returns the
// eigenvalue moduli. Follows the classic hqr scheme (implicit Francis
// steps, exceptional shifts at iterations 10 and 20, deflation from the
// bottom).
inline std::vector<double> hqr_moduli(Mat h) {
    const auto sign_of = [](double magnitude, double sgn) {
        return sgn >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
    };
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(h.rows());
    std::vector<double> mod;
    mod.reserve(static_cast<std::size_t>(n));
    const double eps = std::numeric_limits<double>::epsilon();
    double anorm = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i)
        for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(i - 1, 0); j < n; ++j)
            anorm += std::abs(h(i, j));
    if (anorm == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);

    std::ptrdiff_t nn = n - 1;
    double t = 0.0; // accumulated exceptional shift
    while (nn >= 0) {
        int its = 0;
        std::ptrdiff_t l;
        for (;;) {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h(l, l - 1)) <= eps * s) {
                    h(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = h(nn, nn);
            if (l == nn) { // one real eigenvalue deflates
                mod.push_back(std::abs(x + t));
                --nn;
                break;
            }
            double y = h(nn - 1, nn - 1);
            double w = h(nn, nn - 1) * h(nn - 1, nn);
            if (l == nn - 1) { // a 2x2 block deflates
                double p = 0.5 * (y - x);
                double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) { // real pair
                    z = p + sign_of(z, p);
                    const double r1 = x + z;
                    const double r2 = (z != 0.0) ? x - w / z : r1;
                    mod.push_back(std::abs(r1));
                    mod.push_back(std::abs(r2));
                } else { // complex conjugate pair
                    mod.push_back(std::hypot(x + p, z));
                    mod.push_back(std::hypot(x + p, z));
                }
                nn -= 2;
                break;
            }
            if (its == 30)
                throw numeric_error("spectral_radius: QR iteration failed to converge");
            if (its == 10 || its == 20) {
                t += x;
                for (std::ptrdiff_t i = 0; i <= nn; ++i) h(i, i) -= x;
                const double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
                x = y = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;

            // look for two consecutive small subdiagonal elements
            std::ptrdiff_t m;
            double p = 0.0, q = 0.0, r = 0.0;
            for (m = nn - 2; m >= l; --m) {
                const double z = h(m, m);
                const double rr = x - z;
                const double ss = y - z;
                p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - rr - ss;
                r = h(m + 2, m + 1);
                const double scale = std::abs(p) + std::abs(q) + std::abs(r);
                p /= scale;
                q /= scale;
                r /= scale;
                if (m == l) break;
                const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) +
                                                std::abs(h(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (std::ptrdiff_t i = m + 2; i <= nn; ++i) h(i, i - 2) = 0.0;
            for (std::ptrdiff_t i = m + 3; i <= nn; ++i) h(i, i - 3) = 0.0;

            // double QR step on rows l..nn and columns m..nn
            for (std::ptrdiff_t k = m; k <= nn - 1; ++k) {
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) h(k, k - 1) = -h(k, k - 1);
                } else {
                    h(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                const double z = r / s;
                q /= p;
                r /= p;
                for (std::ptrdiff_t j = k; j <= nn; ++j) { // row modification
                    double pp = h(k, j) + q * h(k + 1, j);
                    if (k != nn - 1) {
                        pp += r * h(k + 2, j);
                        h(k + 2, j) -= pp * z;
                    }
                    h(k + 1, j) -= pp * y;
                    h(k, j) -= pp * x;
                }
                const std::ptrdiff_t mmin = std::min(nn, k + 3);
                for (std::ptrdiff_t i = l; i <= mmin; ++i) { // column modification
                    double pp = x * h(i, k) + y * h(i, k + 1);
                    if (k != nn - 1) {
                        pp += z * h(i, k + 2);
                        h(i, k + 2) -= pp * r;
                    }
                    h(i, k + 1) -= pp * q;
                    h(i, k) -= pp;
                }
            }
        }
    }
    return mod;
}

} // namespace detail

/**
 * @brief Largest eigenvalue modulus of a square matrix.
 *
 * Balancing, Householder-Hessenberg reduction, then a double-shift QR
 * iteration. Only moduli are extracted; there is no complex public type.
 */
inline double spectral_radius(const Mat& a) {
    if (!a.square()) throw std::invalid_argument("spectral_radius: matrix must be square");
    const std::size_t n = a.rows();
    if (n == 1) return std::abs(a(0, 0));
    Mat h = a;
    detail::balance(h);
    detail::hessenberg(h);
    const std::vector<double> mod = detail::hqr_moduli(std::move(h));
    double rho = 0.0;
    for (double m : mod) rho = std::max(rho, m);
    return rho;
}

} // namespace armaent
