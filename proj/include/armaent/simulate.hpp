#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "armaent/covariance.hpp"
#include "armaent/quadrature.hpp"

namespace armaent {

/**
 * @brief Monte Carlo run configuration.
 *
 * A zero burn_in asks for the default derived from the spectral radius,
 * which keeps the influence of the zero initial state below 1e-8.
 * Replicates draw from disjoint streams derived from (seed, replicate).
 */
struct SimConfig {
    std::uint64_t seed = 1;
    std::size_t n_samples = 10000;
    std::size_t burn_in = 0;
    std::size_t replicate_count = 1;
    std::vector<std::vector<double>> ecf_points;
};

struct EcfEstimate {
    std::vector<double> s;
    std::complex<double> value;
    double std_error = 0.0;
};

/// Summary statistics of the simulated stationary segment. The covariance
/// (and its per-entry standard errors from batch means) is absent for the
/// Cauchy family, whose second moments do not exist; the empirical
/// characteristic function carries the distributional information instead.
struct EmpiricalSummary {
    std::vector<double> mean;
    std::optional<Mat> covariance;
    std::optional<Mat> covariance_se;
    std::vector<EcfEstimate> ecf;
    std::size_t n_effective = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic stream: mt19937_64 keyed by (seed, stream) through
/// splitmix64, with explicit Box-Muller normals so results are identical
/// across standard libraries.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed;
        std::uint64_t mixed = 0;
        for (std::uint64_t i = 0; i <= stream; ++i) mixed = splitmix64(s);
        engine_.seed(mixed);
    }

    double uniform() { // in (0, 1]
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (cached_) {
            cached_ = false;
            return cache_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        cache_ = radius * std::sin(angle);
        cached_ = true;
        return radius * std::cos(angle);
    }

    double exponential() { return -std::log(uniform()); }

private:
    std::mt19937_64 engine_;
    bool cached_ = false;
    double cache_ = 0.0;
};

inline std::vector<double> draw_residual(const ResidualFamily& fam, const Mat& factor,
                                         StreamRng& rng) {
    const std::size_t d = factor.rows();
    std::vector<double> z(d);
    for (double& v : z) v = rng.normal();
    std::vector<double> x(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) x[i] += factor(i, j) * z[j];
    switch (fam.kind) {
        case Family::gaussian: break;
        case Family::cauchy: {
            // L z / |g| is elliptical Cauchy with char. fn. exp(-sqrt(s'Ss))
            const double g = std::abs(rng.normal());
            for (double& v : x) v /= std::max(g, 1e-300);
            break;
        }
        case Family::laplace: {
            // sqrt(e) L z has char. fn. 1 / (1 + s'Ss/2) and covariance S
            const double e = rng.exponential();
            for (double& v : x) v *= std::sqrt(e);
            break;
        }
    }
    return x;
}

} // namespace detail

/// Burn-in long enough that the zero initial condition has decayed below
/// 1e-8 at the given spectral radius.
inline std::size_t default_burn_in(double rho) {
    if (!(rho > 0.0)) return 8;
    const double needed = std::log(1e-8) / std::log(rho);
    return static_cast<std::size_t>(std::ceil(std::max(8.0, needed)));
}

/// Independent residual draws for one family; deterministic in the seed.
inline std::vector<std::vector<double>> sample_residual(const ResidualFamily& fam,
                                                        std::size_t n, std::uint64_t seed) {
    const SpdMat f = spd_factor(fam.scale);
    detail::StreamRng rng(seed, 0);
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(detail::draw_residual(fam, f.factor, rng));
    return out;
}

/**
 * @brief Simulate the recursion exactly as written, discard the burn-in and
 *        summarize the stationary segment.
 *
 * Deterministic for a fixed (seed, config) pair. Replicates use disjoint
 * streams and pool into one summary; covariance standard errors come from
 * batch means, which stay honest under serial dependence.
 */
/// Optional observer for the retained samples: (replicate, time index after
/// burn-in, state vector).
using SampleSink = std::function<void(std::size_t, std::size_t, const std::vector<double>&)>;

inline EmpiricalSummary simulate_path(const ArmaControlModel& m, const SimConfig& cfg,
                                      const SampleSink& on_sample = {}) {
    require_valid(m);
    const StabilityVerdict verdict = is_stable(m);
    if (!verdict.stable)
        throw stability_error("simulate_path: unstable model (spectral radius " +
                              std::to_string(verdict.spectral_radius) + ")");
    const std::size_t d = m.d;
    const std::size_t burn =
        cfg.burn_in > 0 ? cfg.burn_in
                        : default_burn_in(verdict.spectral_radius) + std::max({m.p, m.r, m.q});
    const std::size_t reps = std::max<std::size_t>(1, cfg.replicate_count);
    const bool want_cov = m.control.kind != Family::cauchy;
    const SpdMat lu = spd_factor(m.control.scale);
    const SpdMat lw = spd_factor(m.noise.scale);

    const std::size_t n_batches_per_rep = 32;
    const std::size_t batch_len = std::max<std::size_t>(1, cfg.n_samples / n_batches_per_rep);

    std::vector<double> mean_acc(d, 0.0);
    Mat prod_acc(d, d);
    std::vector<Mat> batch_means;
    std::vector<std::complex<double>> ecf_acc(cfg.ecf_points.size(), {0.0, 0.0});
    std::vector<double> ecf_sq_re(cfg.ecf_points.size(), 0.0);
    std::vector<double> ecf_sq_im(cfg.ecf_points.size(), 0.0);
    std::size_t collected = 0;

    for (std::size_t rep = 0; rep < reps; ++rep) {
        detail::StreamRng rng(cfg.seed, rep);
        std::deque<std::vector<double>> x_hist, u_hist, w_hist;
        Mat batch_acc(d, d);
        std::size_t in_batch = 0;
        for (std::size_t t = 0; t < burn + cfg.n_samples; ++t) {
            const std::vector<double> ut = detail::draw_residual(m.control, lu.factor, rng);
            const std::vector<double> wt = detail::draw_residual(m.noise, lw.factor, rng);
            std::vector<double> xt = ut; // B_0 = I
            for (std::size_t i = 0; i < d; ++i) xt[i] += wt[i]; // D_0 = I
            for (std::size_t i = 0; i < std::min(m.p, x_hist.size()); ++i)
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) xt[a] += m.A[i](a, b) * x_hist[i][b];
            for (std::size_t j = 0; j < std::min(m.r, u_hist.size()); ++j)
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) xt[a] += m.B[j](a, b) * u_hist[j][b];
            for (std::size_t k = 0; k < std::min(m.q, w_hist.size()); ++k)
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) xt[a] += m.D[k](a, b) * w_hist[k][b];

            if (m.p > 0) {
                x_hist.push_front(xt);
                if (x_hist.size() > m.p) x_hist.pop_back();
            }
            if (m.r > 0) {
                u_hist.push_front(ut);
                if (u_hist.size() > m.r) u_hist.pop_back();
            }
            if (m.q > 0) {
                w_hist.push_front(wt);
                if (w_hist.size() > m.q) w_hist.pop_back();
            }
            if (t < burn) continue;
            if (on_sample) on_sample(rep, t - burn, xt);

            ++collected;
            for (std::size_t i = 0; i < d; ++i) mean_acc[i] += xt[i];
            if (want_cov) {
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) {
                        prod_acc(i, j) += xt[i] * xt[j];
                        batch_acc(i, j) += xt[i] * xt[j];
                    }
                if (++in_batch == batch_len) {
                    batch_means.push_back((1.0 / double(batch_len)) * batch_acc);
                    batch_acc = Mat(d, d);
                    in_batch = 0;
                }
            }
            for (std::size_t k = 0; k < cfg.ecf_points.size(); ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < d; ++i) dot += cfg.ecf_points[k][i] * xt[i];
                const double c = std::cos(dot), s = std::sin(dot);
                ecf_acc[k] += std::complex<double>(c, s);
                ecf_sq_re[k] += c * c;
                ecf_sq_im[k] += s * s;
            }
        }
    }

    EmpiricalSummary out;
    out.n_effective = collected;
    out.mean.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.mean[i] = mean_acc[i] / double(collected);
    if (want_cov) {
        Mat cov(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                cov(i, j) = prod_acc(i, j) / double(collected) - out.mean[i] * out.mean[j];
        out.covariance = cov;
        if (batch_means.size() >= 2) {
            Mat se(d, d);
            const double nb = double(batch_means.size());
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    double mu = 0.0;
                    for (const Mat& b : batch_means) mu += b(i, j);
                    mu /= nb;
                    double var = 0.0;
                    for (const Mat& b : batch_means) {
                        const double dd = b(i, j) - mu;
                        var += dd * dd;
                    }
                    se(i, j) = std::sqrt(var / (nb - 1.0) / nb);
                }
            out.covariance_se = se;
        }
    }
    for (std::size_t k = 0; k < cfg.ecf_points.size(); ++k) {
        EcfEstimate e;
        e.s = cfg.ecf_points[k];
        e.value = ecf_acc[k] / double(collected);
        const double var_re = ecf_sq_re[k] / double(collected) - e.value.real() * e.value.real();
        const double var_im = ecf_sq_im[k] / double(collected) - e.value.imag() * e.value.imag();
        e.std_error = std::sqrt(std::max(0.0, var_re + var_im) / double(collected));
        out.ecf.push_back(std::move(e));
    }
    return out;
}

} // namespace armaent
