#pragma once

// Comparison reports for the bundled reference cases. Each row pairs the
// library's computed value with the published one. Published values that are
// inconsistent with their own stated model parameters are documented
// discrepancies: the mismatch is expected, so the row carries FLAG (with
// both numbers) rather than FAIL. Rows the parameters actually determine
// must PASS; any other mismatch is a genuine FAIL.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "armaent/charfn.hpp"
#include "armaent/reference_cases.hpp"

namespace armaent {

enum class RowStatus { pass, flag, fail };

inline const char* row_status_name(RowStatus s) {
    switch (s) {
        case RowStatus::pass: return "PASS";
        case RowStatus::flag: return "FLAG";
        case RowStatus::fail: return "FAIL";
    }
    return "?";
}

struct ReproduceRow {
    std::string label;
    double computed = std::numeric_limits<double>::quiet_NaN();
    double reference = std::numeric_limits<double>::quiet_NaN();
    double deviation = std::numeric_limits<double>::quiet_NaN();
    RowStatus status = RowStatus::fail;
    std::string note;
};

struct ReproduceReport {
    int example = 0;
    std::string title;
    std::vector<ReproduceRow> rows;

    bool any_fail() const {
        for (const auto& r : rows)
            if (r.status == RowStatus::fail) return true;
        return false;
    }
};

namespace detail {

inline void add_row(ReproduceReport& rep, const std::string& label, double computed,
                    double reference, double tol, bool documented_discrepancy,
                    const std::string& note = "") {
    ReproduceRow row;
    row.label = label;
    row.computed = computed;
    row.reference = reference;
    row.deviation = std::abs(computed - reference);
    if (row.deviation <= tol)
        row.status = RowStatus::pass;
    else
        row.status = documented_discrepancy ? RowStatus::flag : RowStatus::fail;
    row.note = note;
    rep.rows.push_back(std::move(row));
}

} // namespace detail

inline ReproduceReport reproduce_case_1() {
    ReproduceReport rep;
    rep.example = 1;
    rep.title = "reference case 1: Gaussian 3-d system";
    const ArmaControlModel m = reference_model_1();
    const Mat published = reference_case1_published_phi0();

    detail::add_row(rep, "spectral_radius", is_stable(m).spectral_radius, 0.5, 1e-6, false);

    const StationaryCovariance cov = covariance_lyapunov(m);
    const std::string cov_note =
        "published lower block is inconsistent with the stated parameters; "
        "solve, series and simulation all agree on the computed value";
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            const bool consistent_entry = (i == 0); // only the first row/column reproduces
            detail::add_row(rep,
                            "phi0[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                            cov.phi0()(i, j), published(i, j), 5e-3, !consistent_entry,
                            consistent_entry ? "" : cov_note);
        }

    const EntropyReport exact = model_entropy(m, 1.0);
    detail::add_row(rep, "shannon_entropy_alpha1", exact.value, 4.9428, 1e-3, true,
                    "published entropy follows from the inconsistent covariance");
    const SpdMat published_spd = spd_factor(published);
    detail::add_row(rep, "gaussian_entropy_on_published_cov",
                    renyi_gaussian(published_spd, 1.0).value, 4.9428, 1e-3, false,
                    "closed form evaluated on the published covariance");

    const EntropyReport bound = model_entropy_bound(m, 1.0);
    detail::add_row(rep, "bound_half_log_det", bound.components.at("half_log_det"), 0.6860,
                    1e-3, true, "published log-det term follows from the inconsistent covariance");
    detail::add_row(rep, "half_log_det_on_published_cov", 0.5 * published_spd.log_det(), 0.6860,
                    1e-3, false);

    // the alpha-independent factor of the published entropy display, against
    // its own recomputation from the published covariance
    const double recomputed_factor =
        std::exp(0.5 * (3.0 * std::log(2.0 * M_PI) + published_spd.log_det()));
    detail::add_row(rep, "renyi_alpha_factor", recomputed_factor, 34.1884, 1e-2, true,
                    "published constant does not match the closed form evaluated on the "
                    "published covariance");
    return rep;
}

inline ReproduceReport reproduce_case_2() {
    ReproduceReport rep;
    rep.example = 2;
    rep.title = "reference case 2: Cauchy 3-d isotropic system";
    const ArmaControlModel m = reference_model_2();

    detail::add_row(rep, "spectral_radius", is_stable(m).spectral_radius, 0.5, 1e-6, false);

    const CauchyScaleResult csr = cauchy_scale_matrix(m);
    detail::add_row(rep, "scale_proportionality", csr.proportional ? 1.0 : 0.0, 1.0, 0.0,
                    false);

    const std::string m_note =
        "published impulse weights conflict with the recursion and its identity "
        "leading coefficient";
    const auto [M, Ms] = impulse_terms(m, 2);
    detail::add_row(rep, "impulse_weight_lag0", M[0](0, 0), 0.4, 1e-6, true, m_note);
    detail::add_row(rep, "impulse_weight_lag1", M[1](0, 0), 0.2, 1e-6, true, m_note);
    detail::add_row(rep, "coefficient_sum_recursion", csr.coefficient_sum, 2.3, 1e-6, true,
                    "published sum 2.3 comes from the conflicting printed weights; the "
                    "recursion gives 6.6");

    // entropy from the published coefficient sum (a = 2.3, D = a^2 S_u)
    const SpdMat d_published = spd_factor(2.3 * 2.3 * m.control.scale);
    detail::add_row(rep, "cauchy_entropy_published_coeffs",
                    renyi_cauchy(d_published, 3, 1.0).value, 6.5319, 2e-2, false);
    // entropy from the recursion-based coefficients, against the same
    // published number
    detail::add_row(rep, "cauchy_entropy_recursion_coeffs", model_entropy(m, 1.0).value,
                    6.5319, 2e-2, true,
                    "recursion-based coefficient sum implies a larger scale matrix");

    // univariate sanity of the closed form against direct quadrature
    const EntropyReport uni = renyi_cauchy(spd_factor(Mat{{1.0}}), 1, 1.0);
    detail::add_row(rep, "cauchy_univariate_formula_vs_quadrature", uni.value,
                    uni.components.at("quadrature_value"), 1e-6, true,
                    "closed form as published deviates from the quadrature oracle; "
                    "deviation also reported in the entropy components map");
    return rep;
}

inline ReproduceReport reproduce_case_3() {
    ReproduceReport rep;
    rep.example = 3;
    rep.title = "reference case 3: Laplace 3-d system (bound only)";
    const ArmaControlModel m = reference_model_3();
    const SpdMat published_spd = spd_factor(reference_case1_published_phi0());

    const EntropyReport bound = model_entropy_bound(m, 1.0);
    detail::add_row(rep, "bound_half_log_det", bound.components.at("half_log_det"), 0.6860,
                    1e-3, true,
                    "published log-det term follows from the inconsistent covariance of "
                    "case 1");
    detail::add_row(rep, "half_log_det_on_published_cov", 0.5 * published_spd.log_det(), 0.6860,
                    1e-3, false);

    for (double alpha : {0.5, 1.0, 2.0}) {
        const std::string label = "bound_alpha_" + std::to_string(alpha).substr(0, 3) +
                                  "_on_published_cov";
        try {
            const double computed =
                renyi_upper_bound(published_spd.base, 3, alpha).value;
            detail::add_row(rep, label, computed, c_d_alpha(3, alpha) + 0.6860, 1e-3, false);
        } catch (const domain_error&) {
            detail::add_row(rep, label, std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), 0.0, true,
                            "alpha = 0.5 <= d/(d+2) = 0.6: the bound constant is undefined, "
                            "the published grid point lies outside its domain");
        }
    }
    return rep;
}

inline ReproduceReport reproduce_report(int example) {
    switch (example) {
        case 1: return reproduce_case_1();
        case 2: return reproduce_case_2();
        case 3: return reproduce_case_3();
        default: throw std::invalid_argument("reproduce: example must be 1, 2 or 3");
    }
}

} // namespace armaent
