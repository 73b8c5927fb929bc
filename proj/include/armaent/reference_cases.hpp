#pragma once

// The three bundled reference cases exercised by `reproduce`: a
// three-dimensional system with Gaussian, Cauchy and Laplace residuals.
// Published values that disagree with what the stated parameters imply are
// handled by the report builder, never silently.

#include "armaent/model.hpp"

namespace armaent {

/// Gaussian 3-d system with one AR, control-MA and noise-MA lag each.
inline ArmaControlModel reference_model_1() {
    ArmaControlModel m;
    m.d = 3;
    m.p = m.r = m.q = 1;
    m.A = {Mat{{0.5, 0.0, 0.0}, {0.1, 0.1, 0.3}, {0.0, 0.2, 0.3}}};
    m.B = {Mat{{0.3, 0.0, 0.0}, {0.0, 0.1, 0.2}, {0.0, 0.2, 0.3}}};
    m.D = {Mat::identity(3)};
    m.control = {Family::gaussian,
                 Mat{{2.25, 0.0, 0.0}, {0.0, 1.0, 0.5}, {0.0, 0.5, 0.74}}};
    m.noise = {Family::gaussian,
               Mat{{0.25, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.5}}};
    return m;
}

/// Cauchy 3-d system whose coefficient matrices are all multiples of the
/// identity, so the per-lag scale outer products stay proportional.
inline ArmaControlModel reference_model_2() {
    ArmaControlModel m;
    m.d = 3;
    m.p = m.r = m.q = 1;
    m.A = {0.5 * Mat::identity(3)};
    m.B = {0.3 * Mat::identity(3)};
    m.D = {Mat::identity(3)};
    const Mat scale{{0.25, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.5}};
    m.control = {Family::cauchy, scale};
    m.noise = {Family::cauchy, scale};
    return m;
}

/// Same parameters as the first case with Laplace residuals; only the
/// covariance-based upper bound applies.
inline ArmaControlModel reference_model_3() {
    ArmaControlModel m = reference_model_1();
    m.control.kind = Family::laplace;
    m.noise.kind = Family::laplace;
    return m;
}

/// The covariance matrix printed alongside the first reference case. Its
/// first row/column is consistent with the stated model; the lower block is
/// not (see the reproduction report, which flags the difference).
inline Mat reference_case1_published_phi0() {
    return Mat{{5.1700, 0.3765, 0.0443},
               {0.3765, 0.9241, 1.3560},
               {0.0443, 1.3560, 2.8917}};
}

} // namespace armaent
