#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "armaent/realization.hpp"
#include "armaent/reference_cases.hpp"
#include "support/model_gen.hpp"
#include "support/oracles.hpp"

using armaent::ArmaControlModel;
using armaent::Family;
using armaent::Mat;

namespace {
double max_abs_diff(const Mat& a, const Mat& b) {
    return (a - b).max_abs();
}
} // namespace

TEST_CASE("companion blocks of the bundled 3-d case") {
    const auto c = armaent::build_companion(armaent::reference_model_1());
    REQUIRE(c.theta.rows() == 9);
    const ArmaControlModel m = armaent::reference_model_1();
    CHECK(max_abs_diff(c.theta.block(0, 0, 3, 3), m.A[0]) == 0.0);
    CHECK(max_abs_diff(c.theta.block(0, 3, 3, 3), m.B[0]) == 0.0);
    CHECK(max_abs_diff(c.theta.block(0, 6, 3, 3), m.D[0]) == 0.0);
    // everything below the top block-row is zero for one lag per group
    CHECK(c.theta.block(3, 0, 6, 9).max_abs() == 0.0);
}

TEST_CASE("scalar AR(2) companion matrix") {
    ArmaControlModel m;
    m.d = 1;
    m.p = 2;
    m.A = {Mat{{0.3}}, Mat{{0.4}}};
    m.control = {Family::gaussian, Mat{{1.0}}};
    m.noise = {Family::gaussian, Mat{{1.0}}};
    const auto c = armaent::build_companion(m);
    CHECK(c.theta == Mat{{0.3, 0.4}, {1.0, 0.0}});
}

TEST_CASE("degenerate model is rejected by build_companion") {
    ArmaControlModel m;
    m.d = 2;
    m.control = {Family::gaussian, Mat::identity(2)};
    m.noise = {Family::gaussian, Mat::identity(2)};
    CHECK_THROWS_AS(armaent::build_companion(m), armaent::domain_error);
}

TEST_CASE("selector identities and spectral radius factorization") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const auto m = model_gen::random_stable(rng, Family::gaussian);
        const auto c = armaent::build_companion(m);
        CHECK(max_abs_diff(c.sel_I * c.sel_J1, Mat::identity(m.d)) == 0.0);
        CHECK(max_abs_diff(c.sel_I * c.sel_J2, Mat::identity(m.d)) == 0.0);
        const double rho_full = armaent::spectral_radius(c.theta);
        const double rho_ar = m.p > 0 ? armaent::spectral_radius(c.theta11()) : 0.0;
        CHECK(rho_full == Catch::Approx(rho_ar).margin(1e-9));
    }
}

TEST_CASE("impulse response with zero AR part returns the MA coefficients") {
    ArmaControlModel m;
    m.d = 2;
    m.p = 1;
    m.r = 2;
    m.q = 1;
    m.A = {Mat(2, 2)};
    m.B = {Mat{{0.5, 0.1}, {0.0, 0.2}}, Mat{{0.0, 0.3}, {0.3, 0.0}}};
    m.D = {Mat{{0.7, 0.0}, {0.0, 0.7}}};
    m.control = {Family::gaussian, Mat::identity(2)};
    m.noise = {Family::gaussian, Mat::identity(2)};
    const auto ir = armaent::impulse_response(m, 1e-12);
    CHECK(ir.M[0] == Mat::identity(2));
    CHECK(max_abs_diff(ir.M[1], m.B[0]) == 0.0);
    CHECK(max_abs_diff(ir.M[2], m.B[1]) == 0.0);
    CHECK(max_abs_diff(ir.Mstar[1], m.D[0]) == 0.0);
    for (std::size_t j = 3; j < ir.M.size(); ++j) CHECK(ir.M[j].max_abs() == 0.0);
    for (std::size_t j = 2; j < ir.Mstar.size(); ++j) CHECK(ir.Mstar[j].max_abs() == 0.0);
}

TEST_CASE("impulse response of the isotropic Cauchy case has the hand-computed weights") {
    const auto ir = armaent::impulse_response(armaent::reference_model_2(), 1e-10);
    REQUIRE(ir.M.size() >= 4);
    CHECK(max_abs_diff(ir.M[0], Mat::identity(3)) == 0.0);
    CHECK(max_abs_diff(ir.M[1], 0.8 * Mat::identity(3)) < 1e-15);
    CHECK(max_abs_diff(ir.M[2], 0.4 * Mat::identity(3)) < 1e-15);
    CHECK(max_abs_diff(ir.M[3], 0.2 * Mat::identity(3)) < 1e-15);
    CHECK(max_abs_diff(ir.Mstar[1], 1.5 * Mat::identity(3)) < 1e-15);
    CHECK(max_abs_diff(ir.Mstar[2], 0.75 * Mat::identity(3)) < 1e-15);
}

TEST_CASE("identity leading coefficients are assigned exactly") {
    const auto ir = armaent::impulse_response(armaent::reference_model_1(), 1e-8);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(ir.M[0](i, j) == (i == j ? 1.0 : 0.0));
            CHECK(ir.Mstar[0](i, j) == (i == j ? 1.0 : 0.0));
        }
}

TEST_CASE("recursion matches companion powers on the bundled case") {
    const ArmaControlModel m = armaent::reference_model_1();
    const auto [M, Ms] = armaent::impulse_terms(m, 12);
    const auto c = armaent::build_companion(m);
    Mat power = Mat::identity(9);
    for (std::size_t j = 0; j <= 12; ++j) {
        CHECK(max_abs_diff(c.sel_I * power * c.sel_J1, M[j]) < 1e-10);
        CHECK(max_abs_diff(c.sel_I * power * c.sel_J2, Ms[j]) < 1e-10);
        power = power * c.theta;
    }
}

TEST_CASE("recursion matches companion powers on random stable models") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 20; ++rep) {
        const auto m = model_gen::random_stable(rng, Family::gaussian);
        const auto [M, Ms] = armaent::impulse_terms(m, 20);
        const auto c = armaent::build_companion(m);
        Mat power = Mat::identity(c.theta.rows());
        for (std::size_t j = 0; j <= 20; ++j) {
            CHECK(max_abs_diff(c.sel_I * power * c.sel_J1, M[j]) < 1e-10);
            CHECK(max_abs_diff(c.sel_I * power * c.sel_J2, Ms[j]) < 1e-10);
            power = power * c.theta;
        }
    }
}

TEST_CASE("unstable models are rejected by impulse_response") {
    ArmaControlModel m;
    m.d = 1;
    m.p = 1;
    m.A = {Mat{{1.1}}};
    m.control = {Family::gaussian, Mat{{1.0}}};
    m.noise = {Family::gaussian, Mat{{1.0}}};
    CHECK_THROWS_AS(armaent::impulse_response(m, 1e-8), armaent::stability_error);
}

TEST_CASE("tail bound dominates the exact scalar tail") {
    ArmaControlModel m;
    m.d = 1;
    m.p = 1;
    m.A = {Mat{{0.5}}};
    m.control = {Family::gaussian, Mat{{1.0}}};
    m.noise = {Family::gaussian, Mat{{1.0}}};
    for (double tol : {1e-4, 1e-8, 1e-12}) {
        const auto ir = armaent::impulse_response(m, tol);
        CHECK(ir.tail_bound < tol);
        // M_j = M*_j = 0.5^j, so the discarded mass is 2 * 0.5^{N+1} / 0.5
        const double exact_tail =
            2.0 * std::pow(0.5, static_cast<double>(ir.truncation + 1)) / (1.0 - 0.5);
        CHECK(ir.tail_bound >= exact_tail);
    }
}

TEST_CASE("autocovariance recursion step") {
    // scalar AR(1) with unit innovation variance: Phi(0) = 4/3, Phi(1) = 2/3
    const std::vector<Mat> a = {Mat{{0.5}}};
    const Mat phi1 = armaent::autocov_recursion_step({Mat{{4.0 / 3.0}}}, a);
    CHECK(phi1(0, 0) == Catch::Approx(2.0 / 3.0));

    // zero AR coefficients kill every lag beyond the moving-average order
    const Mat zero = armaent::autocov_recursion_step({Mat{{4.0 / 3.0}}}, {Mat{{0.0}}});
    CHECK(zero(0, 0) == 0.0);

    // insufficient history is an arity error
    CHECK_THROWS_AS(armaent::autocov_recursion_step({}, a), std::invalid_argument);
}
