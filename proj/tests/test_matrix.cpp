#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "armaent/matrix.hpp"
#include "support/oracles.hpp"

using armaent::Mat;
using armaent::SpdMat;

namespace {
double max_abs_diff(const Mat& a, const Mat& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}
} // namespace

TEST_CASE("kron basics and brute-force agreement") {
    const Mat B{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(kron(Mat::identity(1), B) == B);
    CHECK(kron(Mat{{2.0}}, Mat{{3.0}}) == Mat{{6.0}});

    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Mat a = oracles::random_mat(rng, 2, 2);
        const Mat b = oracles::random_mat(rng, 2, 2);
        CHECK(max_abs_diff(kron(a, b), oracles::kron_brute(a, b)) == 0.0);
    }
}

TEST_CASE("kron is bilinear") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 10; ++rep) {
        const Mat a = oracles::random_mat(rng, 3, 2);
        const Mat b = oracles::random_mat(rng, 3, 2);
        const Mat c = oracles::random_mat(rng, 2, 3);
        CHECK(max_abs_diff(kron(a + b, c), kron(a, c) + kron(b, c)) < 1e-12);
    }
}

TEST_CASE("vec stacks columns") {
    const Mat a{{1.0, 2.0}, {3.0, 4.0}};
    const Mat v = vec(a);
    REQUIRE(v.rows() == 4);
    CHECK(v(0, 0) == 1.0);
    CHECK(v(1, 0) == 3.0);
    CHECK(v(2, 0) == 2.0);
    CHECK(v(3, 0) == 4.0);

    const Mat col{{1.5}, {-2.5}, {0.25}};
    CHECK(vec(col) == col);
}

TEST_CASE("vec of a sandwich product matches the Kronecker identity") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const Mat theta = oracles::random_mat(rng, 3, 3);
        const Mat phi = oracles::random_mat(rng, 3, 3);
        const Mat lhs = vec(theta * phi * theta.transposed());
        const Mat rhs = kron(theta, theta) * vec(phi);
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("spectral radius of diagonal and scaled identity matrices") {
    const Mat d{{0.5, 0.0, 0.0}, {0.0, 0.3, 0.0}, {0.0, 0.0, -0.1}};
    CHECK(armaent::spectral_radius(d) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(armaent::spectral_radius(0.5 * Mat::identity(3)) == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectral radius of the bundled 3x3 AR coefficient equals the reciprocal of the smallest lag-polynomial root") {
    const Mat A1{{0.5, 0.0, 0.0}, {0.1, 0.1, 0.3}, {0.0, 0.2, 0.3}};
    const double min_root = oracles::min_root_modulus({A1}, 3);
    CHECK(min_root == Catch::Approx(2.0).epsilon(1e-9));
    CHECK(armaent::spectral_radius(A1) == Catch::Approx(1.0 / min_root).epsilon(1e-9));
    CHECK(armaent::spectral_radius(A1) == Catch::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("spectral radius agrees with characteristic-polynomial roots") {
    std::mt19937_64 rng(14);
    for (std::size_t n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 25; ++rep) {
            const Mat a = oracles::random_mat(rng, n, n, -2.0, 2.0);
            const double rho = armaent::spectral_radius(a);
            const double rho_roots = oracles::spectral_radius_via_roots(a);
            CHECK(rho == Catch::Approx(rho_roots).margin(1e-8));
        }
    }
}

TEST_CASE("spectral radius of a companion matrix recovers known roots") {
    // z^3 - 0.9 z^2 + 0.2 z - 0.4 has a known largest-modulus root; compare
    // against the Durand-Kerner solution of the same coefficients.
    const Mat companion{{0.9, -0.2, 0.4}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    double expected = 0.0;
    for (const auto& z : oracles::poly_roots({-0.4, 0.2, -0.9, 1.0}))
        expected = std::max(expected, std::abs(z));
    CHECK(armaent::spectral_radius(companion) == Catch::Approx(expected).epsilon(1e-10));
}

TEST_CASE("spd_factor on identity and diagonal matrices") {
    const SpdMat id = armaent::spd_factor(Mat::identity(3));
    CHECK(max_abs_diff(id.factor, Mat::identity(3)) == 0.0);

    const Mat s{{0.25, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.5}};
    const SpdMat f = armaent::spd_factor(s);
    CHECK(f.factor(0, 0) == Catch::Approx(0.5));
    CHECK(f.factor(1, 1) == Catch::Approx(1.0));
    CHECK(f.factor(2, 2) == Catch::Approx(0.70711).margin(1e-5));
}

TEST_CASE("spd_factor round trip on the bundled control scale matrix") {
    const Mat su{{2.25, 0.0, 0.0}, {0.0, 1.0, 0.5}, {0.0, 0.5, 0.74}};
    const SpdMat f = armaent::spd_factor(su);
    CHECK(max_abs_diff(f.factor * f.factor.transposed(), su) < 1e-12);
}

TEST_CASE("spd_factor round trip on random SPD matrices") {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 25; ++rep) {
        const Mat s = oracles::random_spd(rng, 4, 1e-3);
        const SpdMat f = armaent::spd_factor(s);
        CHECK(max_abs_diff(f.factor * f.factor.transposed(), s) < 1e-10 * std::max(1.0, s.max_abs()));
    }
}

TEST_CASE("spd_factor rejects asymmetric and indefinite input") {
    const Mat asym{{1.0, 0.9}, {0.8, 1.0}};
    CHECK_THROWS_AS(armaent::spd_factor(asym), armaent::domain_error);

    const Mat indef{{1.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 3.0}};
    try {
        armaent::spd_factor(indef);
        FAIL("expected spd_error");
    } catch (const armaent::spd_error& e) {
        CHECK(e.pivot == 1);
    }
}

TEST_CASE("solve on identity and diagonal systems") {
    const Mat b{{1.0}, {2.0}, {3.0}};
    CHECK(max_abs_diff(armaent::solve(Mat::identity(3), b), b) == 0.0);

    const Mat d{{2.0, 0.0}, {0.0, 4.0}};
    const Mat rhs{{2.0}, {8.0}};
    const Mat x = armaent::solve(d, rhs);
    CHECK(x(0, 0) == Catch::Approx(1.0));
    CHECK(x(1, 0) == Catch::Approx(2.0));
}

TEST_CASE("solve residual on random well-conditioned systems") {
    std::mt19937_64 rng(16);
    for (int rep = 0; rep < 10; ++rep) {
        Mat a = oracles::random_mat(rng, 10, 10);
        for (std::size_t i = 0; i < 10; ++i) a(i, i) += 5.0; // keep it well conditioned
        const Mat b = oracles::random_mat(rng, 10, 3);
        const Mat x = armaent::solve(a, b);
        const Mat r = a * x - b;
        CHECK(r.frobenius_norm() / b.frobenius_norm() < 1e-9);
    }
}

TEST_CASE("solve reports singular and near-singular systems") {
    const Mat sing{{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(armaent::solve(sing, Mat{{1.0}, {1.0}}), armaent::numeric_error);

    Mat near{{1.0, 1.0}, {1.0, 1.0 + 1e-14}};
    CHECK_THROWS_AS(armaent::solve(near, Mat{{1.0}, {1.0}}), armaent::numeric_error);
}

TEST_CASE("determinant basics") {
    CHECK(armaent::det(Mat::identity(3)) == Catch::Approx(1.0));
    CHECK(armaent::det(Mat{{2.0, 0.0}, {0.0, 3.0}}) == Catch::Approx(6.0));
    CHECK(armaent::det(Mat{{1.0, 2.0}, {2.0, 4.0}}) == 0.0);
}

TEST_CASE("determinant of the published covariance matrix matches cofactor expansion") {
    const Mat phi0{{5.1700, 0.3765, 0.0443},
                   {0.3765, 0.9241, 1.3560},
                   {0.0443, 1.3560, 2.8917}};
    const double d = armaent::det(phi0);
    CHECK(d == Catch::Approx(oracles::det_cofactor(phi0)).epsilon(1e-12));
    // consistent with the published entropy value 4.9428 at alpha = 1
    CHECK(0.5 * std::log(std::pow(2.0 * M_PI * std::exp(1.0), 3) * d) ==
          Catch::Approx(4.9428).margin(1e-3));
    CHECK(d == Catch::Approx(3.943).margin(5e-3));
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 15; ++rep) {
        const Mat a = oracles::random_mat(rng, 4, 4);
        const Mat b = oracles::random_mat(rng, 4, 4);
        const double lhs = armaent::det(a * b);
        const double rhs = armaent::det(a) * armaent::det(b);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9).margin(1e-12));
    }
}
