#include "simplexorder/numeric.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace simplexorder;

namespace {

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return m;
}

std::vector<Eigen::VectorXd> random_units(std::mt19937_64& rng, int k, int count) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd v(k);
        do {
            for (int j = 0; j < k; ++j) v(j) = g(rng);
        } while (v.norm() < 1e-6);
        pts.push_back(v.normalized());
    }
    return pts;
}

// brute-force oracle: best min-inner-product over sampled directions
double sampled_optimum(const std::vector<Eigen::VectorXd>& pts, std::mt19937_64& rng,
                       int samples = 100000) {
    const int k = static_cast<int>(pts.front().size());
    std::normal_distribution<double> g(0.0, 1.0);
    double best = -2.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd d(k);
        for (int j = 0; j < k; ++j) d(j) = g(rng);
        if (d.norm() < 1e-6) continue;
        d.normalize();
        double worst = 2.0;
        for (const auto& p : pts) worst = std::min(worst, d.dot(p));
        best = std::max(best, worst);
    }
    return best;
}

// Cramer-rule oracle for small systems
Eigen::VectorXd cramer_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const double det = a.determinant();
    Eigen::VectorXd x(a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        Eigen::MatrixXd aj = a;
        aj.col(j) = b;
        x(j) = aj.determinant() / det;
    }
    return x;
}

Eigen::VectorXd unit(int k, int i, double sign = 1.0) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
    v(i) = sign;
    return v;
}

}  // namespace

TEST_CASE("gram_diagnostics on identity") {
    const MatrixDiagnostics d = gram_diagnostics(SymmetricMatrix(Eigen::MatrixXd::Identity(3, 3)));
    CHECK(d.det == doctest::Approx(1.0));
    CHECK(d.cofactors.isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-12));
    CHECK(d.principal_n_blocks_pd);
    // off-diagonal cofactors vanish, so "all positive" does not hold here
    CHECK_FALSE(d.cofactors_all_positive);
    CHECK(d.leading_minor_mins.size() == 3);
}

TEST_CASE("gram_diagnostics on the regular Euclidean triangle Gram") {
    Eigen::MatrixXd m(3, 3);
    m << 1, -0.5, -0.5, -0.5, 1, -0.5, -0.5, -0.5, 1;
    const MatrixDiagnostics d = gram_diagnostics(SymmetricMatrix(m));
    CHECK(std::abs(d.det) < 1e-12);
    // hand cofactor expansion of the 2x2 minors: every minor is 1*1-(1/2)^2
    // or (-1/2)(-1/2) - (-1/2)(1) with signs, all equal to 0.75
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(d.cofactors(i, j) == doctest::Approx(0.75));
    CHECK(d.principal_n_blocks_pd);
}

TEST_CASE("gram_diagnostics on the rank-1 all-ones matrix") {
    const MatrixDiagnostics d = gram_diagnostics(SymmetricMatrix(Eigen::MatrixXd::Ones(3, 3)));
    CHECK(std::abs(d.det) < 1e-12);
    // blocks are only semidefinite; the cofactors all vanish
    CHECK_FALSE(d.cofactors_all_positive);
    CHECK(d.cofactors.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("non-finite entries are rejected") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
    m(0, 1) = m(1, 0) = std::nan("");
    CHECK_THROWS_AS(SymmetricMatrix{m}, InputError);
}

TEST_CASE("cofactor row expansion equals the determinant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Eigen::MatrixXd m = random_symmetric(rng, n);
        const MatrixDiagnostics d = gram_diagnostics(SymmetricMatrix(m));
        for (int i = 0; i < n; ++i) {
            const double expansion = m.row(i).dot(d.cofactors.row(i));
            CHECK(expansion == doctest::Approx(d.det).epsilon(1e-9));
        }
    }
}

TEST_CASE("gram_diagnostics is permutation-equivariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);
        const Eigen::MatrixXd m = random_symmetric(rng, n);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) p(i, perm[i]) = 1.0;

        const Eigen::MatrixXd mp = p * m * p.transpose();
        const MatrixDiagnostics d = gram_diagnostics(SymmetricMatrix(m));
        const MatrixDiagnostics dp = gram_diagnostics(SymmetricMatrix(mp));
        CHECK((p * d.cofactors * p.transpose()).isApprox(dp.cofactors, 1e-9));
    }
}

TEST_CASE("hemisphere_witness closed on an antipodal pair") {
    std::vector<Eigen::VectorXd> pts = {unit(2, 0), unit(2, 0, -1.0)};
    const auto w = hemisphere_witness(pts, HemisphereMode::Closed);
    REQUIRE(w.has_value());
    for (const auto& p : pts) CHECK(w->dot(p) >= -1e-9);
    CHECK(std::abs(std::abs((*w)(1)) - 1.0) < 1e-9);  // (0, +-1)
    CHECK_FALSE(hemisphere_witness(pts, HemisphereMode::Open).has_value());
}

TEST_CASE("hemisphere_witness open on the positive orthant basis") {
    std::vector<Eigen::VectorXd> pts = {unit(3, 0), unit(3, 1), unit(3, 2)};
    const auto w = hemisphere_witness(pts, HemisphereMode::Open);
    REQUIRE(w.has_value());
    CHECK(w->isApprox(Eigen::Vector3d(1, 1, 1).normalized(), 1e-9));
}

TEST_CASE("hemisphere_witness closed none for +-basis of E^3") {
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 3; ++i) {
        pts.push_back(unit(3, i));
        pts.push_back(unit(3, i, -1.0));
    }
    CHECK_FALSE(hemisphere_witness(pts, HemisphereMode::Closed).has_value());
    // sampling oracle agrees: no direction attains min product >= 0
    std::mt19937_64 rng(3);
    CHECK(sampled_optimum(pts, rng) < 0.0);
}

TEST_CASE("hemisphere_witness input validation") {
    CHECK_THROWS_AS(hemisphere_witness({}, HemisphereMode::Closed), InputError);
    std::vector<Eigen::VectorXd> bad = {Eigen::Vector2d(0.5, 0.0)};
    CHECK_THROWS_AS(hemisphere_witness(bad, HemisphereMode::Closed), InputError);
}

TEST_CASE("hemisphere LP agrees with the direction-sampling oracle") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 2);
        const int count = 2 + static_cast<int>(rng() % 5);
        const auto pts = random_units(rng, k, count);
        const double lp_value = min_norm_point_in_hull(pts).point.norm();
        const double oracle = sampled_optimum(pts, rng, 20000);
        CHECK(oracle <= lp_value + 1e-9);
        if (oracle > 1e-3) {
            const auto w = hemisphere_witness(pts, HemisphereMode::Open);
            REQUIRE(w.has_value());
            for (const auto& p : pts) CHECK(w->dot(p) >= 1e-12);
        }
        const auto wc = hemisphere_witness(pts, HemisphereMode::Closed);
        if (hemisphere_witness(pts, HemisphereMode::Open)) CHECK(wc.has_value());
        if (wc)
            for (const auto& p : pts) CHECK(wc->dot(p) >= -1e-9);
    }
}

TEST_CASE("solve_square basics") {
    CHECK(solve_square(Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(1, 2, 3))
              .isApprox(Eigen::Vector3d(1, 2, 3), 1e-12));
    Eigen::MatrixXd a(2, 2);
    a << 2, 0, 0, 4;
    CHECK(solve_square(a, Eigen::Vector2d(2, 4)).isApprox(Eigen::Vector2d(1, 1), 1e-12));
}

TEST_CASE("solve_square matches the Cramer-rule oracle on Hilbert-3") {
    Eigen::MatrixXd h(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h(i, j) = 1.0 / (i + j + 1);
    const Eigen::VectorXd b = Eigen::Vector3d(1.0, -2.0, 0.5);
    CHECK((solve_square(h, b) - cramer_solve(h, b)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("solve_square rejects singular systems") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 1, 1;
    try {
        solve_square(a, Eigen::Vector2d(1, 1));
        FAIL("expected SingularSystem");
    } catch (const SingularSystem& e) {
        CHECK(e.smallest_singular_value < 1e-12);
    }
}

TEST_CASE("tolerance policy env override") {
    const TolerancePolicy tol;
    CHECK(tol.eq_zero == doctest::Approx(1e-9));
    CHECK(tol.eq_zero > tol.strict_margin);
}
