#include <doctest.h>

#include <cmath>

#include "wickflow/analysis.hpp"

using namespace wickflow;

namespace {

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

}  // namespace

TEST_CASE("kondratiev norm single terms") {
    Truncation t{1, 2};
    ChaosField C = ChaosField::deterministic(t, scalar(1.7));
    CHECK(kondratiev_norm(C, 0.3, 2.0).value == doctest::Approx(1.7 * 1.7));

    ChaosField F = ChaosField::zeros(t, 1);
    F.set(MultiIndex::unit(1, 2), scalar(1.0));
    // single term (alpha!)^0 |f|^2 (2N)^{-q alpha} = (2*1)^{-2} = 1/4
    CHECK(kondratiev_norm(F, 1.0, 1.0).value == doctest::Approx(0.25));
    CHECK(kondratiev_norm(F, 1.0, 2.0).value == doctest::Approx(1.0 / 16.0));
    CHECK(kondratiev_norm(F, 0.0, 0.0).value == doctest::Approx(2.0));
}

TEST_CASE("kondratiev norm monotonicity") {
    Truncation t{2, 3};
    ChaosField F = ChaosField::zeros(t, 1);
    int i = 0;
    for (const auto& alpha : enumerate(t)) F.set(alpha, scalar(0.5 + 0.03 * (i++ % 7)));
    double prev = kondratiev_norm(F, 1.0, 0.0).value;
    for (double q : {0.5, 1.0, 2.0, 4.0}) {
        double cur = kondratiev_norm(F, 1.0, q).value;
        CHECK(cur <= prev);
        prev = cur;
    }
    // coefficients bounded by one: the norm does not decrease with rho
    double r0 = kondratiev_norm(F, 0.0, 1.0).value;
    double r1 = kondratiev_norm(F, 1.0, 1.0).value;
    CHECK(r1 <= r0);
}

TEST_CASE("tail decay report") {
    SupNormTable norms;
    norms[MultiIndex::zero()] = 1.0;
    norms[MultiIndex::unit(1)] = 0.5;
    norms[MultiIndex::unit(1, 2)] = 0.2;
    norms[MultiIndex::unit(1, 3)] = 0.05;
    TailDecayReport report = tail_decay(norms, 1.0, 0.0);
    REQUIRE(report.level_sums.size() == 4);
    CHECK(report.level_sums[0] == doctest::Approx(1.0));
    CHECK(report.level_sums[1] == doctest::Approx(0.25));
    CHECK(report.monotone_from_level2);

    // deterministic data: all higher levels vanish
    SupNormTable det;
    det[MultiIndex::zero()] = 0.8;
    det[MultiIndex::unit(1)] = 0.0;
    TailDecayReport dreport = tail_decay(det, 1.0, 2.0);
    CHECK(dreport.level_sums[1] == doctest::Approx(0.0));
}

TEST_CASE("monte carlo moments on known fields") {
    Truncation t{1, 2};
    ChaosField H1 = ChaosField::zeros(t, 1);
    H1.set(MultiIndex::unit(1), scalar(1.0));
    McMoments mc = mc_moments(H1, 20000, 2024);
    CHECK(std::abs(mc.mean[0] - 0.0) <= 4.0 * mc.mean_se[0]);
    CHECK(std::abs(mc.variance[0] - 1.0) <= 4.0 * mc.variance_se[0]);
    CHECK(mc.ref_variance[0] == doctest::Approx(1.0));

    ChaosField C = ChaosField::deterministic(t, scalar(3.0));
    McMoments det = mc_moments(C, 500, 1);
    CHECK(det.variance[0] == 0.0);
    CHECK(det.mean[0] == doctest::Approx(3.0));

    ChaosField H2 = ChaosField::zeros(t, 1);
    H2.set(MultiIndex::unit(1, 2), scalar(1.0));
    McMoments mc2 = mc_moments(H2, 20000, 5);
    CHECK(std::abs(mc2.variance[0] - 2.0) <= 4.0 * mc2.variance_se[0]);
    CHECK(mc2.ref_variance[0] == doctest::Approx(2.0));
}

TEST_CASE("monte carlo is deterministic under a fixed seed") {
    Truncation t{2, 2};
    ChaosField F = ChaosField::zeros(t, 2);
    F.set(MultiIndex::zero(), Eigen::VectorXd::Constant(2, 0.4));
    F.set(MultiIndex::unit(1), Eigen::VectorXd::Constant(2, -0.2));
    McMoments a = mc_moments(F, 5000, 99);
    McMoments b = mc_moments(F, 5000, 99);
    for (int i = 0; i < 2; ++i) {
        CHECK(a.mean[i] == b.mean[i]);
        CHECK(a.variance[i] == b.variance[i]);
    }
    McMoments c = mc_moments(F, 5000, 100);
    CHECK(a.mean[0] != c.mean[0]);

    // draws use independent substreams: draw i is the same whatever came before
    auto g5 = gaussian_draw(99, 5, 3);
    auto g5_again = gaussian_draw(99, 5, 3);
    CHECK(g5 == g5_again);
}

TEST_CASE("adaptive simpson") {
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("linear oracle") {
    CHECK(linear_oracle(-1.0, [](double) { return 0.0; }, 1.0, 1.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(linear_oracle([](double t) { return std::sin(t); }, [](double) { return 0.0; }, 1.0, 2.0) ==
          doctest::Approx(std::exp(1.0 - std::cos(2.0))).epsilon(1e-10));
    CHECK(linear_oracle(0.0, [](double) { return 1.0; }, 0.0, 0.7) == doctest::Approx(0.7));
}

TEST_CASE("riccati oracle") {
    RiccatiReference at0 = riccati_oracle(1.0, 2.0, 3.0, 0.0);
    CHECK(at0.u0 == doctest::Approx(1.0));
    CHECK(at0.u_eps == doctest::Approx(2.0));
    CHECK(at0.u_2eps == doctest::Approx(3.0));

    // re-derived by the integrating factor: u_eps(1/2) = 1/(1-1/2)^2 = 4
    RiccatiReference mid = riccati_oracle(1.0, 1.0, 1.0, 0.5);
    CHECK(mid.u_eps == doctest::Approx(4.0));
    CHECK(mid.u0 == doctest::Approx(2.0));
    CHECK(mid.u_2eps == doctest::Approx((1.0 + 1.0) / 0.25));

    RiccatiReference frozen = riccati_oracle(0.0, 2.0, 3.0, 1.7);
    CHECK(frozen.u0 == doctest::Approx(0.0));
    CHECK(frozen.u_eps == doctest::Approx(2.0));
    CHECK(frozen.u_2eps == doctest::Approx(3.0 + 4.0 * 1.7));

    CHECK_THROWS_AS(riccati_oracle(1.0, 1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(riccati_oracle(2.0, 1.0, 1.0, 0.6), std::domain_error);
}
