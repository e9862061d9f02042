#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "wickflow/analysis.hpp"
#include "wickflow/wick.hpp"

using namespace wickflow;

namespace {

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

// Test-only oracle: the convolution written as the dumbest possible double
// loop over the full enumeration.
ChaosField brute_force_product(const ChaosField& F, const ChaosField& G) {
    ChaosField out = ChaosField::zeros(F.trunc, F.dof);
    for (const auto& alpha : enumerate(F.trunc)) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(F.dof);
        for (const auto& beta : enumerate(F.trunc)) {
            auto gamma = alpha.minus(beta);
            if (!gamma) continue;
            acc += F.coefficient(beta).cwiseProduct(G.coefficient(*gamma));
        }
        out.set(alpha, acc);
    }
    return out;
}

ChaosField random_field(const Truncation& trunc, int dof, unsigned seed, double scale = 0.5) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    ChaosField F = ChaosField::zeros(trunc, dof);
    for (const auto& alpha : enumerate(trunc)) {
        Eigen::VectorXd v(dof);
        for (int i = 0; i < dof; ++i) v[i] = dist(rng);
        F.set(alpha, v);
    }
    return F;
}

double max_coeff_diff(const ChaosField& A, const ChaosField& B) {
    double worst = 0.0;
    for (const auto& alpha : enumerate(A.trunc))
        worst = std::max(worst, (A.coefficient(alpha) - B.coefficient(alpha)).cwiseAbs().maxCoeff());
    return worst;
}

// Gauss-Hermite nodes/weights for weight e^{-x^2} via the Jacobi matrix.
struct GaussHermite {
    Eigen::VectorXd nodes, weights;
};

// physicists' Hermite polynomial H_n and H_{n-1} (for Newton steps)
std::pair<double, double> physicists_hermite(int n, double x) {
    double prev = 1.0, cur = 2.0 * x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 1; k < n; ++k) {
        double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

GaussHermite gauss_hermite(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double b = std::sqrt(i / 2.0);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    GaussHermite gh;
    gh.nodes = eig.eigenvalues();
    gh.weights.resize(n);
    // polish the eigensolver nodes with Newton on H_n (H_n' = 2n H_{n-1}),
    // then use the closed-form weights 2^{n-1} n! sqrt(pi) / (n H_{n-1})^2
    double log_lead = (n - 1) * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(M_PI);
    for (int i = 0; i < n; ++i) {
        double x = gh.nodes[i];
        for (int it = 0; it < 4; ++it) {
            auto [hn, hnm1] = physicists_hermite(n, x);
            x -= hn / (2.0 * n * hnm1);
        }
        gh.nodes[i] = x;
        auto [hn, hnm1] = physicists_hermite(n, x);
        double log_w = log_lead - 2.0 * (std::log(static_cast<double>(n)) + std::log(std::abs(hnm1)));
        gh.weights[i] = std::exp(log_w);
    }
    return gh;
}

// E[f(X)] for X ~ N(0,1) by Gauss-Hermite quadrature.
double gaussian_expectation(const std::function<double(double)>& f, const GaussHermite& gh) {
    double acc = 0.0;
    for (int i = 0; i < gh.nodes.size(); ++i) acc += gh.weights[i] * f(std::sqrt(2.0) * gh.nodes[i]);
    return acc / std::sqrt(M_PI);
}

}  // namespace

TEST_CASE("wick product by hand") {
    Truncation t{2, 3};
    ChaosField F = ChaosField::zeros(t, 1);
    F.set(MultiIndex::zero(), scalar(1.0));
    F.set(MultiIndex::unit(1), scalar(1.0));
    ChaosField G = ChaosField::zeros(t, 1);
    G.set(MultiIndex::unit(1), scalar(1.0));

    ChaosField FG = wick_product(F, G);
    CHECK(FG.coefficient(MultiIndex::unit(1))[0] == doctest::Approx(1.0));
    CHECK(FG.coefficient(MultiIndex::unit(1, 2))[0] == doctest::Approx(1.0));
    CHECK(FG.coefficient(MultiIndex::zero())[0] == doctest::Approx(0.0));

    ChaosField C = ChaosField::deterministic(t, scalar(3.0));
    ChaosField D = ChaosField::deterministic(t, scalar(-2.0));
    CHECK(wick_product(C, D).coefficient(MultiIndex::zero())[0] == doctest::Approx(-6.0));

    ChaosField H1 = ChaosField::zeros(t, 1);
    H1.set(MultiIndex::unit(1), scalar(1.0));
    ChaosField H2 = ChaosField::zeros(t, 1);
    H2.set(MultiIndex::unit(2), scalar(1.0));
    ChaosField cross = wick_product(H1, H2);
    CHECK(cross.coefficient(MultiIndex::unit(1).plus(MultiIndex::unit(2)))[0] == doctest::Approx(1.0));
}

TEST_CASE("wick product dimension errors") {
    ChaosField F = ChaosField::zeros({2, 2}, 3);
    ChaosField G = ChaosField::zeros({2, 2}, 4);
    CHECK_THROWS_AS(wick_product(F, G), std::invalid_argument);
    ChaosField H = ChaosField::zeros({2, 3}, 3);
    CHECK_THROWS_AS(wick_product(F, H), std::invalid_argument);
}

TEST_CASE("wick product matches the brute-force oracle and commutes exactly") {
    ChaosField F = random_field({3, 4}, 2, 101);
    ChaosField G = random_field({3, 4}, 2, 202);
    ChaosField fast = wick_product(F, G);
    ChaosField slow = brute_force_product(F, G);
    CHECK(max_coeff_diff(fast, slow) <= 1e-13);

    ChaosField swapped = wick_product(G, F);
    for (const auto& alpha : enumerate(F.trunc)) {
        Eigen::VectorXd a = fast.coefficient(alpha);
        Eigen::VectorXd b = swapped.coefficient(alpha);
        for (int i = 0; i < 2; ++i) CHECK(a[i] == b[i]);  // bitwise
    }
}

TEST_CASE("wick product is associative where nothing is truncated away") {
    Truncation t{2, 6};
    ChaosField F = random_field({2, 2}, 2, 7);
    ChaosField G = random_field({2, 2}, 2, 8);
    ChaosField H = random_field({2, 2}, 2, 9);
    ChaosField fgh1, fgh2;
    // lift the small-support fields into the roomier truncation
    auto lift = [&t](const ChaosField& X) {
        ChaosField out = ChaosField::zeros(t, X.dof);
        for (const auto& alpha : X.sorted_support()) out.set(alpha, X.coeffs.at(alpha));
        return out;
    };
    fgh1 = wick_product(wick_product(lift(F), lift(G)), lift(H));
    fgh2 = wick_product(lift(F), wick_product(lift(G), lift(H)));
    CHECK(max_coeff_diff(fgh1, fgh2) <= 1e-12);
}

TEST_CASE("wick powers") {
    Truncation t{2, 6};
    ChaosField H2 = ChaosField::zeros(t, 1);
    H2.set(MultiIndex::unit(2), scalar(1.0));
    ChaosField cube = wick_power(H2, 3);
    CHECK(cube.coefficient(MultiIndex::unit(2, 3))[0] == doctest::Approx(1.0));
    for (const auto& alpha : enumerate(t))
        if (!(alpha == MultiIndex::unit(2, 3)))
            CHECK(cube.coefficient(alpha)[0] == doctest::Approx(0.0));

    ChaosField c = ChaosField::deterministic(t, scalar(1.7));
    CHECK(wick_power(c, 5).coefficient(MultiIndex::zero())[0] == doctest::Approx(std::pow(1.7, 5)));
    CHECK(wick_power(c, 0).coefficient(MultiIndex::zero())[0] == doctest::Approx(1.0));

    ChaosField mix = ChaosField::zeros(t, 1);
    mix.set(MultiIndex::zero(), scalar(1.0));
    mix.set(MultiIndex::unit(1), scalar(1.0));
    ChaosField sq = wick_power(mix, 2);
    ChaosField oracle = brute_force_product(mix, mix);
    CHECK(max_coeff_diff(sq, oracle) <= 1e-14);
    CHECK(sq.coefficient(MultiIndex::zero())[0] == doctest::Approx(1.0));
    CHECK(sq.coefficient(MultiIndex::unit(1))[0] == doctest::Approx(2.0));
    CHECK(sq.coefficient(MultiIndex::unit(1, 2))[0] == doctest::Approx(1.0));
}

TEST_CASE("power coefficient split") {
    Truncation t{2, 4};
    ChaosField u = ChaosField::zeros(t, 1);
    u.set(MultiIndex::zero(), scalar(1.0));
    u.set(MultiIndex::unit(1), scalar(1.0));

    auto split = power_coeff_split(u, 2, MultiIndex::unit(1, 2));
    CHECK(split.leading[0] == doctest::Approx(0.0));
    CHECK(split.remainder[0] == doctest::Approx(1.0));

    // n = 1 is the linear case
    auto lin = power_coeff_split(u, 1, MultiIndex::unit(1));
    CHECK(lin.leading[0] == doctest::Approx(1.0));
    CHECK(lin.remainder[0] == doctest::Approx(0.0));

    ChaosField v = ChaosField::zeros(t, 1);
    v.set(MultiIndex::unit(1), scalar(0.4));
    v.set(MultiIndex::unit(2), scalar(-0.3));
    MultiIndex cross = MultiIndex::unit(1).plus(MultiIndex::unit(2));
    auto vsplit = power_coeff_split(v, 2, cross);
    CHECK(vsplit.leading[0] == doctest::Approx(0.0));
    CHECK(vsplit.remainder[0] == doctest::Approx(2.0 * 0.4 * -0.3));

    CHECK_THROWS_AS(power_coeff_split(u, 2, MultiIndex::zero()), std::invalid_argument);
}

TEST_CASE("power split reconstructs the wick power and stays triangular") {
    ChaosField u = random_field({2, 4}, 2, 31);
    for (int n : {2, 3, 4}) {
        ChaosField pw = wick_power(u, n);
        for (const auto& alpha : enumerate(u.trunc)) {
            if (alpha.is_zero()) continue;
            auto split = power_coeff_split(u, n, alpha);
            Eigen::VectorXd reconstructed = split.leading + split.remainder;
            CHECK((reconstructed - pw.coefficient(alpha)).cwiseAbs().maxCoeff() <= 1e-12);

            // perturbing any coefficient not strictly below alpha leaves the
            // remainder bitwise unchanged
            for (const auto& beta : enumerate(u.trunc)) {
                if (beta.strictly_inside(alpha) || beta.is_zero()) continue;
                ChaosField perturbed = u;
                perturbed.set(beta, u.coefficient(beta) + Eigen::VectorXd::Constant(2, 0.9));
                Eigen::VectorXd again = power_coeff_split(perturbed, n, alpha).remainder;
                for (int i = 0; i < 2; ++i) CHECK(again[i] == split.remainder[i]);
            }
        }
    }
}

TEST_CASE("direct wick polynomial evaluation") {
    Truncation t{1, 3};
    WickPolynomial fisher({0.0, 1.0, -1.0});  // x - x^2
    ChaosField c = ChaosField::deterministic(t, scalar(0.3));
    ChaosField out = wick_polynomial_direct(fisher, c);
    CHECK(out.coefficient(MultiIndex::zero())[0] == doctest::Approx(0.3 - 0.09));

    WickPolynomial square({0.0, 0.0, 1.0});
    ChaosField H1 = ChaosField::zeros(t, 1);
    H1.set(MultiIndex::unit(1), scalar(1.0));
    ChaosField sq = wick_polynomial_direct(square, H1);
    CHECK(sq.coefficient(MultiIndex::unit(1, 2))[0] == doctest::Approx(1.0));
    CHECK(sq.coefficient(MultiIndex::unit(1))[0] == doctest::Approx(0.0));

    WickPolynomial p({0.0, 0.0, 1.0, -1.0});  // x^2 - x^3
    ChaosField mix = ChaosField::zeros(t, 1);
    mix.set(MultiIndex::zero(), scalar(1.0));
    mix.set(MultiIndex::unit(1), scalar(1.0));
    ChaosField via_direct = wick_polynomial_direct(p, mix);
    ChaosField sq_oracle = brute_force_product(mix, mix);
    ChaosField cube_oracle = brute_force_product(sq_oracle, mix);
    for (const auto& alpha : enumerate(t))
        CHECK(via_direct.coefficient(alpha)[0] ==
              doctest::Approx(sq_oracle.coefficient(alpha)[0] - cube_oracle.coefficient(alpha)[0])
                  .epsilon(1e-12));
}

TEST_CASE("taylor form of a wick polynomial") {
    Truncation t{2, 4};
    WickPolynomial cubic({0.2, -0.4, 0.3, 1.0});

    ChaosField det = ChaosField::deterministic(t, scalar(0.7));
    ChaosField out = wick_taylor(cubic, det);
    CHECK(out.coefficient(MultiIndex::zero())[0] == doctest::Approx(cubic(0.7)));
    for (const auto& alpha : enumerate(t))
        if (!alpha.is_zero()) CHECK(out.coefficient(alpha)[0] == doctest::Approx(0.0));

    ChaosField mix = ChaosField::zeros(t, 1);
    mix.set(MultiIndex::zero(), scalar(1.0));
    mix.set(MultiIndex::unit(1), scalar(1.0));
    ChaosField single = wick_taylor(cubic, mix);
    CHECK(single.coefficient(MultiIndex::unit(1))[0] == doctest::Approx(cubic.derivative(1, 1.0)));

    for (unsigned seed : {1u, 2u}) {
        ChaosField u = random_field({2, 4}, 3, seed);
        WickPolynomial quad({0.1, 0.5, -0.8});
        CHECK(max_coeff_diff(wick_taylor(quad, u), wick_polynomial_direct(quad, u)) <= 1e-12);
        CHECK(max_coeff_diff(wick_taylor(cubic, u), wick_polynomial_direct(cubic, u)) <= 1e-12);
    }
}

TEST_CASE("hermite transform") {
    Truncation t{2, 3};
    ChaosField F = ChaosField::zeros(t, 1);
    F.set(MultiIndex::unit(1), scalar(1.0));
    CHECK(hermite_transform(F, {0.5, 0.1})[0] == doctest::Approx(0.5));

    ChaosField C = ChaosField::deterministic(t, scalar(-2.5));
    CHECK(hermite_transform(C, {0.9, -0.9})[0] == doctest::Approx(-2.5));

    ChaosField G = random_field({2, 1}, 1, 55);
    ChaosField H = random_field({2, 1}, 1, 56);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> zdist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> z{zdist(rng), zdist(rng)};
        // lift into a truncation wide enough that nothing is dropped
        Truncation big{2, 2};
        ChaosField Gb = ChaosField::zeros(big, 1), Hb = ChaosField::zeros(big, 1);
        for (const auto& a : G.sorted_support()) Gb.set(a, G.coeffs.at(a));
        for (const auto& a : H.sorted_support()) Hb.set(a, H.coeffs.at(a));
        double lhs = hermite_transform(wick_product(Gb, Hb), z)[0];
        double rhs = hermite_transform(Gb, z)[0] * hermite_transform(Hb, z)[0];
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("the transform check catches a sign flip in the convolution") {
    // a deliberately broken product: the mirrored split enters negated
    Truncation t{2, 2};
    ChaosField F = random_field({2, 1}, 1, 90);
    ChaosField G = random_field({2, 1}, 1, 91);
    ChaosField Fb = ChaosField::zeros(t, 1), Gb = ChaosField::zeros(t, 1);
    for (const auto& a : F.sorted_support()) Fb.set(a, F.coeffs.at(a));
    for (const auto& a : G.sorted_support()) Gb.set(a, G.coeffs.at(a));
    ChaosField bad = ChaosField::zeros(t, 1);
    for (const auto& alpha : enumerate(t)) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(1);
        for (const auto& beta : enumerate(t)) {
            auto gamma = alpha.minus(beta);
            if (!gamma) continue;
            double sign = grlex_less(beta, *gamma) ? 1.0 : -1.0;
            acc += sign * Fb.coefficient(beta).cwiseProduct(Gb.coefficient(*gamma));
        }
        bad.set(alpha, acc);
    }
    double worst = 0.0;
    std::mt19937 rng(92);
    std::uniform_real_distribution<double> zdist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> z{zdist(rng), zdist(rng)};
        double lhs = hermite_transform(bad, z)[0];
        double rhs = hermite_transform(Fb, z)[0] * hermite_transform(Gb, z)[0];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst > 1e-6);
}

TEST_CASE("hermite polynomials") {
    CHECK(hermite_poly(2, 2.0) == doctest::Approx(3.0));
    CHECK(hermite_poly(3, 1.0) == doctest::Approx(-2.0));
    CHECK(hermite_poly(0, 5.0) == doctest::Approx(1.0));

    GaussHermite gh = gauss_hermite(20);
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            double expected = (m == n) ? std::tgamma(n + 1.0) : 0.0;
            double got = gaussian_expectation(
                [m, n](double x) { return hermite_poly(m, x) * hermite_poly(n, x); }, gh);
            CHECK(std::abs(got - expected) <= 1e-8);
        }
    }
}

TEST_CASE("pathwise evaluation") {
    Truncation t{2, 3};
    ChaosField F = ChaosField::zeros(t, 1);
    F.set(MultiIndex::unit(1), scalar(1.0));
    CHECK(evaluate_realization(F, {1.3, 0.0})[0] == doctest::Approx(1.3));

    ChaosField G = ChaosField::zeros(t, 1);
    G.set(MultiIndex::unit(1, 2), scalar(1.0));
    CHECK(evaluate_realization(G, {0.0, 0.0})[0] == doctest::Approx(-1.0));

    // sample mean approaches f_0 (fixed seed, 4 standard errors)
    ChaosField H = random_field({2, 2}, 1, 123);
    McMoments mc = mc_moments(H, 20000, 7);
    CHECK(std::abs(mc.mean[0] - H.coefficient(MultiIndex::zero())[0]) <= 4.0 * mc.mean_se[0]);
}

TEST_CASE("variance identity for pathwise evaluation") {
    ChaosField F = random_field({3, 3}, 1, 321, 0.4);
    McMoments mc = mc_moments(F, 20000, 11);
    double ref = 0.0;
    for (const auto& alpha : enumerate(F.trunc)) {
        if (alpha.is_zero()) continue;
        ref += static_cast<double>(mi_factorial(alpha)) * std::pow(F.coefficient(alpha)[0], 2);
    }
    CHECK(std::abs(mc.variance[0] - ref) <= 4.0 * mc.variance_se[0]);
}

TEST_CASE("hermite functions") {
    CHECK(hermite_function(1, 0.0) == doctest::Approx(std::pow(M_PI, -0.25)));
    CHECK(hermite_function(2, 0.0) == doctest::Approx(0.0));

    // orthonormality over a wide composite-Simpson grid
    const int panels = 3000;
    const double a = -12.0, b = 12.0, h = (b - a) / panels;
    for (int j = 1; j <= 10; ++j) {
        for (int k = j; k <= 10; ++k) {
            double acc = 0.0;
            for (int i = 0; i < panels; ++i) {
                double x0 = a + i * h, x1 = x0 + h, xm = x0 + 0.5 * h;
                auto f = [&](double x) { return hermite_function(j, x) * hermite_function(k, x); };
                acc += h / 6.0 * (f(x0) + 4.0 * f(xm) + f(x1));
            }
            double expected = (j == k) ? 1.0 : 0.0;
            CHECK(std::abs(acc - expected) <= 1e-6);
        }
    }
}
