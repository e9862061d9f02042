#include <doctest.h>

#include <cmath>

#include "wickflow/combinatorics.hpp"

using namespace wickflow;

TEST_CASE("catalan closed form equals the recurrence") {
    CatalanTable table = CatalanTable::from_recurrence(30);
    CHECK(table.values[0] == 1);
    CHECK(catalan(0) == 1);
    CHECK(catalan(3) == 5);
    CHECK(catalan(10) == 16796);
    BigInt four_n = 1;
    for (int n = 0; n <= 30; ++n) {
        CHECK(catalan(n) == table.values[static_cast<std::size_t>(n)]);
        CHECK(catalan(n) <= four_n);
        four_n *= 4;
    }
}

TEST_CASE("multi-index catalan closed form") {
    CatalanSeeds seeds{{1, 0.7}, {2, 1.3}};
    CHECK(multi_catalan_closed(MultiIndex::unit(1), seeds) == doctest::Approx(0.7));
    CHECK(multi_catalan_closed(MultiIndex::unit(1, 2), seeds) == doctest::Approx(0.7 * 0.7));
    MultiIndex cross = MultiIndex::unit(1).plus(MultiIndex::unit(2));
    CHECK(multi_catalan_closed(cross, seeds) == doctest::Approx(2.0 * 0.7 * 1.3));
    CHECK_THROWS_AS(multi_catalan_closed(MultiIndex::unit(3), seeds), std::invalid_argument);
    CHECK_THROWS_AS(multi_catalan_closed(MultiIndex::zero(), seeds), std::invalid_argument);
}

TEST_CASE("multi-index catalan recursion agrees with the closed form") {
    CatalanSeeds seeds;
    for (int k = 1; k <= 4; ++k) seeds[k] = 0.4 + 0.3 * k;
    CHECK(multi_catalan_recursive(MultiIndex::unit(1), seeds) == doctest::Approx(0.7));
    for (const auto& alpha : enumerate({4, 6})) {
        if (alpha.is_zero()) continue;
        double closed = multi_catalan_closed(alpha, seeds);
        double recursive = multi_catalan_recursive(alpha, seeds);
        CHECK(std::abs(closed - recursive) <= 1e-10 * std::abs(closed));
    }
}

TEST_CASE("factorial ratio bound") {
    auto zero = factorial_ratio_bound(MultiIndex::zero());
    CHECK(zero.ratio == doctest::Approx(1.0));
    CHECK(zero.bound == doctest::Approx(1.0));
    CHECK(zero.holds);

    auto cross = factorial_ratio_bound(MultiIndex::unit(1).plus(MultiIndex::unit(2)));
    CHECK(cross.ratio == doctest::Approx(2.0));
    CHECK(cross.bound == doctest::Approx(64.0));
    CHECK(cross.holds);

    for (const auto& alpha : enumerate({6, 8})) CHECK(factorial_ratio_bound(alpha).holds);
}

TEST_CASE("weighted tail partial sums") {
    auto small = weighted_tail(1.0, 2.0, {1, 1});
    CHECK(small.total == doctest::Approx(1.25));
    REQUIRE(small.level_sums.size() == 2);
    CHECK(small.level_sums[0] == doctest::Approx(1.0));
    CHECK(small.level_sums[1] == doctest::Approx(0.25));

    // the DP must reproduce the direct enumeration sum
    for (double q : {0.8, 2.5}) {
        Truncation t{3, 4};
        double direct = 0.0;
        for (const auto& alpha : enumerate(t)) direct += std::pow(1.7, alpha.order()) * mi_weight(alpha, -q);
        CHECK(weighted_tail(1.7, q, t).total == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("weighted tail convergence and divergence witnesses") {
    // c = 4 with q = 3.5 per the sufficiency rule (4 <= 2^2, q > 3)
    double prev = weighted_tail(4.0, 3.5, {24, 24}).total;
    double next = weighted_tail(4.0, 3.5, {28, 28}).total;
    CHECK(next >= prev);
    CHECK(next - prev < 1e-3);

    // q <= 1 with c = 1: partial sums keep rising across nested truncations
    double d1 = weighted_tail(1.0, 0.5, {8, 8}).total;
    double d2 = weighted_tail(1.0, 0.5, {16, 16}).total;
    double d3 = weighted_tail(1.0, 0.5, {24, 24}).total;
    CHECK(d2 > d1 + 0.1);
    CHECK(d3 > d2 + 0.1);
}
