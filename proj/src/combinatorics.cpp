#include "wickflow/combinatorics.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace wickflow {

CatalanTable CatalanTable::from_recurrence(int max_n) {
    if (max_n < 0) throw std::invalid_argument("catalan table needs max_n >= 0");
    CatalanTable table;
    table.values.resize(static_cast<std::size_t>(max_n) + 1);
    table.values[0] = 1;
    for (int n = 1; n <= max_n; ++n) {
        BigInt s = 0;
        for (int k = 0; k < n; ++k) s += table.values[static_cast<std::size_t>(k)] * table.values[static_cast<std::size_t>(n - 1 - k)];
        table.values[static_cast<std::size_t>(n)] = s;
    }
    return table;
}

BigInt catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan needs n >= 0");
    return binomial(2 * n, n) / (n + 1);
}

namespace {

double seed_power_product(const MultiIndex& alpha, const CatalanSeeds& seeds) {
    double prod = 1.0;
    for (const auto& e : alpha.entries()) {
        auto it = seeds.find(e.position);
        if (it == seeds.end())
            throw std::invalid_argument("missing Catalan seed R_eps at position " + std::to_string(e.position));
        prod *= std::pow(it->second, e.exponent);
    }
    return prod;
}

}  // namespace

double multi_catalan_closed(const MultiIndex& alpha, const CatalanSeeds& seeds) {
    int n = alpha.order();
    if (n < 1) throw std::invalid_argument("multi_catalan_closed needs |alpha| >= 1");
    BigInt combinatorial = binomial(2 * n - 2, n - 1) * order_factorial(alpha);
    combinatorial /= n;
    // binom(2n-2, n-1)/n is the (n-1)-th Catalan number, an integer; the
    // remaining factorial ratio |alpha|!/alpha! need not be, so divide in
    // doubles.
    double ratio = static_cast<double>(combinatorial) / static_cast<double>(mi_factorial(alpha));
    return ratio * seed_power_product(alpha, seeds);
}

namespace {

double multi_catalan_memo(const MultiIndex& alpha, const CatalanSeeds& seeds,
                          std::unordered_map<MultiIndex, double, MultiIndexHash>& memo) {
    if (alpha.order() == 1) {
        auto it = seeds.find(alpha.entries().front().position);
        if (it == seeds.end())
            throw std::invalid_argument("missing Catalan seed R_eps at position " +
                                        std::to_string(alpha.entries().front().position));
        return it->second;
    }
    auto hit = memo.find(alpha);
    if (hit != memo.end()) return hit->second;
    double s = 0.0;
    for (const auto& [gamma, rest] : interior_splits(alpha))
        s += multi_catalan_memo(gamma, seeds, memo) * multi_catalan_memo(rest, seeds, memo);
    memo.emplace(alpha, s);
    return s;
}

}  // namespace

double multi_catalan_recursive(const MultiIndex& alpha, const CatalanSeeds& seeds) {
    if (alpha.order() < 1) throw std::invalid_argument("multi_catalan_recursive needs |alpha| >= 1");
    std::unordered_map<MultiIndex, double, MultiIndexHash> memo;
    return multi_catalan_memo(alpha, seeds, memo);
}

FactorialRatioBound factorial_ratio_bound(const MultiIndex& alpha) {
    double ratio = static_cast<double>(order_factorial(alpha)) / static_cast<double>(mi_factorial(alpha));
    double bound = mi_weight(alpha, 2.0);
    return {ratio, bound, ratio <= bound};
}

WeightedTailSum weighted_tail(double c, double q, const Truncation& trunc) {
    const int K = trunc.max_position;
    const int P = trunc.max_order;
    if (K < 1 || P < 0) throw std::invalid_argument("weighted_tail needs K >= 1, P >= 0");
    // level[l] accumulates sum over alpha with supp <= {1..k}, |alpha| = l of
    // prod (c (2j)^{-q})^{alpha_j}; one position folded in per pass.
    std::vector<double> level(static_cast<std::size_t>(P) + 1, 0.0);
    level[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        const double x = c * std::pow(2.0 * k, -q);
        std::vector<double> next(level.size(), 0.0);
        for (int l = 0; l <= P; ++l) {
            double xe = 1.0;
            for (int e = 0; e <= l; ++e) {
                next[static_cast<std::size_t>(l)] += level[static_cast<std::size_t>(l - e)] * xe;
                xe *= x;
            }
        }
        level.swap(next);
    }
    WeightedTailSum out;
    out.level_sums = std::move(level);
    out.total = 0.0;
    for (double s : out.level_sums) out.total += s;
    return out;
}

}  // namespace wickflow
