#pragma once

#include <map>
#include <vector>

#include "wickflow/multiindex.hpp"

namespace wickflow {

/// Exact Catalan numbers c_0..c_N.
struct CatalanTable {
    std::vector<BigInt> values;

    /// Builds the table from the convolution recurrence
    /// c_0 = 1, c_n = sum_{k<n} c_k c_{n-1-k}.
    static CatalanTable from_recurrence(int max_n);
};

/// n-th Catalan number from the closed form binomial(2n, n) / (n + 1).
BigInt catalan(int n);

/// Map position -> seed value R_{eps_k}.
using CatalanSeeds = std::map<int, double>;

/// Closed form for the multi-index Catalan recursion:
/// R_alpha = (1/|alpha|) binom(2|alpha|-2, |alpha|-1) (|alpha|!/alpha!) prod R_{eps_k}^{alpha_k}.
/// Requires |alpha| >= 1 and seeds on all of supp alpha.
double multi_catalan_closed(const MultiIndex& alpha, const CatalanSeeds& seeds);

/// Same quantity via the recursion R_alpha = sum_{0<gamma<alpha} R_gamma R_{alpha-gamma},
/// memoized per call.
double multi_catalan_recursive(const MultiIndex& alpha, const CatalanSeeds& seeds);

struct FactorialRatioBound {
    double ratio;  // |alpha|!/alpha!
    double bound;  // (2N)^{2 alpha}
    bool holds;
};

/// The factorial estimate |alpha|!/alpha! <= (2N)^{2 alpha}; the ratio is
/// computed exactly before conversion to double.
FactorialRatioBound factorial_ratio_bound(const MultiIndex& alpha);

struct WeightedTailSum {
    double total;                    // sum over the truncated index set
    std::vector<double> level_sums;  // indexed by |alpha| = 0..P
};

/// Partial sum of sum_alpha c^{|alpha|} (2N)^{-q alpha} over enumerate(trunc),
/// evaluated by a per-position dynamic program (identical to the direct
/// enumeration sum, but usable at K, P in the dozens).
WeightedTailSum weighted_tail(double c, double q, const Truncation& trunc);

}  // namespace wickflow
