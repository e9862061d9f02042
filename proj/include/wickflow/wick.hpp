#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "wickflow/multiindex.hpp"

namespace wickflow {

/// One time slice of a chaos-expanded process: coefficients u_alpha as
/// spatial vectors over a shared grid. Missing keys are zero. The ambient
/// Banach-algebra product on coefficient vectors is componentwise.
struct ChaosField {
    Truncation trunc{1, 0};
    int dof = 1;  // spatial degrees of freedom M
    std::unordered_map<MultiIndex, Eigen::VectorXd, MultiIndexHash> coeffs;

    static ChaosField zeros(const Truncation& trunc, int dof);

    /// c * H_0 with a constant spatial vector.
    static ChaosField deterministic(const Truncation& trunc, const Eigen::VectorXd& value);

    /// Stored coefficient or nullptr.
    const Eigen::VectorXd* find(const MultiIndex& alpha) const;

    /// Coefficient by value, zero vector when absent.
    Eigen::VectorXd coefficient(const MultiIndex& alpha) const;

    /// Inserts or overwrites; validates membership in the truncation and the
    /// vector length.
    void set(const MultiIndex& alpha, Eigen::VectorXd value);

    /// Keys in graded order (canonical iteration order for output and for
    /// reproducible accumulation).
    std::vector<MultiIndex> sorted_support() const;
};

/// Wick polynomial p_n^{<>}(u) = sum a_k u^{<> k} together with its
/// deterministic companion p_n and derivatives.
struct WickPolynomial {
    std::vector<double> coeffs;  // a_0..a_n

    WickPolynomial() = default;
    explicit WickPolynomial(std::vector<double> a);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    /// p^{(j)}(x) by Horner on the shifted coefficients.
    double derivative(int j, double x) const;
    double operator()(double x) const { return derivative(0, x); }

    /// Componentwise evaluation of p^{(j)} on a spatial vector.
    Eigen::VectorXd derivative(int j, const Eigen::VectorXd& x) const;
};

/// Chaos-coefficient convolution (F <> G)_alpha = sum_{beta <= alpha}
/// f_beta . g_{alpha-beta}, projected onto the shared truncation.
/// Throws std::invalid_argument on mismatched truncation or grid size.
ChaosField wick_product(const ChaosField& F, const ChaosField& G);

/// Iterated Wick product; n = 0 yields 1 * H_0 (all-ones spatial vector).
ChaosField wick_power(const ChaosField& F, int n);

/// T_j(alpha): sum over ordered j-tuples of strictly positive multi-indices
/// summing to alpha of the componentwise product of their coefficients.
/// Reads only coefficients at indices strictly below alpha. `coeff` may
/// return nullptr for zero coefficients.
Eigen::VectorXd interior_chain_sum(
    const std::function<const Eigen::VectorXd*(const MultiIndex&)>& coeff,
    const MultiIndex& alpha, int j, int dof);

struct PowerCoeffSplit {
    Eigen::VectorXd leading;    // n u_0^{n-1} . u_alpha
    Eigen::VectorXd remainder;  // r_{alpha,n}, built from u_beta with beta < alpha only
};

/// Splits (u^{<> n})_alpha into the leading term and the remainder r_{alpha,n}.
/// The remainder is assembled directly from strictly lower coefficients, so it
/// is bitwise invariant under perturbations of u_beta for beta not below alpha.
/// Requires alpha > 0.
PowerCoeffSplit power_coeff_split(const ChaosField& u, int n, const MultiIndex& alpha);

/// sum a_k wick_power(u, k); a_0 enters as a_0 * H_0.
ChaosField wick_polynomial_direct(const WickPolynomial& p, const ChaosField& u);

/// Derivative-form expansion around the mean mode:
/// p(u_0) H_0 + sum_{j>=1} p^{(j)}(u_0)/j! . (u - u_0 H_0)^{<> j}.
/// Algebraically identical to wick_polynomial_direct.
ChaosField wick_taylor(const WickPolynomial& p, const ChaosField& u);

/// Finite Hermite transform sum_alpha f_alpha prod_k z_k^{alpha_k};
/// z needs one entry per active position (length >= trunc K).
Eigen::VectorXd hermite_transform(const ChaosField& F, const std::vector<double>& z);

/// Probabilists' Hermite polynomial h_n(x) via the three-term recurrence.
double hermite_poly(int n, double x);

/// Pathwise evaluation sum_alpha f_alpha prod_k h_{alpha_k}(g_k) at sampled
/// Gaussian coordinates g.
Eigen::VectorXd evaluate_realization(const ChaosField& F, const std::vector<double>& g);

/// Orthonormal Hermite function xi_k(t), k >= 1, via the stable recurrence
/// xi_{k+1} = sqrt(2/k) t xi_k - sqrt((k-1)/k) xi_{k-1}, xi_1 = pi^{-1/4} e^{-t^2/2}.
double hermite_function(int k, double t);

}  // namespace wickflow
