#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "wickflow/multiindex.hpp"
#include "wickflow/wick.hpp"

namespace wickflow {

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

/// alpha -> sup-norm, in canonical graded order.
using SupNormTable = std::map<MultiIndex, double, GrlexLess>;

/// Weighted square sum sum_alpha (alpha!)^{1-rho} ||f_alpha||^2 (2N)^{-q alpha}
/// with per-level partial sums.
struct NormReport {
    double rho = 1.0;
    double q = 0.0;
    double value = 0.0;
    std::vector<double> level_sums;  // index = |alpha|
};

NormReport kondratiev_norm(const SupNormTable& norms, double rho, double q);
NormReport kondratiev_norm(const ChaosField& F, double rho, double q);

struct TailDecayReport {
    std::vector<double> level_sums;
    std::vector<double> ratios;  // level_sums[l+1] / level_sums[l] where defined
    bool monotone_from_level2 = true;
};

/// Per-level partial sums of the weighted norm and their ratios; the flag
/// records whether levels decay monotonically from |alpha| = 2 on.
TailDecayReport tail_decay(const SupNormTable& norms, double rho, double q);

struct McMoments {
    std::uint64_t seed = 0;
    int draws = 0;
    Eigen::VectorXd mean, variance;
    Eigen::VectorXd mean_se, variance_se;
    Eigen::VectorXd ref_mean, ref_variance;
};

/// Seeded Monte-Carlo moment check of a chaos field: samples
/// evaluate_realization on i.i.d. standard normal coordinates and compares
/// with the coefficient references f_0 and sum_{alpha>0} alpha! f_alpha^2.
/// Draw i uses its own substream, so any partitioning reproduces the stream.
McMoments mc_moments(const ChaosField& F, int draws, std::uint64_t seed);

/// Standard normal variates for one draw (the sampler mc_moments uses).
std::vector<double> gaussian_draw(std::uint64_t seed, std::uint64_t draw_index, int count);

/// Recursive adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

/// Reference solution of u' = a(t) u + f(t), u(0) = u0 at time t through the
/// variation-of-constants formula with adaptive quadrature.
double linear_oracle(const std::function<double(double)>& a,
                     const std::function<double(double)>& f, double u0, double t);
double linear_oracle(double a, const std::function<double(double)>& f, double u0, double t);

struct RiccatiReference {
    double u0;
    double u_eps;
    double u_2eps;
};

/// Closed forms for the quadratic chain with A = 0, f = 0:
/// u_0 = c/(1-ct), u_eps = u_eps0/(1-ct)^2,
/// u_2eps = (u_2eps0 + u_eps0^2 t/(1-ct))/(1-ct)^2.
/// Throws std::domain_error at or past the pole c t >= 1.
RiccatiReference riccati_oracle(double c, double u_eps0, double u_2eps0, double t);

}  // namespace wickflow
