#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wickflow/multiindex.hpp"

namespace wickflow {

/// Discretized spatial operator with its semigroup stability constants
/// ||exp(sA)|| <= m e^{ws}, plus an optional scalar time profile a(t)
/// multiplying the action (the admissible nonautonomous form).
struct SpatialOperator {
    int dof = 1;            // grid size M
    Eigen::MatrixXd action; // M x M
    double stability_m = 1.0;
    double growth_w = 0.0;
    std::function<double(double)> time_scale;  // empty => autonomous
    std::string preset = "scalar";

    bool time_dependent() const { return static_cast<bool>(time_scale); }
};

/// Dirichlet second-difference Laplacian on (0, L) with M interior points;
/// m = 1 and w = largest (least negative) eigenvalue.
SpatialOperator laplacian_1d(int M, double L);

/// 1x1 operator a; w = a, m = 1.
SpatialOperator scalar_operator(double a);

/// diag(d); w = max entry, m = 1.
SpatialOperator diagonal_operator(const Eigen::VectorXd& d);

/// a(t) * base.action with the base's stability constants kept as hypotheses.
SpatialOperator scaled_operator(SpatialOperator base, std::function<double(double)> profile,
                                const std::string& profile_name);

/// exp(sA) by scaling-and-squaring with the diagonal Pade(6,6) approximant.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A, double s);

/// exp(sA) through the spectral decomposition; valid for symmetric A only.
/// Kept as the independent cross-check route for the Pade path.
Eigen::MatrixXd matrix_exponential_symmetric_eig(const Eigen::MatrixXd& A, double s);

/// Largest singular value.
double operator_two_norm(const Eigen::MatrixXd& A);

/// Scalar function known through samples on a uniform grid; values between
/// nodes come from 4-point (cubic) Lagrange interpolation.
struct SampledScalar {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;

    static SampledScalar sample(const std::function<double(double)>& f, double t0, double t1, int n_steps);

    double operator()(double t) const;

    /// Composite Simpson over [a, b] split at the grid nodes, midpoints by
    /// cubic interpolation.
    double integrate(double a, double b) const;
};

/// exp(int_s^t lambda) for a grid-sampled scalar lambda.
double evolution_factor(const SampledScalar& lambda, double s, double t);

/// Midpoint of a uniform-grid interval by the cubic through the two nodes on
/// each side (weights -1/16, 9/16, 9/16, -1/16); callers clamp at the ends.
double cubic_midpoint(double fm1, double f0, double f1, double f2);

/// One-step evolution bundle S(t+dt, t) = D^{1/2} exp(dt A) D^{1/2} with
/// D = exp(log_factor) applied componentwise. For a spatially constant
/// perturbation the splitting is exact and equals exp(dt A) exp(int lambda).
struct Propagator {
    Eigen::MatrixXd exp_dt_A;
    Eigen::VectorXd log_factor;  // int_t^{t+dt} lambda, per component

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
};

/// Exponential trapezoidal step
/// u(t+dt) = S u(t) + (dt/2) [S g(t) + g(t+dt)], global order 2.
Eigen::VectorXd duhamel_step(const Propagator& S, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& g_t, const Eigen::VectorXd& g_next, double dt);

/// Same trapezoidal rule for the linear nonautonomous family a(t)A:
/// the step propagator is exp(mu A) with mu = int_t^{t+dt} a.
Eigen::VectorXd nonautonomous_step(const Eigen::MatrixXd& exp_mu_A, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& f_t, const Eigen::VectorXd& f_next, double dt);

}  // namespace wickflow
