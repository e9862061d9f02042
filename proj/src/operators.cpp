#include "wickflow/operators.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace wickflow {

SpatialOperator laplacian_1d(int M, double L) {
    if (M < 2) throw std::invalid_argument("laplacian_1d needs M >= 2");
    if (L <= 0.0) throw std::invalid_argument("laplacian_1d needs L > 0");
    const double h = L / (M + 1);
    SpatialOperator op;
    op.dof = M;
    op.preset = "laplacian1d";
    op.action = Eigen::MatrixXd::Zero(M, M);
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < M; ++i) {
        op.action(i, i) = -2.0 * inv_h2;
        if (i > 0) op.action(i, i - 1) = inv_h2;
        if (i + 1 < M) op.action(i, i + 1) = inv_h2;
    }
    op.stability_m = 1.0;
    const double s = std::sin(M_PI * h / (2.0 * L));
    op.growth_w = -4.0 * inv_h2 * s * s;  // largest eigenvalue
    return op;
}

SpatialOperator scalar_operator(double a) {
    SpatialOperator op;
    op.dof = 1;
    op.preset = "scalar";
    op.action = Eigen::MatrixXd::Constant(1, 1, a);
    op.stability_m = 1.0;
    op.growth_w = a;
    return op;
}

SpatialOperator diagonal_operator(const Eigen::VectorXd& d) {
    if (d.size() < 1) throw std::invalid_argument("diagonal operator needs at least one entry");
    SpatialOperator op;
    op.dof = static_cast<int>(d.size());
    op.preset = "diagonal";
    op.action = d.asDiagonal();
    op.stability_m = 1.0;
    op.growth_w = d.maxCoeff();
    return op;
}

SpatialOperator scaled_operator(SpatialOperator base, std::function<double(double)> profile,
                                const std::string& profile_name) {
    if (!profile) throw std::invalid_argument("scaled operator needs a profile");
    base.time_scale = std::move(profile);
    base.preset = "scaled:" + profile_name + "(" + base.preset + ")";
    return base;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A, double s) {
    if (A.rows() != A.cols()) throw std::invalid_argument("matrix exponential needs a square matrix");
    const Eigen::Index n = A.rows();
    Eigen::MatrixXd B = s * A;

    const double norm = B.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    if (squarings > 0) B /= std::pow(2.0, squarings);

    // diagonal Pade(6,6) coefficients
    static const double c[7] = {1.0,        1.0 / 2.0,    5.0 / 44.0, 1.0 / 66.0,
                                1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd B2 = B * B;
    const Eigen::MatrixXd B4 = B2 * B2;
    const Eigen::MatrixXd B6 = B4 * B2;
    Eigen::MatrixXd even = c[0] * I + c[2] * B2 + c[4] * B4 + c[6] * B6;
    Eigen::MatrixXd odd = B * (c[1] * I + c[3] * B2 + c[5] * B4);
    Eigen::MatrixXd num = even + odd;
    Eigen::MatrixXd den = even - odd;
    Eigen::MatrixXd X = den.partialPivLu().solve(num);
    for (int i = 0; i < squarings; ++i) X = X * X;
    return X;
}

Eigen::MatrixXd matrix_exponential_symmetric_eig(const Eigen::MatrixXd& A, double s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("symmetric eigendecomposition failed");
    Eigen::VectorXd ev = (s * eig.eigenvalues().array()).exp();
    return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
}

double operator_two_norm(const Eigen::MatrixXd& A) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues()(0);
}

SampledScalar SampledScalar::sample(const std::function<double(double)>& f, double t0, double t1, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("sampled scalar needs at least one step");
    SampledScalar s;
    s.t0 = t0;
    s.dt = (t1 - t0) / n_steps;
    s.values.resize(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) s.values[static_cast<std::size_t>(i)] = f(t0 + i * s.dt);
    return s;
}

namespace {

double lagrange4(double x, const double* f, const double* xs) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            w *= (x - xs[j]) / (xs[i] - xs[j]);
        }
        acc += w * f[i];
    }
    return acc;
}

}  // namespace

double SampledScalar::operator()(double t) const {
    const int n = static_cast<int>(values.size()) - 1;
    if (n == 0) return values[0];
    double pos = (t - t0) / dt;
    int i = static_cast<int>(std::floor(pos));
    i = std::max(0, std::min(i, n - 1));
    if (n < 3) {  // not enough nodes for a cubic; fall back to linear
        double w = pos - i;
        return (1.0 - w) * values[static_cast<std::size_t>(i)] + w * values[static_cast<std::size_t>(i + 1)];
    }
    int base = std::max(0, std::min(i - 1, n - 3));
    double xs[4], fs[4];
    for (int k = 0; k < 4; ++k) {
        xs[k] = t0 + (base + k) * dt;
        fs[k] = values[static_cast<std::size_t>(base + k)];
    }
    return lagrange4(t, fs, xs);
}

double SampledScalar::integrate(double a, double b) const {
    if (b < a) return -integrate(b, a);
    const int n = static_cast<int>(values.size()) - 1;
    const double t_end = t0 + n * dt;
    if (a < t0 - 1e-9 * std::abs(dt) || b > t_end + 1e-9 * std::abs(dt))
        throw std::out_of_range("integration interval leaves the sampled grid");
    double acc = 0.0;
    int first = std::max(0, static_cast<int>(std::floor((a - t0) / dt)));
    int last = std::min(n - 1, static_cast<int>(std::ceil((b - t0) / dt)) - 1);
    for (int i = first; i <= last; ++i) {
        double lo = std::max(a, t0 + i * dt);
        double hi = std::min(b, t0 + (i + 1) * dt);
        if (hi <= lo) continue;
        double mid = 0.5 * (lo + hi);
        acc += (hi - lo) / 6.0 * ((*this)(lo) + 4.0 * (*this)(mid) + (*this)(hi));
    }
    return acc;
}

double evolution_factor(const SampledScalar& lambda, double s, double t) {
    if (t < s) throw std::invalid_argument("evolution_factor needs s <= t");
    return std::exp(lambda.integrate(s, t));
}

double cubic_midpoint(double fm1, double f0, double f1, double f2) {
    return (-fm1 + 9.0 * f0 + 9.0 * f1 - f2) / 16.0;
}

Eigen::VectorXd Propagator::apply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd half = (0.5 * log_factor.array()).exp();
    return half.cwiseProduct(exp_dt_A * half.cwiseProduct(v));
}

Eigen::VectorXd duhamel_step(const Propagator& S, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& g_t, const Eigen::VectorXd& g_next, double dt) {
    return S.apply(u + 0.5 * dt * g_t) + 0.5 * dt * g_next;
}

Eigen::VectorXd nonautonomous_step(const Eigen::MatrixXd& exp_mu_A, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& f_t, const Eigen::VectorXd& f_next, double dt) {
    return exp_mu_A * (u + 0.5 * dt * f_t) + 0.5 * dt * f_next;
}

}  // namespace wickflow
