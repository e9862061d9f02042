#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wickflow/analysis.hpp"
#include "wickflow/multiindex.hpp"
#include "wickflow/operators.hpp"
#include "wickflow/wick.hpp"

namespace wickflow {

/// Level-0 sup-norm crossed the blow-up cap: no solution on [0, T].
struct BlowUpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite values outside the level-0 guard.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chaos coefficients of the driving force, evaluated lazily in time.
class Forcing {
public:
    using ModeFn = std::function<Eigen::VectorXd(double t, int dof)>;

    Forcing() = default;

    static Forcing zero();

    /// f_{eps_k}(t) = amplitude * xi_k(t) on every grid point, other modes zero.
    static Forcing white_noise(double amplitude = 1.0);

    /// f_{eps_k}(t) = amplitude * int_0^t xi_k, by Simpson quadrature.
    static Forcing brownian(double amplitude = 1.0);

    /// Explicit per-mode table f_alpha(t).
    static Forcing table(std::map<MultiIndex, ModeFn, GrlexLess> modes);

    Eigen::VectorXd eval(const MultiIndex& alpha, double t, int dof) const;
    bool identically_zero(const MultiIndex& alpha) const;
    const std::string& preset() const { return preset_; }

private:
    enum class Kind { Zero, WhiteNoise, Brownian, Table };
    Kind kind_ = Kind::Zero;
    double amplitude_ = 1.0;
    std::map<MultiIndex, ModeFn, GrlexLess> modes_;
    std::string preset_ = "zero";
};

/// Full problem description: operator preset, Wick polynomial, truncation,
/// horizon, initial chaos field and forcing. An absent polynomial selects the
/// linear (nonautonomous) path u_t = A(t) u + f.
struct ProblemSpec {
    SpatialOperator op;
    std::optional<WickPolynomial> poly;
    Truncation trunc{1, 0};
    double horizon = 1.0;  // T
    int steps = 100;       // N_t
    ChaosField initial;
    Forcing forcing;
    double blow_up_cap = 1e8;

    /// Optional per-mode operators A_alpha; null means the shared operator.
    std::function<SpatialOperator(const MultiIndex&)> per_alpha_operator;

    /// Throws std::invalid_argument on inconsistent fields.
    void validate() const;
};

/// Per-time-node chaos fields on the uniform grid over [0, T].
struct ChaosTrajectory {
    std::vector<double> times;
    std::vector<ChaosField> fields;
};

/// Solver output: canonical mode list, per-mode time series, sup-norm table.
struct SolveReport {
    Truncation trunc{1, 0};
    int dof = 1;
    double horizon = 0.0;
    int steps = 0;
    std::vector<double> times;
    std::vector<MultiIndex> alphas;                     // graded order
    std::vector<std::vector<Eigen::VectorXd>> coeffs;   // [alpha][node]
    SupNormTable sup_norms;                             // L_alpha
    double level0_sup = 0.0;                            // M_n

    const std::vector<Eigen::VectorXd>& series(const MultiIndex& alpha) const;
    ChaosField field_at(int node) const;
    ChaosTrajectory trajectory() const;
};

/// Level-0 Cauchy problem u' = A u + p(u) + f_0 by classical RK4 with four
/// substeps per output node. Throws BlowUpError past the cap.
struct Level0Result {
    std::vector<Eigen::VectorXd> nodes;
    double sup = 0.0;  // M_n
};
Level0Result solve_level0(const ProblemSpec& spec);

/// Triangular right-hand side
/// g_alpha = sum_{j=2..n} p^{(j)}(u_0)/j! . T_j(alpha) + f_alpha
/// at one time node; `lower` resolves u_beta for beta < alpha at that node.
Eigen::VectorXd assemble_g(const std::function<const Eigen::VectorXd*(const MultiIndex&)>& lower,
                           const WickPolynomial& poly, const Eigen::VectorXd& u0_node,
                           const Eigen::VectorXd& f_alpha_node, const MultiIndex& alpha);

/// Full graded sweep: level 0, then every |alpha| = 1..P with the factored
/// evolution steps; modes within one level run concurrently
/// (WICKFLOW_THREADS bounds the worker count).
SolveReport solve_system(const ProblemSpec& spec);

struct CertificateConstants {
    int n = 2;
    double m = 1.0;
    double w_raw = 0.0;  // preset growth rate
    double w = 0.0;      // after the positivity shift
    double M_n = 0.0;
    double w_n = 0.0;
    double m_n = 0.0;
    bool fit_ok = false;
    double K = 0.0;
    double p = 0.0;
    double c = 0.0;
    double q = 0.0;
    double horizon = 0.0;
};

struct CertificateRow {
    MultiIndex alpha;
    double L = 0.0;
    double envelope = 0.0;      // NaN when not checked
    std::optional<bool> holds;  // empty for the case-(b) reduction rows
    std::string note;
};

/// Per-mode comparison of computed sup-norms against the a-priori envelope
/// chain (n = 2 exactly; n = 3 through the order-2 reduction inequalities).
struct BoundCertificate {
    CertificateConstants constants;
    std::vector<CertificateRow> rows;

    bool all_hold() const;
};

/// Builds the certificate for a pure Wick power u^{<> n}, n = 2 or 3.
/// Throws std::invalid_argument for other nonlinearities.
BoundCertificate certificate(const SolveReport& report, const ProblemSpec& spec);

/// Worker count for one level: min(tasks, WICKFLOW_THREADS or hardware).
int resolve_worker_count(std::size_t tasks);

}  // namespace wickflow
