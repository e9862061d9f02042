#include "wickflow/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace wickflow {

// ---------------------------------------------------------------------------
// Forcing
// ---------------------------------------------------------------------------

Forcing Forcing::zero() { return Forcing{}; }

Forcing Forcing::white_noise(double amplitude) {
    Forcing f;
    f.kind_ = Kind::WhiteNoise;
    f.amplitude_ = amplitude;
    f.preset_ = "white-noise";
    return f;
}

Forcing Forcing::brownian(double amplitude) {
    Forcing f;
    f.kind_ = Kind::Brownian;
    f.amplitude_ = amplitude;
    f.preset_ = "brownian";
    return f;
}

Forcing Forcing::table(std::map<MultiIndex, ModeFn, GrlexLess> modes) {
    Forcing f;
    f.kind_ = Kind::Table;
    f.modes_ = std::move(modes);
    f.preset_ = "table";
    return f;
}

namespace {

// alpha = eps_k for some k, returning k or 0.
int single_mode_position(const MultiIndex& alpha) {
    const auto& e = alpha.entries();
    if (e.size() == 1 && e.front().exponent == 1) return e.front().position;
    return 0;
}

}  // namespace

Eigen::VectorXd Forcing::eval(const MultiIndex& alpha, double t, int dof) const {
    switch (kind_) {
        case Kind::Zero:
            return Eigen::VectorXd::Zero(dof);
        case Kind::WhiteNoise: {
            int k = single_mode_position(alpha);
            if (k == 0) return Eigen::VectorXd::Zero(dof);
            return Eigen::VectorXd::Constant(dof, amplitude_ * hermite_function(k, t));
        }
        case Kind::Brownian: {
            int k = single_mode_position(alpha);
            if (k == 0) return Eigen::VectorXd::Zero(dof);
            double b = adaptive_simpson([k](double s) { return hermite_function(k, s); }, 0.0, t, 1e-12);
            return Eigen::VectorXd::Constant(dof, amplitude_ * b);
        }
        case Kind::Table: {
            auto it = modes_.find(alpha);
            if (it == modes_.end()) return Eigen::VectorXd::Zero(dof);
            Eigen::VectorXd v = it->second(t, dof);
            if (v.size() != dof) throw std::invalid_argument("forcing table entry has wrong grid size");
            return v;
        }
    }
    return Eigen::VectorXd::Zero(dof);
}

bool Forcing::identically_zero(const MultiIndex& alpha) const {
    switch (kind_) {
        case Kind::Zero:
            return true;
        case Kind::WhiteNoise:
        case Kind::Brownian:
            return single_mode_position(alpha) == 0 || amplitude_ == 0.0;
        case Kind::Table:
            return modes_.find(alpha) == modes_.end();
    }
    return true;
}

// ---------------------------------------------------------------------------
// ProblemSpec
// ---------------------------------------------------------------------------

void ProblemSpec::validate() const {
    if (horizon <= 0.0) throw std::invalid_argument("problem needs T > 0");
    if (steps < 1) throw std::invalid_argument("problem needs N_t >= 1");
    if (trunc.max_position < 1 || trunc.max_order < 0)
        throw std::invalid_argument("problem needs K >= 1, P >= 0");
    if (op.dof < 1 || op.action.rows() != op.dof || op.action.cols() != op.dof)
        throw std::invalid_argument("operator action must be M x M");
    if (!(initial.trunc == trunc)) throw std::invalid_argument("initial field truncation mismatch");
    if (initial.dof != op.dof) throw std::invalid_argument("initial field grid size mismatch");
    if (blow_up_cap <= 0.0) throw std::invalid_argument("blow-up cap must be positive");
    if (op.time_dependent() && poly.has_value())
        throw std::invalid_argument(
            "time-dependent operators are supported on the linear path only (drop the polynomial)");
    if (per_alpha_operator && op.time_dependent())
        throw std::invalid_argument("per-mode operators are supported for autonomous actions only");
}

// ---------------------------------------------------------------------------
// SolveReport
// ---------------------------------------------------------------------------

const std::vector<Eigen::VectorXd>& SolveReport::series(const MultiIndex& alpha) const {
    auto it = std::lower_bound(alphas.begin(), alphas.end(), alpha, grlex_less);
    if (it == alphas.end() || !(*it == alpha))
        throw std::out_of_range("mode " + alpha.encode() + " not in the solve report");
    return coeffs[static_cast<std::size_t>(it - alphas.begin())];
}

ChaosField SolveReport::field_at(int node) const {
    if (node < 0 || node >= static_cast<int>(times.size()))
        throw std::out_of_range("time node out of range");
    ChaosField F = ChaosField::zeros(trunc, dof);
    for (std::size_t i = 0; i < alphas.size(); ++i)
        F.set(alphas[i], coeffs[i][static_cast<std::size_t>(node)]);
    return F;
}

ChaosTrajectory SolveReport::trajectory() const {
    ChaosTrajectory traj;
    traj.times = times;
    traj.fields.reserve(times.size());
    for (int j = 0; j < static_cast<int>(times.size()); ++j) traj.fields.push_back(field_at(j));
    return traj;
}

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

int resolve_worker_count(std::size_t tasks) {
    if (tasks <= 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    long requested = hw;
    if (const char* env = std::getenv("WICKFLOW_THREADS")) {
        char* end = nullptr;
        long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed >= 1) requested = parsed;
    }
    return static_cast<int>(std::min<long>(requested, static_cast<long>(tasks)));
}

namespace {

void run_parallel(std::size_t count, const std::function<void(std::size_t)>& body) {
    const int workers = resolve_worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto loop = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

// Cubic Lagrange value of uniformly sampled vectors at the midpoint of
// interval [j, j+1]; degrades to the linear midpoint with < 4 nodes.
Eigen::VectorXd midpoint_value(const std::vector<Eigen::VectorXd>& nodes, int j) {
    const int n = static_cast<int>(nodes.size()) - 1;
    if (n < 3) return 0.5 * (nodes[static_cast<std::size_t>(j)] + nodes[static_cast<std::size_t>(j) + 1]);
    int base = std::max(0, std::min(j - 1, n - 3));
    double x = (j + 0.5) - base;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(nodes.front().size());
    for (int k = 0; k < 4; ++k) {
        double w = 1.0;
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            w *= (x - l) / (k - l);
        }
        acc += w * nodes[static_cast<std::size_t>(base + k)];
    }
    return acc;
}

struct SolverGrid {
    double dt = 0.0;
    std::vector<double> times;
};

SolverGrid make_grid(const ProblemSpec& spec) {
    SolverGrid g;
    g.dt = spec.horizon / spec.steps;
    g.times.resize(static_cast<std::size_t>(spec.steps) + 1);
    for (int j = 0; j <= spec.steps; ++j) g.times[static_cast<std::size_t>(j)] = j * g.dt;
    g.times.back() = spec.horizon;
    return g;
}

Level0Result run_level0(const ProblemSpec& spec, const SpatialOperator& op0, const SolverGrid& grid) {
    const int M = spec.op.dof;
    const WickPolynomial* p = spec.poly ? &*spec.poly : nullptr;
    auto rhs = [&](double t, const Eigen::VectorXd& u) -> Eigen::VectorXd {
        Eigen::VectorXd out = op0.action * u + spec.forcing.eval(MultiIndex::zero(), t, M);
        if (p) out += p->derivative(0, u);
        return out;
    };
    Level0Result out;
    out.nodes.resize(grid.times.size());
    Eigen::VectorXd u = spec.initial.coefficient(MultiIndex::zero());
    auto guard = [&](const Eigen::VectorXd& v) {
        if (!finite(v) || v.cwiseAbs().maxCoeff() > spec.blow_up_cap)
            throw BlowUpError("level-0 solution exceeded the blow-up cap on [0, T]");
    };
    guard(u);
    out.nodes[0] = u;
    out.sup = u.cwiseAbs().maxCoeff();
    constexpr int substeps = 4;
    const double h = grid.dt / substeps;
    for (int j = 0; j < static_cast<int>(grid.times.size()) - 1; ++j) {
        double t = grid.times[static_cast<std::size_t>(j)];
        for (int s = 0; s < substeps; ++s) {
            Eigen::VectorXd k1 = rhs(t, u);
            Eigen::VectorXd k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
            Eigen::VectorXd k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
            Eigen::VectorXd k4 = rhs(t + h, u + h * k3);
            u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            guard(u);
            t += h;
        }
        out.nodes[static_cast<std::size_t>(j) + 1] = u;
        out.sup = std::max(out.sup, u.cwiseAbs().maxCoeff());
    }
    return out;
}

}  // namespace

Level0Result solve_level0(const ProblemSpec& spec) {
    spec.validate();
    if (spec.op.time_dependent())
        throw std::invalid_argument("solve_level0 expects an autonomous operator");
    SolverGrid grid = make_grid(spec);
    SpatialOperator op0 = spec.per_alpha_operator ? spec.per_alpha_operator(MultiIndex::zero()) : spec.op;
    return run_level0(spec, op0, grid);
}

Eigen::VectorXd assemble_g(const std::function<const Eigen::VectorXd*(const MultiIndex&)>& lower,
                           const WickPolynomial& poly, const Eigen::VectorXd& u0_node,
                           const Eigen::VectorXd& f_alpha_node, const MultiIndex& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("assemble_g needs alpha > 0");
    Eigen::VectorXd g = f_alpha_node;
    double jfact = 1.0;
    for (int j = 2; j <= poly.degree(); ++j) {
        jfact *= j;
        if (alpha.order() < j) break;  // no j-part splits of a shorter index
        Eigen::VectorXd scale = poly.derivative(j, u0_node) / jfact;
        if (scale.cwiseAbs().maxCoeff() == 0.0) continue;
        g += scale.cwiseProduct(interior_chain_sum(lower, alpha, j, static_cast<int>(u0_node.size())));
    }
    return g;
}

SolveReport solve_system(const ProblemSpec& spec) {
    spec.validate();
    const int M = spec.op.dof;
    const int N = spec.steps;
    SolverGrid grid = make_grid(spec);

    SolveReport report;
    report.trunc = spec.trunc;
    report.dof = M;
    report.horizon = spec.horizon;
    report.steps = N;
    report.times = grid.times;
    report.alphas = enumerate(spec.trunc);
    report.coeffs.resize(report.alphas.size());

    std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> index_of;
    index_of.reserve(report.alphas.size());
    for (std::size_t i = 0; i < report.alphas.size(); ++i) index_of.emplace(report.alphas[i], i);

    auto op_for = [&](const MultiIndex& alpha) -> SpatialOperator {
        if (!spec.per_alpha_operator) return spec.op;
        SpatialOperator op = spec.per_alpha_operator(alpha);
        if (op.dof != M || op.time_dependent())
            throw std::invalid_argument("per-mode operators must be autonomous on the shared grid");
        return op;
    };

    auto forcing_nodes = [&](const MultiIndex& alpha) {
        std::vector<Eigen::VectorXd> f(grid.times.size());
        if (spec.forcing.identically_zero(alpha)) {
            for (auto& v : f) v = Eigen::VectorXd::Zero(M);
        } else {
            for (std::size_t j = 0; j < grid.times.size(); ++j)
                f[j] = spec.forcing.eval(alpha, grid.times[j], M);
        }
        return f;
    };

    if (!spec.poly.has_value()) {
        // Linear nonautonomous path: every mode marches independently with
        // S(t+dt, t) = exp(mu_j A), mu_j = int a over the step.
        std::vector<double> mu(static_cast<std::size_t>(N), grid.dt);
        if (spec.op.time_dependent()) {
            for (int j = 0; j < N; ++j)
                mu[static_cast<std::size_t>(j)] = adaptive_simpson(
                    spec.op.time_scale, grid.times[static_cast<std::size_t>(j)],
                    grid.times[static_cast<std::size_t>(j) + 1], 1e-13);
        }
        // Shared step matrices (no per-mode hook): reuse one exponential when
        // every step integral coincides.
        auto build_steps = [&](const Eigen::MatrixXd& A) {
            std::vector<Eigen::MatrixXd> E(static_cast<std::size_t>(N));
            bool uniform = true;
            for (int j = 1; j < N; ++j)
                if (mu[static_cast<std::size_t>(j)] != mu[0]) { uniform = false; break; }
            if (uniform) {
                Eigen::MatrixXd shared = matrix_exponential(A, mu[0]);
                for (auto& e : E) e = shared;
            } else {
                for (int j = 0; j < N; ++j)
                    E[static_cast<std::size_t>(j)] = matrix_exponential(A, mu[static_cast<std::size_t>(j)]);
            }
            return E;
        };
        std::vector<Eigen::MatrixXd> shared_steps;
        if (!spec.per_alpha_operator) shared_steps = build_steps(spec.op.action);

        run_parallel(report.alphas.size(), [&](std::size_t i) {
            const MultiIndex& alpha = report.alphas[i];
            std::vector<Eigen::MatrixXd> own_steps;
            const std::vector<Eigen::MatrixXd>* steps = &shared_steps;
            if (spec.per_alpha_operator) {
                own_steps = build_steps(op_for(alpha).action);
                steps = &own_steps;
            }
            std::vector<Eigen::VectorXd> f = forcing_nodes(alpha);
            std::vector<Eigen::VectorXd>& series = report.coeffs[i];
            series.resize(grid.times.size());
            Eigen::VectorXd u = spec.initial.coefficient(alpha);
            series[0] = u;
            for (int j = 0; j < N; ++j) {
                u = nonautonomous_step((*steps)[static_cast<std::size_t>(j)], u,
                                       f[static_cast<std::size_t>(j)], f[static_cast<std::size_t>(j) + 1],
                                       grid.dt);
                if (!finite(u)) throw NumericError("non-finite value in mode " + alpha.encode());
                if (u.cwiseAbs().maxCoeff() > spec.blow_up_cap)
                    throw BlowUpError("mode " + alpha.encode() + " exceeded the blow-up cap");
                series[static_cast<std::size_t>(j) + 1] = u;
            }
        });
    } else {
        const WickPolynomial& poly = *spec.poly;

        Level0Result lv0 = run_level0(spec, op_for(MultiIndex::zero()), grid);
        report.coeffs[0] = lv0.nodes;

        // lambda(t) = p'(u_0(t)) at the nodes, and its per-step integrals by
        // Simpson with cubic-interpolated midpoints.
        std::vector<Eigen::VectorXd> lambda(grid.times.size());
        for (std::size_t j = 0; j < grid.times.size(); ++j)
            lambda[j] = poly.derivative(1, lv0.nodes[j]);
        std::vector<Eigen::VectorXd> lam_int(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) {
            Eigen::VectorXd mid = midpoint_value(lambda, j);
            lam_int[static_cast<std::size_t>(j)] =
                (grid.dt / 6.0) *
                (lambda[static_cast<std::size_t>(j)] + 4.0 * mid + lambda[static_cast<std::size_t>(j) + 1]);
        }

        std::unordered_map<MultiIndex, Eigen::MatrixXd, MultiIndexHash> exp_cache;
        Eigen::MatrixXd shared_exp;
        if (!spec.per_alpha_operator) shared_exp = matrix_exponential(spec.op.action, grid.dt);

        // Graded sweep: one barrier per level, modes within a level in parallel.
        std::size_t level_begin = 1;  // index 0 is the zero mode
        for (int level = 1; level <= spec.trunc.max_order; ++level) {
            std::size_t level_end = level_begin;
            while (level_end < report.alphas.size() && report.alphas[level_end].order() == level)
                ++level_end;
            // Per-mode exponentials are cached up front so workers share them.
            if (spec.per_alpha_operator) {
                for (std::size_t i = level_begin; i < level_end; ++i)
                    exp_cache.emplace(report.alphas[i],
                                      matrix_exponential(op_for(report.alphas[i]).action, grid.dt));
            }
            run_parallel(level_end - level_begin, [&](std::size_t offset) {
                const std::size_t i = level_begin + offset;
                const MultiIndex& alpha = report.alphas[i];
                const Eigen::MatrixXd& E =
                    spec.per_alpha_operator ? exp_cache.at(alpha) : shared_exp;

                std::vector<Eigen::VectorXd> f = forcing_nodes(alpha);
                std::vector<Eigen::VectorXd> g(grid.times.size());
                for (std::size_t j = 0; j < grid.times.size(); ++j) {
                    auto lower = [&](const MultiIndex& beta) -> const Eigen::VectorXd* {
                        auto it = index_of.find(beta);
                        if (it == index_of.end()) return nullptr;
                        return &report.coeffs[it->second][j];
                    };
                    g[j] = assemble_g(lower, poly, lv0.nodes[j], f[j], alpha);
                }

                std::vector<Eigen::VectorXd>& series = report.coeffs[i];
                series.resize(grid.times.size());
                Eigen::VectorXd u = spec.initial.coefficient(alpha);
                series[0] = u;
                for (int j = 0; j < N; ++j) {
                    Propagator S{E, lam_int[static_cast<std::size_t>(j)]};
                    u = duhamel_step(S, u, g[static_cast<std::size_t>(j)],
                                     g[static_cast<std::size_t>(j) + 1], grid.dt);
                    if (!finite(u)) throw NumericError("non-finite value in mode " + alpha.encode());
                    series[static_cast<std::size_t>(j) + 1] = u;
                }
            });
            level_begin = level_end;
        }
    }

    for (std::size_t i = 0; i < report.alphas.size(); ++i) {
        double L = 0.0;
        for (const auto& v : report.coeffs[i]) L = std::max(L, v.cwiseAbs().maxCoeff());
        report.sup_norms[report.alphas[i]] = L;
    }
    report.level0_sup = report.sup_norms.at(MultiIndex::zero());
    return report;
}

// ---------------------------------------------------------------------------
// Bound certificate
// ---------------------------------------------------------------------------

namespace {

int pure_power_degree(const WickPolynomial& p) {
    for (int k = 0; k < p.degree(); ++k)
        if (p.coeffs[static_cast<std::size_t>(k)] != 0.0) return 0;
    return p.coeffs.back() == 1.0 ? p.degree() : 0;
}

}  // namespace

bool BoundCertificate::all_hold() const {
    if (!constants.fit_ok) return false;
    for (const auto& row : rows)
        if (row.holds.has_value() && !*row.holds) return false;
    return true;
}

BoundCertificate certificate(const SolveReport& report, const ProblemSpec& spec) {
    if (!spec.poly.has_value())
        throw std::invalid_argument("certificate needs the nonlinear path");
    const int n = pure_power_degree(*spec.poly);
    if (n != 2 && n != 3)
        throw std::invalid_argument("certificate covers pure Wick powers u^{<>n} with n = 2 or 3");

    BoundCertificate cert;
    CertificateConstants& c = cert.constants;
    c.n = n;
    c.horizon = spec.horizon;
    c.m = spec.op.stability_m;
    c.w_raw = spec.op.growth_w;
    c.w = std::max(c.w_raw, 1e-8);  // positive shift keeps the m/w_n terms finite
    c.M_n = report.level0_sup;
    c.w_n = c.w + n * std::pow(c.M_n, n - 1) * c.m;
    c.m_n = c.m + c.m / c.w_n;

    // data normalization: smallest lattice p with joint prefactor K < 1
    std::vector<double> data(report.alphas.size(), 0.0);
    for (std::size_t i = 0; i < report.alphas.size(); ++i) {
        const MultiIndex& alpha = report.alphas[i];
        double d = spec.initial.coefficient(alpha).cwiseAbs().maxCoeff();
        if (!spec.forcing.identically_zero(alpha)) {
            for (double t : report.times)
                d = std::max(d, spec.forcing.eval(alpha, t, report.dof).cwiseAbs().maxCoeff());
        }
        data[i] = d;
    }
    c.fit_ok = false;
    for (double p = 0.0; p <= 8.0 + 1e-9; p += 0.5) {
        double K = 0.0;
        for (std::size_t i = 0; i < report.alphas.size(); ++i)
            K = std::max(K, data[i] / mi_weight(report.alphas[i], p));
        if (K < 1.0) {
            c.fit_ok = true;
            c.p = p;
            c.K = K;
            break;
        }
    }

    const double ewT = std::exp(c.w_n * c.horizon);
    if (c.fit_ok) {
        c.c = 2.0 * c.m_n * ewT * (c.m_n * ewT * std::sqrt(c.K) + 1.0);
        double c_for_q = c.c;
        if (n == 3) {
            // case-(b) reduction constants m_3' = (3 M_3 + 1) m_3, K' = K / (3 M_3 + 1)
            double m3p = (3.0 * c.M_n + 1.0) * c.m_n;
            double Kp = c.K / (3.0 * c.M_n + 1.0);
            c_for_q = 2.0 * m3p * ewT * (m3p * ewT * std::sqrt(Kp) + 1.0);
        }
        int s = 0;
        double target = 16.0 * c_for_q * c_for_q;
        while (std::pow(2.0, s) < target && s < 4096) ++s;
        c.q = 2.0 * c.p + s + 6.0;
    }

    for (const auto& alpha : report.alphas) {
        CertificateRow row;
        row.alpha = alpha;
        row.L = report.sup_norms.at(alpha);
        if (!c.fit_ok) {
            row.envelope = std::numeric_limits<double>::quiet_NaN();
            row.note = "data normalization unattainable: no lattice p gives K < 1";
            cert.rows.push_back(std::move(row));
            continue;
        }
        const int len = alpha.order();
        if (len == 0) {
            row.envelope = c.M_n;
            row.holds = row.L <= c.M_n;
            row.note = "level0";
        } else if (len == 1) {
            row.envelope = c.m_n * ewT * c.K * mi_weight(alpha, c.p);
            row.holds = row.L <= row.envelope;
        } else if (n == 2) {
            row.envelope = std::sqrt(c.K) / (8.0 * c.m_n * ewT) * std::pow(4.0 * c.c, len) *
                           mi_weight(alpha, c.p + 2.0);
            row.holds = row.L <= row.envelope;
        } else if (len == 2) {  // n == 3
            double a2 = c.m + (c.m / c.w_n) * (6.0 * c.M_n * c.m_n * c.m_n *
                                                   std::exp(2.0 * c.w_n * c.horizon) * c.K +
                                               1.0);
            row.envelope = a2 * ewT * c.K * mi_weight(alpha, c.p);
            row.holds = row.L <= row.envelope;
        } else {  // n == 3, |alpha| > 2
            row.envelope = std::numeric_limits<double>::quiet_NaN();
            row.note = "bounded by the case-(b) reduction";
        }
        cert.rows.push_back(std::move(row));
    }
    return cert;
}

}  // namespace wickflow
