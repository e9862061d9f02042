#include "wickflow/acceptance.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wickflow/analysis.hpp"
#include "wickflow/combinatorics.hpp"
#include "wickflow/commands.hpp"
#include "wickflow/report_io.hpp"

namespace wickflow::acceptance {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

struct Worst {
    double value = 0.0;
    void track(double v) { value = std::max(value, v); }
};

// --- shared problem builders ------------------------------------------------

Eigen::VectorXd sine_mode(int M, double L, int mode, double amplitude) {
    Eigen::VectorXd v(M);
    const double h = L / (M + 1);
    for (int i = 0; i < M; ++i) v[i] = amplitude * std::sin(mode * M_PI * (i + 1) * h / L);
    return v;
}

ChaosField random_field(const Truncation& trunc, int dof, int max_support_order, double scale,
                        std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-scale, scale);
    ChaosField F = ChaosField::zeros(trunc, dof);
    for (const auto& alpha : enumerate({trunc.max_position, max_support_order})) {
        Eigen::VectorXd v(dof);
        for (int i = 0; i < dof; ++i) v[i] = coeff(rng);
        F.set(alpha, v);
    }
    return F;
}

ProblemSpec riccati_spec(int steps) {
    ProblemSpec spec;
    spec.op = scalar_operator(0.0);
    spec.poly = WickPolynomial({0.0, 0.0, 1.0});
    spec.trunc = {1, 2};
    spec.horizon = 0.5;
    spec.steps = steps;
    spec.initial = ChaosField::zeros(spec.trunc, 1);
    spec.initial.set(MultiIndex::zero(), Eigen::VectorXd::Constant(1, 1.0));
    spec.initial.set(MultiIndex::unit(1), Eigen::VectorXd::Constant(1, 1.0));
    spec.initial.set(MultiIndex::unit(1, 2), Eigen::VectorXd::Constant(1, 1.0));
    spec.forcing = Forcing::zero();
    return spec;
}

std::string fujita_spec_json(int P, int steps);

// unique scratch directories for the command-level checks
fs::path scratch_dir() {
    static std::atomic<int> counter{0};
    fs::path dir = fs::temp_directory_path() /
                   ("wickflow-acc-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter.fetch_add(1)));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

// --- criterion 1: combinatorics ---------------------------------------------

CheckResult check_combinatorics() {
    CheckResult r{"combinatorics", true, ""};
    CatalanTable table = CatalanTable::from_recurrence(30);
    BigInt four_n = 1;
    for (int n = 0; n <= 30; ++n) {
        if (catalan(n) != table.values[static_cast<std::size_t>(n)]) {
            return {r.name, false, "catalan closed form != recurrence at n=" + std::to_string(n)};
        }
        if (table.values[static_cast<std::size_t>(n)] > four_n)
            return {r.name, false, "c_n > 4^n at n=" + std::to_string(n)};
        four_n *= 4;
    }
    for (const auto& alpha : enumerate({6, 8})) {
        auto b = factorial_ratio_bound(alpha);
        if (!b.holds)
            return {r.name, false, "|a|!/a! > (2N)^{2a} at alpha=" + alpha.encode()};
    }
    CatalanSeeds seeds;
    for (int k = 1; k <= 4; ++k) seeds[k] = 0.5 + 0.1 * k;
    Worst rel;
    for (const auto& alpha : enumerate({4, 6})) {
        if (alpha.is_zero()) continue;
        double closed = multi_catalan_closed(alpha, seeds);
        double recursive = multi_catalan_recursive(alpha, seeds);
        rel.track(std::abs(closed - recursive) / std::abs(closed));
    }
    if (rel.value > 1e-10)
        return {r.name, false, "multi-Catalan closed vs recursive rel err " + fmt(rel.value)};
    r.detail = "catalan n<=30 exact; factorial-ratio sweep K<=6,|a|<=8; multi-Catalan rel err " +
               fmt(rel.value) + " (tol 1e-10)";
    return r;
}

// --- criterion 2: Wick algebra ----------------------------------------------

CheckResult check_wick_algebra() {
    CheckResult r{"wick-algebra", true, ""};
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> zdist(-1.0, 1.0);

    Worst hom;
    const Truncation trunc{3, 4};
    for (int pair = 0; pair < 50; ++pair) {
        ChaosField F = random_field(trunc, 2, 2, 1.0, rng);
        ChaosField G = random_field(trunc, 2, 2, 1.0, rng);
        ChaosField FG = wick_product(F, G);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> z{zdist(rng), zdist(rng), zdist(rng)};
            Eigen::VectorXd lhs = hermite_transform(FG, z);
            Eigen::VectorXd rhs = hermite_transform(F, z).cwiseProduct(hermite_transform(G, z));
            hom.track((lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    if (hom.value > 1e-10)
        return {r.name, false, "transform homomorphism residual " + fmt(hom.value) + " > 1e-10"};

    Worst taylor;
    for (int n = 1; n <= 4; ++n) {
        std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
        for (auto& c : coeffs) c = zdist(rng);
        coeffs.back() = 0.7;
        WickPolynomial p(coeffs);
        ChaosField u = random_field({2, 4}, 3, 4, 0.5, rng);
        ChaosField direct = wick_polynomial_direct(p, u);
        ChaosField via_taylor = wick_taylor(p, u);
        for (const auto& alpha : enumerate({2, 4}))
            taylor.track((direct.coefficient(alpha) - via_taylor.coefficient(alpha)).cwiseAbs().maxCoeff());
    }
    if (taylor.value > 1e-12)
        return {r.name, false, "wick_taylor vs direct diff " + fmt(taylor.value) + " > 1e-12"};

    // remainder triangularity: perturbing any u_beta with beta not strictly
    // below alpha must leave r_{alpha,n} bitwise unchanged
    for (int n : {2, 3}) {
        ChaosField u = random_field({2, 4}, 2, 4, 0.8, rng);
        for (const auto& alpha : enumerate({2, 4})) {
            if (alpha.is_zero()) continue;
            Eigen::VectorXd base = power_coeff_split(u, n, alpha).remainder;
            for (const auto& beta : enumerate({2, 4})) {
                if (beta.strictly_inside(alpha) || beta.is_zero()) continue;
                ChaosField perturbed = u;
                perturbed.set(beta, u.coefficient(beta) + Eigen::VectorXd::Constant(2, 0.7));
                Eigen::VectorXd again = power_coeff_split(perturbed, n, alpha).remainder;
                for (int i = 0; i < 2; ++i)
                    if (again[i] != base[i])
                        return {r.name, false,
                                "remainder r_{" + alpha.encode() + "," + std::to_string(n) +
                                    "} changed under perturbation of " + beta.encode()};
            }
        }
    }
    r.detail = "homomorphism residual " + fmt(hom.value) + " (tol 1e-10); taylor-direct diff " +
               fmt(taylor.value) + " (tol 1e-12); remainder invariance exact";
    return r;
}

// --- criterion 3: time stepping ---------------------------------------------

double duhamel_scalar_error(double a, double u0, double T, int N) {
    const double dt = T / N;
    auto g = [](double t) { return std::cos(3.0 * t); };
    Propagator S{matrix_exponential(Eigen::MatrixXd::Constant(1, 1, a), dt),
                 Eigen::VectorXd::Zero(1)};
    Eigen::VectorXd u = Eigen::VectorXd::Constant(1, u0);
    for (int j = 0; j < N; ++j) {
        double t = j * dt;
        u = duhamel_step(S, u, Eigen::VectorXd::Constant(1, g(t)),
                         Eigen::VectorXd::Constant(1, g(t + dt)), dt);
    }
    return std::abs(u[0] - linear_oracle(a, g, u0, T));
}

double nonautonomous_scalar_error(double u0, double T, int N) {
    auto a = [](double t) { return std::sin(t); };
    auto f = [](double t) { return std::cos(2.0 * t); };
    const double dt = T / N;
    Eigen::VectorXd u = Eigen::VectorXd::Constant(1, u0);
    Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
    for (int j = 0; j < N; ++j) {
        double t = j * dt;
        double mu = adaptive_simpson(a, t, t + dt, 1e-14);
        u = nonautonomous_step(matrix_exponential(one, mu), u, Eigen::VectorXd::Constant(1, f(t)),
                               Eigen::VectorXd::Constant(1, f(t + dt)), dt);
    }
    return std::abs(u[0] - linear_oracle(a, f, u0, T));
}

CheckResult check_time_stepping() {
    CheckResult r{"time-stepping", true, ""};

    double e1 = duhamel_scalar_error(-0.8, 1.0, 1.0, 16);
    double e2 = duhamel_scalar_error(-0.8, 1.0, 1.0, 32);
    double duhamel_order = std::log2(e1 / e2);
    if (!(duhamel_order >= 1.9))
        return {r.name, false, "duhamel_step observed order " + fmt(duhamel_order) + " < 1.9"};

    double n1 = nonautonomous_scalar_error(0.8, 1.0, 16);
    double n2 = nonautonomous_scalar_error(0.8, 1.0, 32);
    double nonaut_order = std::log2(n1 / n2);
    if (!(nonaut_order >= 1.9))
        return {r.name, false, "nonautonomous_step observed order " + fmt(nonaut_order) + " < 1.9"};

    SpatialOperator lap16 = laplacian_1d(16, 1.0);
    double s = 0.002, t = 0.003;
    Eigen::MatrixXd Est = matrix_exponential(lap16.action, s + t);
    Eigen::MatrixXd prod = matrix_exponential(lap16.action, s) * matrix_exponential(lap16.action, t);
    double semigroup = operator_two_norm(Est - prod) / operator_two_norm(Est);
    if (semigroup > 1e-9)
        return {r.name, false, "semigroup law residual " + fmt(semigroup) + " > 1e-9"};

    SpatialOperator lap64 = laplacian_1d(64, 1.0);
    Eigen::MatrixXd pade = matrix_exponential(lap64.action, 0.01);
    Eigen::MatrixXd eig = matrix_exponential_symmetric_eig(lap64.action, 0.01);
    double rel = (pade - eig).norm() / eig.norm();
    if (rel > 1e-10)
        return {r.name, false, "Pade vs eigendecomposition rel err " + fmt(rel) + " > 1e-10"};

    r.detail = "orders " + fmt(duhamel_order) + "/" + fmt(nonaut_order) +
               " (>=1.9); semigroup " + fmt(semigroup) + " (tol 1e-9); expm rel " + fmt(rel) +
               " (tol 1e-10)";
    return r;
}

// --- criterion 4: Riccati oracle ---------------------------------------------

struct RiccatiErrors {
    double e0, e1, e2;
};

RiccatiErrors riccati_errors(int steps) {
    ProblemSpec spec = riccati_spec(steps);
    SolveReport report = solve_system(spec);
    const MultiIndex eps = MultiIndex::unit(1);
    const MultiIndex two_eps = MultiIndex::unit(1, 2);
    RiccatiErrors err{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < report.times.size(); ++j) {
        RiccatiReference ref = riccati_oracle(1.0, 1.0, 1.0, report.times[j]);
        err.e0 = std::max(err.e0, std::abs(report.series(MultiIndex::zero())[j][0] - ref.u0) /
                                      std::abs(ref.u0));
        err.e1 = std::max(err.e1, std::abs(report.series(eps)[j][0] - ref.u_eps) / std::abs(ref.u_eps));
        err.e2 = std::max(err.e2,
                          std::abs(report.series(two_eps)[j][0] - ref.u_2eps) / std::abs(ref.u_2eps));
    }
    return err;
}

CheckResult check_riccati() {
    CheckResult r{"riccati", true, ""};
    RiccatiErrors fine = riccati_errors(1000);
    if (fine.e0 > 1e-8) return {r.name, false, "u_0 rel err " + fmt(fine.e0) + " > 1e-8"};
    if (fine.e1 > 1e-6) return {r.name, false, "u_eps rel err " + fmt(fine.e1) + " > 1e-6"};
    if (fine.e2 > 1e-5) return {r.name, false, "u_2eps rel err " + fmt(fine.e2) + " > 1e-5"};

    // halving ratios, measured where each error is far above rounding
    RiccatiErrors c1 = riccati_errors(8);
    RiccatiErrors c2 = riccati_errors(16);
    double r0 = c1.e0 / c2.e0;
    double r1 = c1.e1 / c2.e1;
    RiccatiErrors f2 = riccati_errors(2000);
    double r2 = fine.e2 / f2.e2;
    if (!(r0 >= 3.5 && r1 >= 3.5 && r2 >= 3.5))
        return {r.name, false,
                "halving ratios " + fmt(r0) + "/" + fmt(r1) + "/" + fmt(r2) + " (need >= 3.5)"};
    r.detail = "rel errs " + fmt(fine.e0) + "/" + fmt(fine.e1) + "/" + fmt(fine.e2) +
               " (tols 1e-8/1e-6/1e-5); halving ratios " + fmt(r0) + "/" + fmt(r1) + "/" + fmt(r2);
    return r;
}

// --- criterion 5: linear nonautonomous ----------------------------------------

CheckResult check_linear_nonautonomous() {
    CheckResult r{"linear-nonautonomous", true, ""};
    const int modes = 8;
    Truncation trunc{modes, 1};

    ProblemSpec spec;
    spec.op = scaled_operator(scalar_operator(1.0), [](double t) { return std::sin(t); }, "sin");
    spec.trunc = trunc;
    spec.horizon = 1.0;
    spec.steps = 2000;
    spec.initial = ChaosField::zeros(trunc, 1);
    spec.initial.set(MultiIndex::zero(), Eigen::VectorXd::Constant(1, 1.0));
    for (int k = 1; k <= modes; ++k)
        spec.initial.set(MultiIndex::unit(k), Eigen::VectorXd::Constant(1, 1.0 + 0.1 * k));
    spec.forcing = Forcing::zero();

    SolveReport hom = solve_system(spec);
    const double growth = std::exp(1.0 - std::cos(1.0));
    Worst ehom;
    for (const auto& alpha : hom.alphas) {
        double expected = spec.initial.coefficient(alpha)[0] * growth;
        ehom.track(std::abs(hom.series(alpha).back()[0] - expected));
    }
    if (ehom.value > 1e-6)
        return {r.name, false, "homogeneous error " + fmt(ehom.value) + " > 1e-6"};

    // forced variant against the quadrature Duhamel reference
    std::map<MultiIndex, Forcing::ModeFn, GrlexLess> table;
    std::vector<std::pair<MultiIndex, double>> consts;
    consts.emplace_back(MultiIndex::zero(), 0.3);
    for (int k = 1; k <= modes; ++k) consts.emplace_back(MultiIndex::unit(k), 0.1 * k - 0.35);
    for (const auto& [alpha, c] : consts) {
        double cv = c;
        table.emplace(alpha, [cv](double, int dof) { return Eigen::VectorXd::Constant(dof, cv); });
    }
    spec.forcing = Forcing::table(std::move(table));
    SolveReport forced = solve_system(spec);
    auto a = [](double t) { return std::sin(t); };
    Worst eforced;
    for (const auto& [alpha, c] : consts) {
        double cv = c;
        double ref = linear_oracle(a, [cv](double) { return cv; },
                                   spec.initial.coefficient(alpha)[0], 1.0);
        eforced.track(std::abs(forced.series(alpha).back()[0] - ref));
    }
    if (eforced.value > 1e-6)
        return {r.name, false, "forced error " + fmt(eforced.value) + " > 1e-6"};
    r.detail = "8 modes; max errors " + fmt(ehom.value) + " (f=0) and " + fmt(eforced.value) +
               " (forced) vs 1e-6";
    return r;
}

// --- criterion 6: heat preset --------------------------------------------------

CheckResult check_heat() {
    CheckResult r{"heat", true, ""};
    const int M = 64;
    const double L = 1.0, T = 0.1;
    ProblemSpec spec;
    spec.op = laplacian_1d(M, L);
    spec.trunc = {1, 0};
    spec.horizon = T;
    spec.steps = 100;
    spec.initial = ChaosField::zeros(spec.trunc, M);
    spec.initial.set(MultiIndex::zero(), sine_mode(M, L, 1, 1.0));
    spec.forcing = Forcing::zero();
    SolveReport report = solve_system(spec);

    const auto& start = report.series(MultiIndex::zero()).front();
    const auto& finish = report.series(MultiIndex::zero()).back();
    int imax = 0;
    start.cwiseAbs().maxCoeff(&imax);
    double rate = std::log(finish[imax] / start[imax]) / T;
    const double h = L / (M + 1);
    double expected = -(2.0 - 2.0 * std::cos(M_PI * h / L)) / (h * h);
    double rel = std::abs(rate - expected) / std::abs(expected);
    if (rel > 1e-4) return {r.name, false, "decay rate rel err " + fmt(rel) + " > 1e-4"};
    r.detail = "measured rate " + fmt(rate) + " vs discrete eigenvalue " + fmt(expected) +
               ", rel err " + fmt(rel) + " (tol 1e-4)";
    return r;
}

// --- criteria 7-9: the small-data Fujita run -----------------------------------

CheckResult check_certificate() {
    CheckResult r{"certificate", true, ""};
    ProblemSpec spec = fujita_small_data_spec();
    SolveReport report = solve_system(spec);
    BoundCertificate cert = certificate(report, spec);
    if (!cert.constants.fit_ok)
        return {r.name, false, "no p in the lattice gives K < 1"};
    if (!(cert.constants.K < 1.0))
        return {r.name, false, "fitted K = " + fmt(cert.constants.K) + " >= 1"};
    for (const auto& row : cert.rows) {
        if (!row.holds.has_value())
            return {r.name, false, "unchecked row at " + row.alpha.encode() + " in the n=2 certificate"};
        if (!*row.holds)
            return {r.name, false,
                    "envelope violated at " + row.alpha.encode() + ": L=" + fmt(row.L) +
                        " > env=" + fmt(row.envelope)};
    }
    r.detail = "K=" + fmt(cert.constants.K) + ", p=" + fmt(cert.constants.p) +
               ", c=" + fmt(cert.constants.c) + ", q=" + fmt(cert.constants.q) + "; all " +
               std::to_string(cert.rows.size()) + " modes hold";
    return r;
}

CheckResult check_truncation() {
    CheckResult r{"truncation", true, ""};
    ProblemSpec base = fujita_small_data_spec(1);
    BoundCertificate cert;
    {
        ProblemSpec spec4 = fujita_small_data_spec(4);
        SolveReport rep4 = solve_system(spec4);
        cert = certificate(rep4, spec4);
    }
    const double q = cert.constants.q;

    std::vector<SolveReport> runs;
    for (int P = 1; P <= 4; ++P) runs.push_back(solve_system(fujita_small_data_spec(P)));

    std::vector<double> diffs;
    for (int P = 2; P <= 4; ++P) {
        const SolveReport& cur = runs[static_cast<std::size_t>(P - 1)];
        const SolveReport& prev = runs[static_cast<std::size_t>(P - 2)];
        SupNormTable table;
        for (const auto& alpha : cur.alphas) {
            const auto& series = cur.series(alpha);
            double d = 0.0;
            if (alpha.order() <= P - 1) {
                const auto& old = prev.series(alpha);
                for (std::size_t j = 0; j < series.size(); ++j)
                    d = std::max(d, (series[j] - old[j]).cwiseAbs().maxCoeff());
            } else {
                for (const auto& v : series) d = std::max(d, v.cwiseAbs().maxCoeff());
            }
            table[alpha] = d;
        }
        diffs.push_back(kondratiev_norm(table, 1.0, q).value);
    }
    if (!(diffs[0] > diffs[1] && diffs[1] > diffs[2] && diffs[2] > 0.0))
        return {r.name, false,
                "norm differences not monotone: " + fmt(diffs[0]) + ", " + fmt(diffs[1]) + ", " +
                    fmt(diffs[2])};
    r.detail = "Kondratiev(rho=1, q=" + fmt(q) + ") differences " + fmt(diffs[0]) + " > " +
               fmt(diffs[1]) + " > " + fmt(diffs[2]);
    return r;
}

CheckResult check_monte_carlo() {
    CheckResult r{"monte-carlo", true, ""};
    ProblemSpec spec = fujita_small_data_spec();
    SolveReport report = solve_system(spec);
    ChaosField field_T = report.field_at(report.steps);

    McMoments mc = mc_moments(field_T, 20000, 42);
    Worst mean_sigma, var_sigma;
    for (Eigen::Index i = 0; i < mc.mean.size(); ++i) {
        double dm = std::abs(mc.mean[i] - mc.ref_mean[i]);
        if (dm > 4.0 * mc.mean_se[i])
            return {r.name, false,
                    "mean off by " + fmt(dm) + " > 4 se (" + fmt(4.0 * mc.mean_se[i]) +
                        ") at component " + std::to_string(i)};
        if (mc.mean_se[i] > 0.0) mean_sigma.track(dm / mc.mean_se[i]);
        double dv = std::abs(mc.variance[i] - mc.ref_variance[i]);
        if (dv > 4.0 * mc.variance_se[i])
            return {r.name, false,
                    "variance off by " + fmt(dv) + " > 4 se (" + fmt(4.0 * mc.variance_se[i]) +
                        ") at component " + std::to_string(i)};
        if (mc.variance_se[i] > 0.0) var_sigma.track(dv / mc.variance_se[i]);
    }

    McMoments again = mc_moments(field_T, 20000, 42);
    std::ostringstream first, second;
    io::write_mc_csv(first, mc);
    io::write_mc_csv(second, again);
    if (first.str() != second.str())
        return {r.name, false, "repeat runs with seed 42 are not byte-identical"};
    r.detail = "seed 42, N=20000, worst |dev|/se " + fmt(mean_sigma.value) + " (mean) and " +
               fmt(var_sigma.value) + " (variance), both < 4; repeat run byte-identical";
    return r;
}

// --- criterion 10: determinism & triangularity ----------------------------------

CheckResult check_determinism() {
    CheckResult r{"determinism", true, ""};
    fs::path dir = scratch_dir();
    fs::path spec_path = dir / "fujita.json";
    io::write_file(spec_path, fujita_spec_json(4, 200));

    cli::RunConfig cfg;
    cfg.spec_path = spec_path.string();
    std::ostringstream log;
    cfg.out_dir = (dir / "out1").string();
    int rc1 = cli::cmd_run(cfg, log);
    cfg.out_dir = (dir / "out2").string();
    int rc2 = cli::cmd_run(cfg, log);
    if (rc1 != 0 || rc2 != 0) {
        fs::remove_all(dir);
        return {r.name, false, "cmd_run exited nonzero"};
    }
    for (const char* file : {"trajectory.csv", "field_final.csv", "sup_norms.csv", "norm_report.csv"}) {
        if (slurp(dir / "out1" / file) != slurp(dir / "out2" / file)) {
            fs::remove_all(dir);
            return {r.name, false, std::string("repeat runs differ in ") + file};
        }
    }
    fs::remove_all(dir);

    // deterministic data: every higher coefficient must vanish identically
    ProblemSpec det = fujita_small_data_spec();
    det.initial = ChaosField::zeros(det.trunc, det.op.dof);
    det.initial.set(MultiIndex::zero(), sine_mode(det.op.dof, 1.0, 1, 0.1));
    SolveReport report = solve_system(det);
    for (const auto& [alpha, L] : report.sup_norms)
        if (!alpha.is_zero() && L != 0.0)
            return {r.name, false, "deterministic data produced nonzero mode " + alpha.encode()};
    r.detail = "repeat cmd_run byte-identical; deterministic data collapses to exact zeros";
    return r;
}

std::string fujita_spec_json(int P, int steps) {
    std::ostringstream os;
    os << "{\n"
       << "  \"operator\": {\"preset\": \"laplacian1d\", \"M\": 32, \"L\": 1.0},\n"
       << "  \"poly\": {\"coeffs\": [0, 0, 1]},\n"
       << "  \"trunc\": {\"K\": 3, \"P\": " << P << "},\n"
       << "  \"time\": {\"T\": 0.5, \"steps\": " << steps << "},\n"
       << "  \"initial\": {\"modes\": [\n"
       << "    {\"alpha\": \"0\", \"spatial\": {\"kind\": \"sine\", \"mode\": 1, \"amplitude\": 0.1}},\n"
       << "    {\"alpha\": \"1^1\", \"spatial\": {\"kind\": \"sine\", \"mode\": 1, \"amplitude\": 0.025}},\n"
       << "    {\"alpha\": \"2^1\", \"spatial\": {\"kind\": \"sine\", \"mode\": 2, \"amplitude\": 0.0125}},\n"
       << "    {\"alpha\": \"3^1\", \"spatial\": {\"kind\": \"sine\", \"mode\": 3, \"amplitude\": 0.00625}}\n"
       << "  ]},\n"
       << "  \"forcing\": {\"preset\": \"zero\"}\n"
       << "}\n";
    return os.str();
}

}  // namespace

ProblemSpec fujita_small_data_spec(int max_order, int steps) {
    const int M = 32;
    const double L = 1.0;
    ProblemSpec spec;
    spec.op = laplacian_1d(M, L);
    spec.poly = WickPolynomial({0.0, 0.0, 1.0});
    spec.trunc = {3, max_order};
    spec.horizon = 0.5;
    spec.steps = steps;
    spec.initial = ChaosField::zeros(spec.trunc, M);
    spec.initial.set(MultiIndex::zero(), sine_mode(M, L, 1, 0.1));
    for (int k = 1; k <= 3; ++k)
        spec.initial.set(MultiIndex::unit(k), sine_mode(M, L, k, 0.05 * std::pow(2.0, -k)));
    spec.forcing = Forcing::zero();
    return spec;
}

std::vector<std::string> suite_names() {
    return {"combinatorics",        "wick-algebra", "time-stepping", "riccati",
            "linear-nonautonomous", "heat",         "certificate",   "truncation",
            "monte-carlo",          "determinism"};
}

std::vector<CheckResult> run(const std::string& suite) {
    using CheckFn = CheckResult (*)();
    const std::vector<std::pair<std::string, CheckFn>> all = {
        {"combinatorics", check_combinatorics},
        {"wick-algebra", check_wick_algebra},
        {"time-stepping", check_time_stepping},
        {"riccati", check_riccati},
        {"linear-nonautonomous", check_linear_nonautonomous},
        {"heat", check_heat},
        {"certificate", check_certificate},
        {"truncation", check_truncation},
        {"monte-carlo", check_monte_carlo},
        {"determinism", check_determinism},
    };
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : all) {
        if (suite == "all" || suite == name) results.push_back(fn());
    }
    if (results.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
    return results;
}

}  // namespace wickflow::acceptance
