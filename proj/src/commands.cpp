#include "wickflow/commands.hpp"

#include <filesystem>
#include <sstream>

#include "wickflow/acceptance.hpp"
#include "wickflow/analysis.hpp"
#include "wickflow/combinatorics.hpp"
#include "wickflow/report_io.hpp"
#include "wickflow/spec_io.hpp"

namespace wickflow::cli {

namespace {

namespace fs = std::filesystem;

io::SpecOverrides overrides_from(const RunConfig& config) {
    io::SpecOverrides o;
    o.steps = config.steps;
    o.trunc_K = config.trunc_K;
    o.trunc_P = config.trunc_P;
    return o;
}

struct Solved {
    ProblemSpec spec;
    SolveReport report;
};

/// Parse + solve with the command exit-code mapping; returns the code and
/// leaves `out` unset on failure.
int solve_spec(const RunConfig& config, std::ostream& log, Solved& out) {
    if (config.spec_path.empty()) {
        log << "error: --spec PATH is required\n";
        return kExitUsage;
    }
    try {
        out.spec = io::parse_problem_spec_file(config.spec_path, overrides_from(config));
    } catch (const io::SpecParseError& e) {
        log << "error: " << e.what() << '\n';
        return kExitParse;
    }
    try {
        out.report = solve_system(out.spec);
    } catch (const BlowUpError& e) {
        log << "error: " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const NumericError& e) {
        log << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

double norm_report_q(const Solved& s) {
    // Use the certificate's decay exponent when the nonlinearity admits one.
    try {
        return certificate(s.report, s.spec).constants.q;
    } catch (const std::invalid_argument&) {
        return 6.0;
    }
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& log) {
    Solved s;
    if (int rc = solve_spec(config, log, s); rc != kExitOk) return rc;

    NormReport norm = kondratiev_norm(s.report.sup_norms, 1.0, norm_report_q(s));

    std::ostringstream trajectory, field, sup, normcsv;
    io::write_trajectory_csv(trajectory, s.report);
    io::write_field_csv(field, s.report.field_at(s.report.steps));
    io::write_sup_norms_csv(sup, s.report);
    io::write_norm_report_csv(normcsv, norm);

    fs::path out(config.out_dir);
    io::write_file(out / "trajectory.csv", trajectory.str());
    io::write_file(out / "field_final.csv", field.str());
    io::write_file(out / "sup_norms.csv", sup.str());
    io::write_file(out / "norm_report.csv", normcsv.str());

    log << "solved " << s.report.alphas.size() << " modes on " << s.report.steps
        << " steps; M_n = " << io::format_double(s.report.level0_sup) << '\n';
    log << "wrote trajectory.csv, field_final.csv, sup_norms.csv, norm_report.csv under "
        << out.string() << '\n';
    return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
    std::vector<acceptance::CheckResult> results;
    try {
        results = acceptance::run(config.suite);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "; available:";
        for (const auto& name : acceptance::suite_names()) log << ' ' << name;
        log << '\n';
        return kExitUsage;
    }
    bool all_pass = true;
    for (const auto& result : results) {
        log << (result.pass ? "[PASS] " : "[FAIL] ") << result.name << ": " << result.detail << '\n';
        all_pass = all_pass && result.pass;
    }
    log << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_bounds(const RunConfig& config, std::ostream& log) {
    Solved s;
    if (int rc = solve_spec(config, log, s); rc != kExitOk) return rc;

    BoundCertificate cert;
    try {
        cert = certificate(s.report, s.spec);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    // growth-bound sweeps shipped next to the certificate
    bool sweeps_hold = true;
    std::ostringstream catalan_csv;
    catalan_csv << "n,closed,recurrence,bound_4n,holds\n";
    CatalanTable table = CatalanTable::from_recurrence(30);
    BigInt four_n = 1;
    for (int n = 0; n <= 30; ++n) {
        BigInt closed = catalan(n);
        bool ok = closed == table.values[static_cast<std::size_t>(n)] && closed <= four_n;
        sweeps_hold = sweeps_hold && ok;
        catalan_csv << n << ',' << closed.str() << ',' << table.values[static_cast<std::size_t>(n)].str()
                    << ',' << four_n.str() << ',' << (ok ? "true" : "false") << '\n';
        four_n *= 4;
    }
    std::ostringstream factorial_csv;
    factorial_csv << "alpha,ratio,bound,holds\n";
    for (const auto& alpha : enumerate({6, 8})) {
        auto b = factorial_ratio_bound(alpha);
        sweeps_hold = sweeps_hold && b.holds;
        factorial_csv << alpha.encode() << ',' << io::format_double(b.ratio) << ','
                      << io::format_double(b.bound) << ',' << (b.holds ? "true" : "false") << '\n';
    }

    std::ostringstream cert_csv;
    io::write_certificate_csv(cert_csv, cert);

    fs::path out(config.out_dir);
    io::write_file(out / "certificate.csv", cert_csv.str());
    io::write_file(out / "catalan_table.csv", catalan_csv.str());
    io::write_file(out / "factorial_bound.csv", factorial_csv.str());

    log << "certificate: n=" << cert.constants.n << " K=" << io::format_double(cert.constants.K)
        << " p=" << io::format_double(cert.constants.p) << " q=" << io::format_double(cert.constants.q)
        << (cert.all_hold() ? "; all bounds hold\n" : "; BOUND VIOLATION\n");
    log << "growth-bound sweeps " << (sweeps_hold ? "hold" : "FAILED") << '\n';
    log << "wrote " << (out / "certificate.csv").string() << ", " << (out / "catalan_table.csv").string()
        << ", " << (out / "factorial_bound.csv").string() << '\n';
    return (cert.all_hold() && sweeps_hold) ? kExitOk : kExitCheckFailed;
}

int cmd_sample(const RunConfig& config, std::ostream& log) {
    if (config.draws < 1) {
        log << "error: --draws must be >= 1\n";
        return kExitUsage;
    }
    Solved s;
    if (int rc = solve_spec(config, log, s); rc != kExitOk) return rc;

    ChaosField field_T = s.report.field_at(s.report.steps);
    McMoments mc = mc_moments(field_T, config.draws, config.seed);

    std::ostringstream mc_csv;
    io::write_mc_csv(mc_csv, mc);
    fs::path out(config.out_dir);
    io::write_file(out / "mc_report.csv", mc_csv.str());

    double worst_mean = 0.0, worst_var = 0.0;
    for (Eigen::Index i = 0; i < mc.mean.size(); ++i) {
        if (mc.mean_se[i] > 0.0)
            worst_mean = std::max(worst_mean, std::abs(mc.mean[i] - mc.ref_mean[i]) / mc.mean_se[i]);
        if (mc.variance_se[i] > 0.0)
            worst_var =
                std::max(worst_var, std::abs(mc.variance[i] - mc.ref_variance[i]) / mc.variance_se[i]);
    }
    log << "sampled " << config.draws << " draws with seed " << config.seed << "; worst |dev|/se "
        << io::format_double(worst_mean) << " (mean), " << io::format_double(worst_var)
        << " (variance)\n";
    log << "wrote " << (out / "mc_report.csv").string() << '\n';
    return kExitOk;
}

}  // namespace wickflow::cli
