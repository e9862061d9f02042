#include "wickflow/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wickflow::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void write_field_csv(std::ostream& os, const ChaosField& field) {
    os << "alpha,index,value\n";
    for (const auto& alpha : field.sorted_support()) {
        const Eigen::VectorXd& v = field.coeffs.at(alpha);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            os << alpha.encode() << ',' << i << ',' << format_double(v[i]) << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const SolveReport& report) {
    os << "time,alpha,index,value\n";
    for (std::size_t j = 0; j < report.times.size(); ++j) {
        for (std::size_t a = 0; a < report.alphas.size(); ++a) {
            const Eigen::VectorXd& v = report.coeffs[a][j];
            for (Eigen::Index i = 0; i < v.size(); ++i)
                os << format_double(report.times[j]) << ',' << report.alphas[a].encode() << ',' << i
                   << ',' << format_double(v[i]) << '\n';
        }
    }
}

void write_sup_norms_csv(std::ostream& os, const SolveReport& report) {
    os << "alpha,L_alpha\n";
    for (const auto& [alpha, L] : report.sup_norms)
        os << alpha.encode() << ',' << format_double(L) << '\n';
}

void write_norm_report_csv(std::ostream& os, const NormReport& report) {
    os << "# rho=" << format_double(report.rho) << '\n';
    os << "# q=" << format_double(report.q) << '\n';
    os << "level,partial_sum\n";
    for (std::size_t l = 0; l < report.level_sums.size(); ++l)
        os << l << ',' << format_double(report.level_sums[l]) << '\n';
    os << "total," << format_double(report.value) << '\n';
}

void write_certificate_csv(std::ostream& os, const BoundCertificate& cert) {
    const CertificateConstants& c = cert.constants;
    os << "# n=" << c.n << '\n';
    os << "# m=" << format_double(c.m) << '\n';
    os << "# w_raw=" << format_double(c.w_raw) << '\n';
    os << "# w=" << format_double(c.w) << '\n';
    os << "# M_n=" << format_double(c.M_n) << '\n';
    os << "# w_n=" << format_double(c.w_n) << '\n';
    os << "# m_n=" << format_double(c.m_n) << '\n';
    os << "# fit_ok=" << (c.fit_ok ? "true" : "false") << '\n';
    os << "# K=" << format_double(c.K) << '\n';
    os << "# p=" << format_double(c.p) << '\n';
    os << "# c=" << format_double(c.c) << '\n';
    os << "# q=" << format_double(c.q) << '\n';
    os << "# T=" << format_double(c.horizon) << '\n';
    os << "alpha,L_alpha,envelope,holds,note\n";
    for (const auto& row : cert.rows) {
        os << row.alpha.encode() << ',' << format_double(row.L) << ','
           << (std::isnan(row.envelope) ? "nan" : format_double(row.envelope)) << ','
           << (row.holds.has_value() ? (*row.holds ? "true" : "false") : "na") << ',' << row.note
           << '\n';
    }
}

void write_mc_csv(std::ostream& os, const McMoments& mc) {
    os << "# seed=" << mc.seed << '\n';
    os << "# draws=" << mc.draws << '\n';
    os << "component,mean,mean_ref,mean_se,variance,variance_ref,variance_se\n";
    for (Eigen::Index i = 0; i < mc.mean.size(); ++i) {
        os << i << ',' << format_double(mc.mean[i]) << ',' << format_double(mc.ref_mean[i]) << ','
           << format_double(mc.mean_se[i]) << ',' << format_double(mc.variance[i]) << ','
           << format_double(mc.ref_variance[i]) << ',' << format_double(mc.variance_se[i]) << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace wickflow::io
