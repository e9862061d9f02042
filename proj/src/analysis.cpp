#include "wickflow/analysis.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wickflow {

namespace {

double log_mi_factorial(const MultiIndex& alpha) {
    double s = 0.0;
    for (const auto& e : alpha.entries()) s += std::lgamma(e.exponent + 1.0);
    return s;
}

NormReport weighted_sum(const SupNormTable& norms, double rho, double q) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("kondratiev norm needs rho in [0,1]");
    if (q < 0.0) throw std::invalid_argument("kondratiev norm needs q >= 0");
    NormReport report;
    report.rho = rho;
    report.q = q;
    int max_level = 0;
    for (const auto& [alpha, v] : norms) max_level = std::max(max_level, alpha.order());
    report.level_sums.assign(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (const auto& [alpha, v] : norms) {
        double logw = (1.0 - rho) * log_mi_factorial(alpha) - q * mi_log_weight(alpha);
        report.level_sums[static_cast<std::size_t>(alpha.order())] += v * v * std::exp(logw);
    }
    for (double s : report.level_sums) report.value += s;
    return report;
}

}  // namespace

NormReport kondratiev_norm(const SupNormTable& norms, double rho, double q) {
    return weighted_sum(norms, rho, q);
}

NormReport kondratiev_norm(const ChaosField& F, double rho, double q) {
    SupNormTable norms;
    for (const auto& alpha : F.sorted_support())
        norms[alpha] = F.coeffs.at(alpha).cwiseAbs().maxCoeff();
    return weighted_sum(norms, rho, q);
}

TailDecayReport tail_decay(const SupNormTable& norms, double rho, double q) {
    NormReport n = weighted_sum(norms, rho, q);
    TailDecayReport report;
    report.level_sums = n.level_sums;
    for (std::size_t l = 0; l + 1 < report.level_sums.size(); ++l) {
        double denom = report.level_sums[l];
        report.ratios.push_back(denom > 0.0 ? report.level_sums[l + 1] / denom
                                            : std::numeric_limits<double>::quiet_NaN());
    }
    for (std::size_t l = 2; l + 1 < report.level_sums.size(); ++l) {
        if (report.level_sums[l + 1] > report.level_sums[l]) {
            report.monotone_from_level2 = false;
            break;
        }
    }
    return report;
}

std::vector<double> gaussian_draw(std::uint64_t seed, std::uint64_t draw_index, int count) {
    std::seed_seq seq{static_cast<std::uint64_t>(0x5eedULL), seed, draw_index};
    std::mt19937_64 eng(seq);
    auto uniform = [&eng]() {
        // 53-bit mantissa in (0, 1]
        return (static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53;
    };
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; i += 2) {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        out[static_cast<std::size_t>(i)] = r * std::cos(2.0 * M_PI * u2);
        if (i + 1 < count) out[static_cast<std::size_t>(i) + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    return out;
}

McMoments mc_moments(const ChaosField& F, int draws, std::uint64_t seed) {
    if (draws < 1) throw std::invalid_argument("mc_moments needs draws >= 1");
    const int M = F.dof;
    const int K = F.trunc.max_position;

    McMoments mc;
    mc.seed = seed;
    mc.draws = draws;

    Eigen::VectorXd sum = Eigen::VectorXd::Zero(M);
    Eigen::MatrixXd samples(M, draws);
    for (int i = 0; i < draws; ++i) {
        std::vector<double> g = gaussian_draw(seed, static_cast<std::uint64_t>(i), K);
        samples.col(i) = evaluate_realization(F, g);
        sum += samples.col(i);
    }
    mc.mean = sum / draws;

    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(M);
    Eigen::VectorXd m4 = Eigen::VectorXd::Zero(M);
    for (int i = 0; i < draws; ++i) {
        Eigen::ArrayXd d = (samples.col(i) - mc.mean).array();
        m2 += (d * d).matrix();
        m4 += (d * d * d * d).matrix();
    }
    mc.variance = m2 / std::max(1, draws - 1);
    m4 /= draws;
    Eigen::ArrayXd central2 = (m2 / draws).array();
    mc.mean_se = (mc.variance / draws).cwiseSqrt();
    mc.variance_se = ((m4.array() - central2 * central2).max(0.0) / draws).sqrt();

    mc.ref_mean = F.coefficient(MultiIndex::zero());
    mc.ref_variance = Eigen::VectorXd::Zero(M);
    for (const auto& alpha : F.sorted_support()) {
        if (alpha.is_zero()) continue;
        double fact = static_cast<double>(mi_factorial(alpha));
        mc.ref_variance += fact * F.coeffs.at(alpha).cwiseProduct(F.coeffs.at(alpha));
    }
    return mc;
}

namespace {

double simpson_panel(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double fm, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = f(0.5 * (a + m));
    double rm = f(0.5 * (m + b));
    double left = simpson_panel(a, fa, m, fm, lm);
    double right = simpson_panel(m, fm, b, fb, rm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_rec(f, a, fa, m, fm, lm, left, 0.5 * tol, depth - 1) +
           adaptive_rec(f, m, fm, b, fb, rm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson_panel(a, fa, b, fb, fm);
    return adaptive_rec(f, a, fa, b, fb, fm, whole, tol, 48);
}

double linear_oracle(const std::function<double(double)>& a,
                     const std::function<double(double)>& f, double u0, double t) {
    auto tail_integral = [&](double s) { return adaptive_simpson(a, s, t, 1e-13); };
    double hom = std::exp(adaptive_simpson(a, 0.0, t, 1e-13)) * u0;
    double inhom = adaptive_simpson([&](double s) { return std::exp(tail_integral(s)) * f(s); },
                                    0.0, t, 1e-12);
    return hom + inhom;
}

double linear_oracle(double a, const std::function<double(double)>& f, double u0, double t) {
    return linear_oracle([a](double) { return a; }, f, u0, t);
}

RiccatiReference riccati_oracle(double c, double u_eps0, double u_2eps0, double t) {
    const double denom = 1.0 - c * t;
    if (denom <= 0.0) throw std::domain_error("riccati_oracle: pole crossed, c t >= 1");
    RiccatiReference r;
    r.u0 = c / denom;
    r.u_eps = u_eps0 / (denom * denom);
    r.u_2eps = (u_2eps0 + u_eps0 * u_eps0 * t / denom) / (denom * denom);
    return r;
}

}  // namespace wickflow
