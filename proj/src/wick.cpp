#include "wickflow/wick.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace wickflow {

ChaosField ChaosField::zeros(const Truncation& trunc, int dof) {
    if (dof < 1) throw std::invalid_argument("chaos field needs dof >= 1");
    ChaosField F;
    F.trunc = trunc;
    F.dof = dof;
    return F;
}

ChaosField ChaosField::deterministic(const Truncation& trunc, const Eigen::VectorXd& value) {
    ChaosField F = zeros(trunc, static_cast<int>(value.size()));
    F.set(MultiIndex::zero(), value);
    return F;
}

const Eigen::VectorXd* ChaosField::find(const MultiIndex& alpha) const {
    auto it = coeffs.find(alpha);
    return it == coeffs.end() ? nullptr : &it->second;
}

Eigen::VectorXd ChaosField::coefficient(const MultiIndex& alpha) const {
    const Eigen::VectorXd* v = find(alpha);
    return v ? *v : Eigen::VectorXd::Zero(dof);
}

void ChaosField::set(const MultiIndex& alpha, Eigen::VectorXd value) {
    if (!trunc.contains(alpha))
        throw std::invalid_argument("coefficient index " + alpha.encode() + " outside truncation");
    if (value.size() != dof) throw std::invalid_argument("coefficient vector length mismatch");
    coeffs[alpha] = std::move(value);
}

std::vector<MultiIndex> ChaosField::sorted_support() const {
    std::vector<MultiIndex> keys;
    keys.reserve(coeffs.size());
    for (const auto& [alpha, v] : coeffs) keys.push_back(alpha);
    std::sort(keys.begin(), keys.end(), grlex_less);
    return keys;
}

WickPolynomial::WickPolynomial(std::vector<double> a) : coeffs(std::move(a)) {
    if (coeffs.size() < 2) throw std::invalid_argument("Wick polynomial needs degree >= 1");
    if (coeffs.back() == 0.0) throw std::invalid_argument("Wick polynomial needs a_n != 0");
}

double WickPolynomial::derivative(int j, double x) const {
    if (j < 0) throw std::invalid_argument("derivative order must be >= 0");
    const int n = degree();
    if (j > n) return 0.0;
    // Horner on p^{(j)} coefficients a_k k!/(k-j)! for k = j..n.
    double acc = 0.0;
    for (int k = n; k >= j; --k) {
        double fall = 1.0;
        for (int i = 0; i < j; ++i) fall *= (k - i);
        acc = acc * x + coeffs[static_cast<std::size_t>(k)] * fall;
    }
    return acc;
}

Eigen::VectorXd WickPolynomial::derivative(int j, const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = derivative(j, x[i]);
    return out;
}

namespace {

void require_compatible(const ChaosField& F, const ChaosField& G) {
    if (!(F.trunc == G.trunc) || F.dof != G.dof)
        throw std::invalid_argument("wick product operands disagree on truncation or grid size");
}

void accumulate(ChaosField& out, const MultiIndex& alpha, const Eigen::VectorXd& term) {
    auto it = out.coeffs.find(alpha);
    if (it == out.coeffs.end())
        out.coeffs.emplace(alpha, term);
    else
        it->second += term;
}

}  // namespace

ChaosField wick_product(const ChaosField& F, const ChaosField& G) {
    require_compatible(F, G);
    ChaosField out = ChaosField::zeros(F.trunc, F.dof);
    // Accumulation runs over unordered split pairs {beta, alpha-beta} in
    // canonical order, so F <> G and G <> F produce bitwise equal sums.
    const auto modes = enumerate(F.trunc);
    for (const auto& alpha : modes) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(F.dof);
        bool touched = false;
        for (const auto& beta : modes) {
            auto gamma = alpha.minus(beta);
            if (!gamma) continue;
            if (grlex_less(*gamma, beta)) continue;  // pair handled at the mirrored split
            const Eigen::VectorXd* fb = F.find(beta);
            const Eigen::VectorXd* gg = G.find(*gamma);
            const Eigen::VectorXd* fg = F.find(*gamma);
            const Eigen::VectorXd* gb = G.find(beta);
            if (beta == *gamma) {
                if (fb && gg) {
                    acc += fb->cwiseProduct(*gg);
                    touched = true;
                }
                continue;
            }
            Eigen::VectorXd contrib = Eigen::VectorXd::Zero(F.dof);
            bool has = false;
            if (fb && gg) {
                contrib = fb->cwiseProduct(*gg);
                has = true;
            }
            if (fg && gb) {
                Eigen::VectorXd mirrored = fg->cwiseProduct(*gb);
                contrib = has ? Eigen::VectorXd(contrib + mirrored) : mirrored;
                has = true;
            }
            if (has) {
                acc += contrib;
                touched = true;
            }
        }
        if (touched) out.coeffs.emplace(alpha, std::move(acc));
    }
    return out;
}

ChaosField wick_power(const ChaosField& F, int n) {
    if (n < 0) throw std::invalid_argument("wick power needs n >= 0");
    ChaosField out = ChaosField::deterministic(F.trunc, Eigen::VectorXd::Ones(F.dof));
    for (int i = 0; i < n; ++i) out = wick_product(out, F);
    return out;
}

namespace {

struct ChainKey {
    int depth;
    MultiIndex alpha;
    bool operator<(const ChainKey& o) const {
        if (depth != o.depth) return depth < o.depth;
        return grlex_less(alpha, o.alpha);
    }
};

const Eigen::VectorXd* chain_rec(
    const std::function<const Eigen::VectorXd*(const MultiIndex&)>& coeff,
    const MultiIndex& alpha, int depth, int dof,
    std::map<ChainKey, Eigen::VectorXd>& memo) {
    if (depth == 1) return coeff(alpha);
    ChainKey key{depth, alpha};
    auto hit = memo.find(key);
    if (hit != memo.end()) return &hit->second;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dof);
    for (const auto& [gamma, rest] : interior_splits(alpha)) {
        const Eigen::VectorXd* outer = coeff(rest);
        if (!outer) continue;
        const Eigen::VectorXd* inner = chain_rec(coeff, gamma, depth - 1, dof, memo);
        if (!inner) continue;
        acc += outer->cwiseProduct(*inner);
    }
    auto [it, inserted] = memo.emplace(std::move(key), std::move(acc));
    return &it->second;
}

}  // namespace

Eigen::VectorXd interior_chain_sum(
    const std::function<const Eigen::VectorXd*(const MultiIndex&)>& coeff,
    const MultiIndex& alpha, int j, int dof) {
    if (j < 1) throw std::invalid_argument("chain sum needs j >= 1");
    if (alpha.is_zero()) throw std::invalid_argument("chain sum needs alpha > 0");
    std::map<ChainKey, Eigen::VectorXd> memo;
    const Eigen::VectorXd* v = chain_rec(coeff, alpha, j, dof, memo);
    return v ? *v : Eigen::VectorXd::Zero(dof);
}

PowerCoeffSplit power_coeff_split(const ChaosField& u, int n, const MultiIndex& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("power_coeff_split rejects alpha = 0");
    if (n < 1) throw std::invalid_argument("power_coeff_split needs n >= 1");
    const Eigen::VectorXd u0 = u.coefficient(MultiIndex::zero());
    const Eigen::VectorXd ua = u.coefficient(alpha);

    PowerCoeffSplit out;
    out.leading = static_cast<double>(n) * u0.array().pow(n - 1).matrix().cwiseProduct(ua);

    auto lookup = [&u](const MultiIndex& beta) { return u.find(beta); };
    out.remainder = Eigen::VectorXd::Zero(u.dof);
    for (int j = 2; j <= n; ++j) {
        double binom_nj = static_cast<double>(binomial(n, j));
        Eigen::VectorXd chain = interior_chain_sum(lookup, alpha, j, u.dof);
        out.remainder += binom_nj * u0.array().pow(n - j).matrix().cwiseProduct(chain);
    }
    return out;
}

ChaosField wick_polynomial_direct(const WickPolynomial& p, const ChaosField& u) {
    ChaosField out = ChaosField::zeros(u.trunc, u.dof);
    for (int k = 0; k <= p.degree(); ++k) {
        double a = p.coeffs[static_cast<std::size_t>(k)];
        if (a == 0.0) continue;
        ChaosField pw = wick_power(u, k);
        for (const auto& alpha : pw.sorted_support())
            accumulate(out, alpha, a * pw.coeffs.at(alpha));
    }
    return out;
}

ChaosField wick_taylor(const WickPolynomial& p, const ChaosField& u) {
    const Eigen::VectorXd u0 = u.coefficient(MultiIndex::zero());

    ChaosField centered = u;
    centered.coeffs.erase(MultiIndex::zero());

    ChaosField out = ChaosField::zeros(u.trunc, u.dof);
    out.set(MultiIndex::zero(), p.derivative(0, u0));
    double jfact = 1.0;
    for (int j = 1; j <= p.degree(); ++j) {
        jfact *= j;
        Eigen::VectorXd scale = p.derivative(j, u0) / jfact;
        ChaosField pw = wick_power(centered, j);
        for (const auto& alpha : pw.sorted_support())
            accumulate(out, alpha, scale.cwiseProduct(pw.coeffs.at(alpha)));
    }
    return out;
}

Eigen::VectorXd hermite_transform(const ChaosField& F, const std::vector<double>& z) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(F.dof);
    for (const auto& alpha : F.sorted_support()) {
        double w = 1.0;
        for (const auto& e : alpha.entries()) {
            if (e.position > static_cast<int>(z.size()))
                throw std::invalid_argument("hermite_transform needs one z entry per active position");
            w *= std::pow(z[static_cast<std::size_t>(e.position - 1)], e.exponent);
        }
        out += w * F.coeffs.at(alpha);
    }
    return out;
}

double hermite_poly(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_poly needs n >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        double next = x * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Eigen::VectorXd evaluate_realization(const ChaosField& F, const std::vector<double>& g) {
    // Per-position Hermite value tables up to the truncation order.
    const int P = F.trunc.max_order;
    std::vector<std::vector<double>> table(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        table[k].resize(static_cast<std::size_t>(P) + 1);
        for (int e = 0; e <= P; ++e) table[k][static_cast<std::size_t>(e)] = hermite_poly(e, g[k]);
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(F.dof);
    for (const auto& alpha : F.sorted_support()) {
        double w = 1.0;
        for (const auto& e : alpha.entries()) {
            if (e.position > static_cast<int>(g.size()))
                throw std::invalid_argument("evaluate_realization needs one sample per active position");
            w *= table[static_cast<std::size_t>(e.position - 1)][static_cast<std::size_t>(e.exponent)];
        }
        out += w * F.coeffs.at(alpha);
    }
    return out;
}

double hermite_function(int k, double t) {
    if (k < 1) throw std::invalid_argument("hermite_function needs k >= 1");
    const double xi1 = std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t);
    if (k == 1) return xi1;
    double prev = 0.0, cur = xi1;
    for (int j = 1; j < k; ++j) {
        double next = std::sqrt(2.0 / j) * t * cur - std::sqrt((j - 1.0) / j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace wickflow
