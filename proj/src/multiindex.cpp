#include "wickflow/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wickflow {

MultiIndex MultiIndex::from_pairs(std::vector<Entry> entries) {
    std::map<int, long long> acc;
    for (const auto& e : entries) {
        if (e.position < 1) throw std::invalid_argument("multi-index position must be >= 1");
        if (e.exponent < 0) throw std::invalid_argument("multi-index exponent must be >= 0");
        acc[e.position] += e.exponent;
    }
    MultiIndex mi;
    for (const auto& [k, e] : acc) {
        if (e > 0) mi.entries_.push_back({k, static_cast<int>(e)});
    }
    return mi;
}

MultiIndex MultiIndex::from_dense(const std::vector<int>& exponents) {
    MultiIndex mi;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0) throw std::invalid_argument("multi-index exponent must be >= 0");
        if (exponents[i] > 0) mi.entries_.push_back({static_cast<int>(i) + 1, exponents[i]});
    }
    return mi;
}

MultiIndex MultiIndex::unit(int position, int exponent) {
    if (position < 1) throw std::invalid_argument("multi-index position must be >= 1");
    MultiIndex mi;
    if (exponent < 0) throw std::invalid_argument("multi-index exponent must be >= 0");
    if (exponent > 0) mi.entries_.push_back({position, exponent});
    return mi;
}

int MultiIndex::order() const {
    int total = 0;
    for (const auto& e : entries_) total += e.exponent;
    return total;
}

int MultiIndex::max_position() const {
    return entries_.empty() ? 0 : entries_.back().position;
}

int MultiIndex::exponent(int position) const {
    for (const auto& e : entries_) {
        if (e.position == position) return e.exponent;
        if (e.position > position) break;
    }
    return 0;
}

std::vector<int> MultiIndex::dense(int width) const {
    std::vector<int> out(static_cast<std::size_t>(std::max(width, max_position())), 0);
    for (const auto& e : entries_) out[static_cast<std::size_t>(e.position - 1)] = e.exponent;
    return out;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    MultiIndex out;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->position < b->position)) {
            out.entries_.push_back(*a++);
        } else if (a == entries_.end() || b->position < a->position) {
            out.entries_.push_back(*b++);
        } else {
            out.entries_.push_back({a->position, a->exponent + b->exponent});
            ++a;
            ++b;
        }
    }
    return out;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const {
    MultiIndex out;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->position < b->position)) {
            out.entries_.push_back(*a++);
        } else if (a == entries_.end() || b->position < a->position) {
            return std::nullopt;  // other has an entry we lack
        } else {
            int diff = a->exponent - b->exponent;
            if (diff < 0) return std::nullopt;
            if (diff > 0) out.entries_.push_back({a->position, diff});
            ++a;
            ++b;
        }
    }
    return out;
}

bool MultiIndex::leq(const MultiIndex& alpha) const {
    return alpha.minus(*this).has_value();
}

bool MultiIndex::strictly_inside(const MultiIndex& alpha) const {
    return !is_zero() && *this != alpha && leq(alpha);
}

std::string MultiIndex::encode() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : entries_) {
        if (!first) os << ' ';
        os << e.position << '^' << e.exponent;
        first = false;
    }
    return os.str();
}

MultiIndex MultiIndex::decode(const std::string& text) {
    std::string trimmed;
    // collapse whitespace
    std::istringstream is(text);
    std::string token;
    std::vector<Entry> entries;
    bool saw_zero = false;
    while (is >> token) {
        if (token == "0") {
            saw_zero = true;
            continue;
        }
        auto caret = token.find('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == token.size())
            throw std::invalid_argument("bad multi-index token: " + token);
        int pos = 0, exp = 0;
        try {
            pos = std::stoi(token.substr(0, caret));
            exp = std::stoi(token.substr(caret + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad multi-index token: " + token);
        }
        if (pos < 1 || exp < 1) throw std::invalid_argument("bad multi-index token: " + token);
        entries.push_back({pos, exp});
    }
    if (saw_zero && !entries.empty())
        throw std::invalid_argument("bad multi-index text: " + text);
    return from_pairs(std::move(entries));
}

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    int width = std::max(a.max_position(), b.max_position());
    for (int k = 1; k <= width; ++k) {
        int ea = a.exponent(k), eb = b.exponent(k);
        if (ea != eb) return ea < eb;
    }
    return false;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& mi) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& e : mi.entries()) {
        std::size_t v = (static_cast<std::size_t>(e.position) << 20) ^ static_cast<std::size_t>(e.exponent);
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

BigInt mi_factorial(const MultiIndex& alpha) {
    BigInt out = 1;
    for (const auto& e : alpha.entries()) {
        for (int i = 2; i <= e.exponent; ++i) out *= i;
    }
    return out;
}

BigInt order_factorial(const MultiIndex& alpha) {
    BigInt out = 1;
    for (int i = 2; i <= alpha.order(); ++i) out *= i;
    return out;
}

double mi_log_weight(const MultiIndex& alpha) {
    double s = 0.0;
    for (const auto& e : alpha.entries()) s += e.exponent * std::log(2.0 * e.position);
    return s;
}

double mi_weight(const MultiIndex& alpha, double r) {
    double logsum = r * mi_log_weight(alpha);
    // exp overflows past ~709.78; underflow to zero is harmless.
    if (logsum > 709.0) throw std::overflow_error("mi_weight: (2N)^{r alpha} exceeds double range");
    return std::exp(logsum);
}

namespace {

void enumerate_level(int position, int remaining, int max_position,
                     std::vector<int>& dense, std::vector<MultiIndex>& out) {
    if (position == max_position) {
        dense[static_cast<std::size_t>(position - 1)] = remaining;
        out.push_back(MultiIndex::from_dense(dense));
        dense[static_cast<std::size_t>(position - 1)] = 0;
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        dense[static_cast<std::size_t>(position - 1)] = e;
        enumerate_level(position + 1, remaining - e, max_position, dense, out);
    }
    dense[static_cast<std::size_t>(position - 1)] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate(const Truncation& trunc) {
    if (trunc.max_position < 1) throw std::invalid_argument("truncation needs K >= 1");
    if (trunc.max_order < 0) throw std::invalid_argument("truncation needs P >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> dense(static_cast<std::size_t>(trunc.max_position), 0);
    for (int level = 0; level <= trunc.max_order; ++level)
        enumerate_level(1, level, trunc.max_position, dense, out);
    return out;
}

std::vector<std::pair<MultiIndex, MultiIndex>> interior_splits(const MultiIndex& alpha) {
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    const auto& entries = alpha.entries();
    if (entries.empty()) return out;
    // mixed-radix counter over 0..alpha_k per active position
    std::vector<int> gamma(entries.size(), 0);
    while (true) {
        // advance
        std::size_t i = 0;
        while (i < gamma.size()) {
            if (gamma[i] < entries[i].exponent) {
                ++gamma[i];
                break;
            }
            gamma[i] = 0;
            ++i;
        }
        if (i == gamma.size()) break;  // wrapped: enumeration done
        bool is_alpha = true;
        for (std::size_t j = 0; j < gamma.size(); ++j)
            if (gamma[j] != entries[j].exponent) { is_alpha = false; break; }
        if (is_alpha) continue;
        std::vector<MultiIndex::Entry> lo, hi;
        for (std::size_t j = 0; j < gamma.size(); ++j) {
            if (gamma[j] > 0) lo.push_back({entries[j].position, gamma[j]});
            int rest = entries[j].exponent - gamma[j];
            if (rest > 0) hi.push_back({entries[j].position, rest});
        }
        out.emplace_back(MultiIndex::from_pairs(std::move(lo)), MultiIndex::from_pairs(std::move(hi)));
    }
    return out;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt num = 1, den = 1;
    for (int i = 1; i <= k; ++i) {
        num *= (n - k + i);
        den *= i;
    }
    return num / den;
}

}  // namespace wickflow
