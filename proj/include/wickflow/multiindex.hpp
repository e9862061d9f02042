#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wickflow {

using BigInt = boost::multiprecision::cpp_int;

/// Finitely supported multi-index: a sparse list of (position, exponent)
/// entries with positions >= 1 strictly increasing and exponents >= 1.
/// The empty list is the zero multi-index.
class MultiIndex {
public:
    struct Entry {
        int position;  // k >= 1
        int exponent;  // e >= 1

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    MultiIndex() = default;

    /// Builds from arbitrary (position, exponent) pairs; zero exponents are
    /// dropped, entries are sorted, duplicate positions are summed.
    static MultiIndex from_pairs(std::vector<Entry> entries);

    /// Builds from a dense exponent vector (index i holds the exponent of
    /// position i+1).
    static MultiIndex from_dense(const std::vector<int>& exponents);

    static MultiIndex zero() { return MultiIndex{}; }

    /// e * eps_k, the k-th unit index scaled by e.
    static MultiIndex unit(int position, int exponent = 1);

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    /// |alpha| = sum of exponents.
    int order() const;

    /// Largest active position, 0 for the zero index.
    int max_position() const;

    /// Exponent at position k (0 when absent).
    int exponent(int position) const;

    /// Dense exponent vector over positions 1..width (width >= max_position).
    std::vector<int> dense(int width) const;

    MultiIndex plus(const MultiIndex& other) const;

    /// Componentwise difference; empty when some component would go negative.
    std::optional<MultiIndex> minus(const MultiIndex& other) const;

    /// beta <= alpha componentwise.
    bool leq(const MultiIndex& alpha) const;

    /// 0 < *this < alpha in the componentwise partial order.
    bool strictly_inside(const MultiIndex& alpha) const;

    /// Text encoding "k1^e1 k2^e2 ..." with "0" for the zero index.
    std::string encode() const;

    /// Inverse of encode(); throws std::invalid_argument on malformed text.
    static MultiIndex decode(const std::string& text);

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<Entry> entries_;
};

/// Graded order: ascending |alpha|, ties broken lexicographically on the
/// dense exponent tuple (position 1 first). This is the canonical storage
/// order everywhere in the solver.
bool grlex_less(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& mi) const;
};

/// Finite (K, P) projection of the index set: positions up to K, total
/// order up to P.
struct Truncation {
    int max_position;  // K >= 1
    int max_order;     // P >= 0

    bool contains(const MultiIndex& mi) const {
        return mi.max_position() <= max_position && mi.order() <= max_order;
    }

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// alpha! as an exact integer.
BigInt mi_factorial(const MultiIndex& alpha);

/// |alpha|! as an exact integer.
BigInt order_factorial(const MultiIndex& alpha);

/// (2N)^{r*alpha} = prod (2k)^{r*alpha_k}, computed in log space.
/// Throws std::overflow_error when the log-sum exceeds the double range.
double mi_weight(const MultiIndex& alpha, double r);

/// log (2N)^{alpha} = sum alpha_k * log(2k).
double mi_log_weight(const MultiIndex& alpha);

/// All alpha with support in {1..K} and |alpha| <= P in graded order;
/// the zero index comes first. The list has binomial(K+P, K) elements.
std::vector<MultiIndex> enumerate(const Truncation& trunc);

/// Every ordered pair (gamma, alpha - gamma) with 0 < gamma < alpha.
std::vector<std::pair<MultiIndex, MultiIndex>> interior_splits(const MultiIndex& alpha);

/// Exact binomial coefficient.
BigInt binomial(int n, int k);

}  // namespace wickflow
