#pragma once

/**
 * @file signature.hpp
 * @brief Eventually periodic tree signatures: validity, exact level
 *        counts, and a streaming breadth-first enumeration that emits
 *        carry propagation values without materializing the tree.
 *
 * A signature lists the degrees of the tree nodes in breadth-first
 * order, with the root carrying an extra self-loop edge ranked below
 * all of its real children. That convention makes breadth-first
 * traversal coincide with radix-order enumeration of the represented
 * integers and gives the maximal word of each level a carry of ℓ+1.
 */

#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace carry {

/// Periodic part of a signature. p = sum of the entries, q = length;
/// (q, p) is the directing parameter.
struct Rhythm {
    std::vector<int> entries;

    int q() const { return (int)entries.size(); }
    long p() const { return std::accumulate(entries.begin(), entries.end(), 0L); }
};

struct Signature {
    std::vector<int> prefix;
    Rhythm period;

    /// Degree of the breadth-first node with the given index (the root's
    /// self-loop is included in entry 0).
    int entry(std::uint64_t j) const {
        if (j < prefix.size()) return prefix[j];
        if (period.entries.empty())
            throw std::out_of_range("signature exhausted and no period");
        return period.entries[(j - prefix.size()) % period.entries.size()];
    }

    bool has_zero_entry() const {
        for (int e : prefix) if (e == 0) return true;
        for (int e : period.entries) if (e == 0) return true;
        return false;
    }
};

struct SignatureVerdict {
    bool valid = false;
    std::optional<std::uint64_t> failure_index; // first j with partial sum <= j+1
};

/// Strict partial-sum test: valid iff for every j, s_0 + ... + s_j > j+1.
/// The prefix plus two periods are scanned exhaustively; a period that
/// gains p-q > 0 (or holds steady at p = q with positive excess) settles
/// the tail. For p < q the scan continues to the guaranteed failure.
inline SignatureVerdict validate(Signature const& sig) {
    std::size_t m = sig.prefix.size();
    std::size_t q = sig.period.entries.size();
    if (q == 0 && m == 0) return {false, 0};

    long long sum = 0;
    std::uint64_t scan = m + 2 * q;
    if (q == 0) scan = m;
    std::uint64_t j = 0;
    for (; j < scan; ++j) {
        sum += sig.entry(j);
        if (sum <= (long long)j + 1) return {false, j};
    }
    if (q == 0) return {true, std::nullopt}; // finite signature, prefix-only counting
    long p = sig.period.p();
    if (p >= (long)q) return {true, std::nullopt};
    // p < q: excess shrinks every period and must cross zero
    while (true) {
        sum += sig.entry(j);
        if (sum <= (long long)j + 1) return {false, j};
        ++j;
    }
}

/// Per-level and cumulative word counts.
struct LevelCounter {
    std::vector<BigInt> u; // u[l] = words of length l
    std::vector<BigInt> v; // v[l] = words of length <= l
};

namespace detail {

/// Sum of the first T signature entries, T arbitrary precision.
inline BigInt signature_prefix_sum(Signature const& sig, BigInt const& T) {
    std::size_t m = sig.prefix.size();
    std::size_t q = sig.period.entries.size();
    BigInt total = 0;
    if (T <= (long)m) {
        long t = T.get_si();
        for (long i = 0; i < t; ++i) total += sig.prefix[i];
        return total;
    }
    for (std::size_t i = 0; i < m; ++i) total += sig.prefix[i];
    if (q == 0)
        throw std::out_of_range("signature exhausted: need entries beyond prefix");
    BigInt rest = T - (long)m;
    BigInt full = rest / (unsigned long)q;
    unsigned long rem = BigInt(rest % (unsigned long)q).get_ui();
    total += full * sig.period.p();
    for (unsigned long i = 0; i < rem; ++i) total += sig.period.entries[i];
    return total;
}

} // namespace detail

/// Exact u/v tables for levels 0..lmax. Level l+1 sums the real degrees
/// of the level-l nodes, which occupy breadth-first indices [v(l-1), v(l)).
inline LevelCounter level_counts(Signature const& sig, int lmax) {
    LevelCounter lc;
    lc.u.assign(lmax + 1, 0);
    lc.v.assign(lmax + 1, 0);
    lc.u[0] = 1;
    lc.v[0] = 1;
    for (int l = 0; l < lmax; ++l) {
        BigInt lo = (l == 0) ? BigInt(0) : lc.v[l - 1];
        BigInt hi = lc.v[l];
        BigInt deg_sum = detail::signature_prefix_sum(sig, hi) -
                         detail::signature_prefix_sum(sig, lo);
        if (l == 0) deg_sum -= 1; // root self-loop is not a child
        lc.u[l + 1] = deg_sum;
        lc.v[l + 1] = lc.v[l] + lc.u[l + 1];
    }
    return lc;
}

/// Closed-form amortized carry propagation p/(p-q) for an eventually
/// periodic signature with directing parameter (q, p), p > q.
inline BigRat theoretical_cp(Signature const& sig) {
    auto verdict = validate(sig);
    if (!verdict.valid) throw std::invalid_argument("invalid signature");
    long p = sig.period.p();
    long q = sig.period.q();
    if (q == 0 || p <= q)
        throw std::domain_error("no closed form: period must gain p > q");
    return BigRat(p, p - q);
}

namespace detail {

/// Streams cp over the first N words of the tree described by a
/// real-child-degree functor (node index, level, position in level).
/// Carries, per node, the length k of its trailing chain of last-child
/// ancestors; a node's j-th child gets k' = (j last ? k+1 : 0) and the
/// word at that child has cp = k'+1. The root's loop ranks below every
/// real child, so the chain rule needs no other special case and the
/// level-maximal word comes out at cp = l+1.
template <class DegreeFn, class Emit>
void stream_tree_cp(DegreeFn&& real_degree, std::uint64_t N, Emit&& emit) {
    if (N == 0) return;
    emit(std::uint64_t{0}, std::uint64_t{1}, 0); // epsilon
    std::uint64_t emitted = 1;
    if (emitted >= N) return;

    std::deque<std::uint32_t> chain; // pending nodes, BF order
    chain.push_back(0);              // root
    std::uint64_t node = 0;          // BF index of next node to expand
    int level = 0;                   // its level
    std::uint64_t level_left = 1;    // nodes of this level still queued
    std::uint64_t next_level = 0;    // nodes accumulated for level+1
    std::uint64_t pos_in_level = 0;

    while (emitted < N) {
        if (chain.empty())
            throw std::runtime_error("tree exhausted before N words");
        std::uint32_t k = chain.front();
        chain.pop_front();
        int d = real_degree(node, level, pos_in_level);
        for (int j = 0; j < d && emitted < N; ++j) {
            std::uint32_t kc = (j == d - 1) ? k + 1 : 0;
            emit(emitted, std::uint64_t{kc} + 1, level + 1);
            ++emitted;
            chain.push_back(kc);
        }
        if (emitted >= N) return;
        ++node;
        ++pos_in_level;
        next_level += d;
        if (--level_left == 0) {
            ++level;
            level_left = next_level;
            next_level = 0;
            pos_in_level = 0;
        }
    }
}

} // namespace detail

/// Streams (index, cp, level) for the first N words of the signature's
/// tree in breadth-first (= radix) order.
template <class Emit>
void enumerate_with_cp(Signature const& sig, std::uint64_t N, Emit&& emit) {
    auto verdict = validate(sig);
    if (!verdict.valid) throw std::invalid_argument("invalid signature");
    if (sig.has_zero_entry())
        throw std::invalid_argument("signature has a leaf entry: not extendable");
    detail::stream_tree_cp(
        [&sig](std::uint64_t j, int, std::uint64_t) {
            int d = sig.entry(j);
            return j == 0 ? d - 1 : d;
        },
        N, emit);
}

/// Purely periodic signature of the base-p/q representation tree:
/// the node for integer i has one child per digit a in 0..p-1 with
/// a ≡ -p·i (mod q), so the rhythm entry r_i counts those digits.
inline Signature rational_base_signature(long p, long q) {
    if (q < 1 || p <= q) throw std::invalid_argument("need p > q >= 1");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
    Rhythm r;
    r.entries.resize(q, 0);
    for (long i = 0; i < q; ++i) {
        long target = ((-(p % q) * i) % q + q) % q;
        for (long a = 0; a < p; ++a)
            if (a % q == target) r.entries[i]++;
    }
    return Signature{{}, std::move(r)};
}

/// The unbalanced language H: two root branches; on each later level the
/// first half of the nodes get three children and the second half one.
/// Degree lists are in the same convention as Signature entries (root
/// includes its loop), so level 0 reads (3) and level 2 reads (3,3,1,1).
inline std::vector<std::vector<int>> h_language_signature(int lmax) {
    if (lmax < 1) throw std::invalid_argument("lmax must be >= 1");
    std::vector<std::vector<int>> levels;
    levels.push_back({3}); // loop + two children
    for (int l = 1; l <= lmax; ++l) {
        std::uint64_t n = std::uint64_t{1} << l; // u_H(l) = 2^l
        std::vector<int> degs(n, 1);
        for (std::uint64_t t = 0; t < n / 2; ++t) degs[t] = 3;
        levels.push_back(std::move(degs));
    }
    return levels;
}

/// Streaming cp enumeration of H.
template <class Emit>
void enumerate_h_with_cp(std::uint64_t N, Emit&& emit) {
    detail::stream_tree_cp(
        [](std::uint64_t, int level, std::uint64_t pos) {
            if (level == 0) return 2;
            return pos < (std::uint64_t{1} << (level - 1)) ? 3 : 1;
        },
        N, emit);
}

/// Exact H level counts: u = 2^l, v = 2^{l+1}-1.
inline LevelCounter h_level_counts(int lmax) {
    LevelCounter lc;
    lc.u.resize(lmax + 1);
    lc.v.resize(lmax + 1);
    for (int l = 0; l <= lmax; ++l) {
        lc.u[l] = big_pow(2, l);
        lc.v[l] = big_pow(2, l + 1) - 1;
    }
    return lc;
}

/// Signature file format: `prefix: a b c` and `period: x y z`.
inline Signature parse_signature(std::istream& in) {
    Signature sig;
    bool saw_period = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::vector<int> vals;
        int x;
        while (ls >> x) vals.push_back(x);
        if (key == "prefix:") sig.prefix = vals;
        else if (key == "period:") { sig.period.entries = vals; saw_period = true; }
        else throw std::invalid_argument("signature file line " + std::to_string(lineno) +
                                         ": expected 'prefix:' or 'period:'");
    }
    if (!saw_period || sig.period.entries.empty())
        throw std::invalid_argument("signature file: missing or empty 'period:' line");
    return sig;
}

inline std::string serialize_signature(Signature const& sig) {
    std::string out = "prefix:";
    for (int e : sig.prefix) out += " " + std::to_string(e);
    out += "\nperiod:";
    for (int e : sig.period.entries) out += " " + std::to_string(e);
    out += "\n";
    return out;
}

} // namespace carry
