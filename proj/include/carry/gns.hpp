#pragma once

/**
 * @file gns.hpp
 * @brief Greedy numeration over a strictly increasing basis starting at
 *        1: representations, validity, maximal words, the carry of one
 *        increment, and a linear-time carry stream.
 *
 * A digit word x_(L-1) ... x_0 (most significant first) is valid when
 * every cut satisfies sum_(t<=i) x_t G_t < G_(i+1). The carry at n is
 * 1 + m(n) where m(n) is the largest k such that the last k digits of
 * repr(n) equal the maximal word of length k. Incrementing rewrites
 * exactly that suffix, which the stream exploits: bump the digit left
 * of the matched suffix, clear the suffix, no big-integer work.
 */

#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"
#include "words.hpp"

namespace carry {

/// Basis terms, extendable on demand. Explicit bases throw when
/// exhausted; generated bases grow as far as asked.
class Basis {
public:
    using Extender = std::function<BigInt(std::deque<BigInt> const&)>;

    static Basis explicit_terms(std::vector<BigInt> terms) {
        Basis b;
        b.terms_.assign(std::make_move_iterator(terms.begin()),
                        std::make_move_iterator(terms.end()));
        b.validate_all();
        return b;
    }

    /// G(n) = sum coeffs[i] * G(n-1-i), seeded by the initial terms.
    static Basis from_recurrence(std::vector<BigInt> coeffs, std::vector<BigInt> initial) {
        if (coeffs.empty() || initial.empty())
            throw std::invalid_argument("empty recurrence");
        if (initial.size() < coeffs.size())
            throw std::invalid_argument("recurrence needs as many seeds as coefficients");
        Basis b;
        b.terms_.assign(std::make_move_iterator(initial.begin()),
                        std::make_move_iterator(initial.end()));
        b.extend_ = [coeffs](std::deque<BigInt> const& g) {
            BigInt next = 0;
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                next += coeffs[i] * g[g.size() - 1 - i];
            return next;
        };
        b.validate_all();
        return b;
    }

    /// G(n) = d_1 G(n-1) + ... + d_n G(0) + 1 for an eventually periodic
    /// digit stream d (the shape a number base beta induces).
    static Basis from_digit_stream(std::vector<int> prefix, std::vector<int> period) {
        Basis b;
        b.terms_ = {BigInt(1)};
        auto digit = [prefix, period](std::size_t i) -> long { // 1-indexed
            if (i <= prefix.size()) return prefix[i - 1];
            if (period.empty())
                throw std::out_of_range("digit stream exhausted");
            return period[(i - prefix.size() - 1) % period.size()];
        };
        b.extend_ = [digit](std::deque<BigInt> const& g) {
            BigInt next = 1;
            std::size_t n = g.size();
            for (std::size_t i = 1; i <= n; ++i) next += digit(i) * g[n - i];
            return next;
        };
        b.validate_all();
        return b;
    }

    /// References stay valid across later calls: the store only ever
    /// grows at the back and never relocates settled terms.
    BigInt const& G(std::size_t l) const {
        while (l >= terms_.size()) {
            if (!extend_)
                throw std::out_of_range("explicit basis exhausted; provide more terms");
            BigInt next = extend_(terms_);
            if (next <= terms_.back())
                throw std::invalid_argument("basis terms must increase strictly");
            terms_.push_back(std::move(next));
        }
        return terms_[l];
    }

    std::size_t known() const { return terms_.size(); }
    bool extendable() const { return (bool)extend_; }

private:
    void validate_all() const {
        if (terms_.empty() || terms_[0] != 1)
            throw std::invalid_argument("basis must start at 1");
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (terms_[i] <= terms_[i - 1])
                throw std::invalid_argument("basis terms must increase strictly");
    }

    mutable std::deque<BigInt> terms_;
    Extender extend_;
};

/// Greedy digits of n, most significant first.
inline Word greedy_repr(Basis const& b, BigInt n) {
    if (n < 0) throw std::invalid_argument("negative value");
    if (n == 0) return Word{};
    std::size_t l = 0;
    while (b.G(l + 1) <= n) ++l; // throws if an explicit basis runs out
    std::vector<int> digits(l + 1);
    for (std::size_t j = l + 1; j-- > 0;) {
        BigInt q = n / b.G(j);
        if (!q.fits_sint_p()) throw std::overflow_error("digit too large");
        digits[l - j] = (int)q.get_si();
        n -= q * b.G(j);
    }
    return Word(std::move(digits));
}

/// Value of a digit word, no validity requirement.
inline BigInt greedy_val(Basis const& b, Word const& w) {
    BigInt acc = 0;
    std::size_t L = w.length();
    for (std::size_t j = 0; j < L; ++j) {
        if (w[j] < 0) throw std::invalid_argument("negative digit");
        acc += BigInt(w[j]) * b.G(L - 1 - j);
    }
    return acc;
}

/// True when w is the greedy representation of its value: every
/// trailing cut stays below the next basis term.
inline bool gns_membership(Basis const& b, Word const& w) {
    if (!w.empty() && w[0] == 0) return false;
    BigInt tail = 0;
    std::size_t L = w.length();
    for (std::size_t i = 0; i < L; ++i) { // i indexes G_i, digit from the right
        int d = w[L - 1 - i];
        if (d < 0) return false;
        tail += BigInt(d) * b.G(i);
        if (tail >= b.G(i + 1)) return false;
    }
    return true;
}

/// Maximal word of length l: the representation of G(l) - 1.
inline Word g_max(Basis const& b, std::size_t l) {
    Word w = greedy_repr(b, b.G(l) - 1);
    if (w.length() != l)
        throw std::logic_error("maximal word has unexpected length");
    return w;
}

namespace detail {

/// Largest k <= |w| whose trailing k digits equal the maximal word of
/// length k. Not monotone in k, so scan downward.
inline std::size_t max_suffix_index(std::vector<Word> const& gmax, std::vector<int> const& w) {
    std::size_t L = w.size();
    for (std::size_t k = L; k >= 1; --k) {
        Word const& g = gmax[k];
        bool match = true;
        for (std::size_t t = 0; t < k; ++t) {
            if (w[L - 1 - t] != g[k - 1 - t]) { match = false; break; }
        }
        if (match) return k;
    }
    return 0;
}

inline void ensure_gmax(Basis const& b, std::vector<Word>& gmax, std::size_t upto) {
    while (gmax.size() <= upto) gmax.push_back(g_max(b, gmax.size()));
}

} // namespace detail

/// Carry of one increment at n: 1 + (longest maximal suffix of repr(n)).
inline std::uint64_t greedy_cp(Basis const& b, BigInt const& n) {
    Word w = greedy_repr(b, n);
    std::vector<Word> gmax;
    detail::ensure_gmax(b, gmax, w.length());
    return 1 + (std::uint64_t)detail::max_suffix_index(gmax, w.digits);
}

/// Streams cp(i) for i < N by rolling the representation in place.
template <class Emit>
void gns_cp_stream(Basis const& b, std::uint64_t N, Emit&& emit) {
    std::vector<int> w; // digits, most significant first
    std::vector<Word> gmax;
    detail::ensure_gmax(b, gmax, 1);
    for (std::uint64_t i = 0; i < N; ++i) {
        std::size_t m = detail::max_suffix_index(gmax, w);
        emit(i, (std::uint64_t)(m + 1));
        if (m == w.size()) {
            w.assign(w.size() + 1, 0);
            w[0] = 1;
            detail::ensure_gmax(b, gmax, w.size() + 1);
        } else {
            w[w.size() - 1 - m] += 1;
            for (std::size_t t = 0; t < m; ++t) w[w.size() - 1 - t] = 0;
        }
    }
}

/// Longest proper suffix of each maximal word that is again a maximal
/// word: out[k] = that word's length, for 1 <= k <= kmax.
inline std::vector<std::size_t> j_table(Basis const& b, std::size_t kmax) {
    std::vector<Word> gmax;
    detail::ensure_gmax(b, gmax, kmax);
    std::vector<std::size_t> out(kmax + 1, 0);
    for (std::size_t k = 1; k <= kmax; ++k) {
        for (std::size_t j = k; j-- > 1;) {
            if (is_suffix(gmax[j], gmax[k])) { out[k] = j; break; }
        }
    }
    return out;
}

/// Prefix-closure and right-extendability scan over the first budget
/// representations, with the cheap necessary condition (non-increasing
/// term ratios) reported alongside.
struct GnsPceReport {
    bool ok = true;
    std::optional<Word> counterexample;       // an invalid prefix or extension
    std::string kind;                         // "prefix" or "extension"
    bool ratio_condition_holds = true;        // floor(G(l+1)/G(l)) non-increasing
};

inline GnsPceReport check_pce_gns(Basis const& b, std::uint64_t budget) {
    GnsPceReport rep;
    BigInt n_cap((unsigned long)budget);
    if (!b.extendable()) {
        // an explicit basis only covers values below its last term
        BigInt last_reachable = b.G(b.known() - 1) - 1;
        if (n_cap > last_reachable) n_cap = last_reachable;
    }
    std::size_t lmax = 0;
    while ((b.extendable() || lmax + 2 < b.known()) && b.G(lmax + 1) <= n_cap) ++lmax;
    BigInt prev_ratio = -1;
    for (std::size_t l = 0; l <= lmax; ++l) {
        BigInt ratio = b.G(l + 1) / b.G(l);
        if (prev_ratio >= 0 && ratio > prev_ratio) rep.ratio_condition_holds = false;
        prev_ratio = ratio;
    }
    for (BigInt n = 1; n <= n_cap; ++n) {
        Word w = greedy_repr(b, n);
        for (std::size_t cut = 1; cut < w.length(); ++cut) {
            Word prefix(std::vector<int>(w.digits.begin(), w.digits.begin() + cut));
            if (!gns_membership(b, prefix)) {
                rep.ok = false;
                rep.counterexample = prefix;
                rep.kind = "prefix";
                return rep;
            }
        }
        // the extension check needs one basis term past the word
        if (b.extendable() || w.length() + 1 < b.known()) {
            Word extended = w;
            extended.digits.push_back(0);
            if (!gns_membership(b, extended)) {
                rep.ok = false;
                rep.counterexample = extended;
                rep.kind = "extension";
                return rep;
            }
        }
    }
    return rep;
}

/// One integer per line, '#' starts a comment.
inline Basis parse_basis(std::istream& in) {
    std::vector<BigInt> terms;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t z = line.find_last_not_of(" \t\r");
        terms.emplace_back(line.substr(a, z - a + 1));
    }
    return Basis::explicit_terms(std::move(terms));
}

} // namespace carry
