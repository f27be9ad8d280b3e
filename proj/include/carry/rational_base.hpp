#pragma once

/**
 * @file rational_base.hpp
 * @brief Representations in base p/q: digit computation, value, the
 *        successor, and a carry stream driven by digit arithmetic alone
 *        so it can cross-check the signature-derived stream.
 *
 * Digits live in [0, p-1]; appending digit a to a word of value N is
 * legal when p*N + a is divisible by q, and the new value is
 * (p*N + a)/q. With q = 1 this is the ordinary integer base p.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "numeric.hpp"
#include "words.hpp"

namespace carry {

struct RationalBase {
    long p, q;

    RationalBase(long p_, long q_) : p(p_), q(q_) {
        if (q < 1 || p <= q) throw std::invalid_argument("need p > q >= 1");
        if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
    }

    Alphabet alphabet() const { return Alphabet((int)p); }
};

/// Most-significant-first digits of N.
inline Word rb_repr(RationalBase const& rb, BigInt N) {
    if (N < 0) throw std::invalid_argument("negative value");
    std::vector<int> digits;
    while (N > 0) {
        BigInt t = N * rb.q;
        BigInt rem;
        mpz_fdiv_qr_ui(N.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), (unsigned long)rb.p);
        digits.push_back((int)rem.get_ui());
    }
    return Word(std::vector<int>(digits.rbegin(), digits.rend()));
}

/// Value of an arbitrary digit word; integral exactly for words of the
/// representation tree.
inline BigRat rb_val_exact(RationalBase const& rb, Word const& w) {
    BigRat acc = 0;
    for (int d : w.digits) {
        if (d < 0 || d >= rb.p) throw std::invalid_argument("digit out of range");
        acc = (acc * rb.p + d) / rb.q;
    }
    return acc;
}

/// Value of a representation; throws when the word is not one.
inline BigInt rb_val(RationalBase const& rb, Word const& w) {
    if (!w.empty() && w[0] == 0) throw std::invalid_argument("leading zero");
    BigRat v = rb_val_exact(rb, w);
    if (v.get_den() != 1) throw std::invalid_argument("word is not a representation");
    return v.get_num();
}

inline Word rb_succ(RationalBase const& rb, Word const& w) {
    return rb_repr(rb, rb_val(rb, w) + 1);
}

/// Carries cp(i) for i < N from consecutive representations. Pure
/// digit arithmetic over machine words; independent of any signature.
template <class Emit>
void rb_cp_stream(RationalBase const& rb, std::uint64_t N, Emit&& emit) {
    auto repr_u64 = [&rb](std::uint64_t n, std::vector<int>& out) {
        out.clear();
        while (n > 0) {
            std::uint64_t t = n * (std::uint64_t)rb.q;
            out.push_back((int)(t % (std::uint64_t)rb.p));
            n = t / (std::uint64_t)rb.p;
        }
    };
    if (N > (std::uint64_t)1 << 56)
        throw std::invalid_argument("stream length too large for the fast path");
    std::vector<int> cur, next; // least significant first
    repr_u64(0, cur);
    for (std::uint64_t i = 0; i < N; ++i) {
        repr_u64(i + 1, next);
        std::uint64_t cp;
        if (next.size() != cur.size()) {
            cp = std::max(next.size(), cur.size());
        } else {
            // digits are stored least significant first; the common
            // prefix of the words is the common tail of the vectors
            std::size_t hi = cur.size();
            while (hi > 0 && cur[hi - 1] == next[hi - 1]) --hi;
            cp = hi;
        }
        emit(i, cp);
        std::swap(cur, next);
    }
}

} // namespace carry
