#pragma once

/**
 * @file recurrence.hpp
 * @brief Minimal linear recurrences for level-count sequences, found by
 *        Berlekamp-Massey over exact rationals and re-verified against a
 *        longer prefix than the fit used.
 */

#include <span>
#include <stdexcept>
#include <vector>

#include "counting.hpp"
#include "numeric.hpp"

namespace carry {

/// Minimal monic annihilator of the given sequence prefix, ascending
/// coefficients: sum_k poly[k] * s(n+k) = 0 for all windows that fit.
inline std::vector<BigRat> berlekamp_massey(std::span<BigRat const> s) {
    std::vector<BigRat> cur{BigRat(1)}, prev{BigRat(1)};
    int L = 0, m = 1;
    BigRat b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        BigRat d = s[n];
        for (int i = 1; i <= L && (std::size_t)i <= n; ++i)
            if ((std::size_t)i < cur.size()) d += cur[i] * s[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        BigRat ratio = d / b;
        if (2 * L <= (int)n) {
            std::vector<BigRat> tmp = cur;
            if (cur.size() < prev.size() + m) cur.resize(prev.size() + m);
            for (std::size_t i = 0; i < prev.size(); ++i)
                cur[i + m] -= ratio * prev[i];
            L = (int)n + 1 - L;
            prev = std::move(tmp);
            b = d;
            m = 1;
        } else {
            if (cur.size() < prev.size() + m) cur.resize(prev.size() + m);
            for (std::size_t i = 0; i < prev.size(); ++i)
                cur[i + m] -= ratio * prev[i];
            ++m;
        }
    }
    // cur(x) = 1 + c_1 x + ... with s(n) = -sum c_i s(n-i); the monic
    // annihilator is the reversal of cur padded to degree L.
    cur.resize(L + 1);
    std::vector<BigRat> poly(L + 1);
    for (int k = 0; k <= L; ++k) poly[k] = cur[L - k];
    return poly;
}

/// True when sum_k poly[k] * s(n+k) vanishes for every full window.
inline bool annihilates(std::span<BigRat const> poly, std::span<BigRat const> s) {
    if (poly.empty()) return false;
    std::size_t d = poly.size() - 1;
    if (s.size() < poly.size()) return true;
    for (std::size_t n = 0; n + d < s.size(); ++n) {
        BigRat acc = 0;
        for (std::size_t k = 0; k <= d; ++k) acc += poly[k] * s[n + k];
        if (acc != 0) return false;
    }
    return true;
}

/// Minimal recurrence of a level-count sequence: monic annihilator
/// (ascending coefficients) plus the initial terms that seed it.
struct LinearRecurrence {
    std::vector<BigRat> poly;
    std::vector<BigInt> initial;

    int order() const { return (int)poly.size() - 1; }
};

/// Fits the minimal recurrence of u(l) (exact-length counts from the
/// initial state). The fit uses 2*states+1 terms, more than twice any
/// possible order; annihilation is then re-checked 20 terms past that.
inline LinearRecurrence minimal_recurrence(CountTable& ct) {
    int n_states = ct.dfa().state_count();
    int fit_len = 2 * n_states + 1;
    int check_len = fit_len + 20;
    std::vector<BigRat> seq;
    seq.reserve(check_len);
    for (int l = 0; l < check_len; ++l) seq.emplace_back(ct.u(l));

    auto poly = berlekamp_massey(std::span<BigRat const>(seq.data(), fit_len));
    if (!annihilates(poly, seq))
        throw std::logic_error("recurrence fit failed verification on extended prefix");

    LinearRecurrence rec;
    rec.poly = std::move(poly);
    for (int l = 0; l < rec.order(); ++l) rec.initial.push_back(ct.u(l));
    return rec;
}

} // namespace carry
