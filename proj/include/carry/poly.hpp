#pragma once

/**
 * @file poly.hpp
 * @brief Dense polynomials over exact rationals: arithmetic, gcd, Yun
 *        square-free factorization, and Sturm-chain real root counting.
 *
 * Coefficients are stored ascending; the zero polynomial is the empty
 * vector and every nonzero polynomial keeps a nonzero leading entry.
 */

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace carry {

using Poly = std::vector<BigRat>;

inline void poly_normalize(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_degree(Poly const& p) { return (int)p.size() - 1; }
inline bool poly_is_zero(Poly const& p) { return p.empty(); }

inline Poly poly_add(Poly const& a, Poly const& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_normalize(r);
    return r;
}

inline Poly poly_sub(Poly const& a, Poly const& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_normalize(r);
    return r;
}

inline Poly poly_mul(Poly const& a, Poly const& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_normalize(r);
    return r;
}

inline Poly poly_scale(Poly p, BigRat const& c) {
    for (auto& x : p) x *= c;
    poly_normalize(p);
    return p;
}

/// Quotient and remainder of a by b over the rationals.
inline std::pair<Poly, Poly> poly_divmod(Poly const& a, Poly const& b) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    Poly rem = a, quot;
    int db = poly_degree(b);
    if (poly_degree(a) >= db) quot.assign(a.size() - b.size() + 1, BigRat(0));
    BigRat lead = b.back();
    while (poly_degree(rem) >= db) {
        int shift = poly_degree(rem) - db;
        BigRat c = rem.back() / lead;
        quot[shift] = c;
        for (int i = 0; i <= db; ++i) rem[shift + i] -= c * b[i];
        poly_normalize(rem);
    }
    return {std::move(quot), std::move(rem)};
}

inline Poly poly_div_exact(Poly const& a, Poly const& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.empty()) throw std::logic_error("inexact polynomial division");
    return q;
}

inline Poly poly_derivative(Poly const& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * BigRat((long)i);
    return d;
}

inline Poly poly_monic(Poly p) {
    if (p.empty()) return p;
    BigRat lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

/// Monic gcd by the Euclidean algorithm.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.empty()) {
        auto [q, r] = poly_divmod(a, b);
        a = std::move(b);
        b = poly_monic(std::move(r));
    }
    return poly_monic(std::move(a));
}

inline BigRat poly_eval(Poly const& p, BigRat const& x) {
    BigRat acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Square-free part: p with all multiplicities collapsed to one.
inline Poly square_free_part(Poly const& p) {
    if (poly_degree(p) <= 0) return poly_monic(p);
    Poly g = poly_gcd(p, poly_derivative(p));
    if (poly_degree(g) == 0) return poly_monic(p);
    return poly_monic(poly_div_exact(p, g));
}

/// One square-free factor and the multiplicity it carries in the input.
struct SquareFreeFactor {
    Poly factor;
    int multiplicity;
};

/// Yun's algorithm: p = c * prod factor^multiplicity with the factors
/// pairwise coprime and square-free. Constant factors are dropped.
inline std::vector<SquareFreeFactor> yun_square_free(Poly const& p) {
    std::vector<SquareFreeFactor> out;
    if (poly_degree(p) <= 0) return out;
    Poly f = poly_monic(p);
    Poly fp = poly_derivative(f);
    Poly g = poly_gcd(f, fp);
    if (poly_degree(g) == 0) {
        out.push_back({f, 1});
        return out;
    }
    Poly w = poly_div_exact(f, g);
    Poly y = poly_div_exact(fp, g);
    Poly z = poly_sub(y, poly_derivative(w));
    int i = 1;
    while (poly_degree(w) > 0) {
        Poly a = poly_gcd(w, z);
        if (poly_degree(a) > 0) out.push_back({a, i});
        w = poly_div_exact(w, a);
        y = poly_div_exact(z, a);
        z = poly_sub(y, poly_derivative(w));
        ++i;
    }
    return out;
}

/// Sturm chain of p (first entry p itself, then p', then negated
/// remainders until constant).
inline std::vector<Poly> sturm_chain(Poly const& p) {
    std::vector<Poly> chain;
    chain.push_back(poly_monic(p));
    Poly d = poly_derivative(chain[0]);
    poly_normalize(d);
    if (!d.empty()) chain.push_back(poly_monic(d));
    while (chain.size() >= 2 && !chain.back().empty() && poly_degree(chain.back()) > 0) {
        auto [q, r] = poly_divmod(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(poly_monic(std::move(r)));
    }
    return chain;
}

inline int detail_sign(BigRat const& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Sign variations of the chain at x, zeros skipped.
inline int sign_variations(std::vector<Poly> const& chain, BigRat const& x) {
    int vars = 0, last = 0;
    for (auto const& p : chain) {
        int s = detail_sign(poly_eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++vars;
        last = s;
    }
    return vars;
}

/// Number of distinct real roots of p in (lo, hi]. Exact; p need not be
/// square-free (the chain is built from its square-free part).
inline int count_real_roots(Poly const& p, BigRat const& lo, BigRat const& hi) {
    if (lo >= hi) throw std::invalid_argument("empty interval for root counting");
    Poly sf = square_free_part(p);
    if (poly_degree(sf) <= 0) return 0;
    auto chain = sturm_chain(sf);
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

/// Clears denominators and the content: primitive integer coefficients
/// with positive leading entry, same roots as the input.
inline std::vector<BigInt> primitive_integer_coeffs(Poly const& p) {
    if (p.empty()) return {};
    BigInt den = 1;
    for (auto const& c : p) {
        BigInt d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<BigInt> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        BigRat scaled = p[i] * BigRat(den);
        out[i] = scaled.get_num();
    }
    BigInt content = 0;
    for (auto const& c : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content > 1)
        for (auto& c : out) c /= content;
    if (out.back() < 0)
        for (auto& c : out) c = -c;
    return out;
}

} // namespace carry
