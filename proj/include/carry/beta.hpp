#pragma once

/**
 * @file beta.hpp
 * @brief Expansions in a real base beta > 1, run exactly over Q(beta):
 *        the greedy expansion of 1, its classification (terminating,
 *        eventually periodic, or undecided within a step bound), the
 *        quasi-greedy digit stream, the induced basis, and membership
 *        of digit words.
 *
 * The greedy remainders are field elements, so termination and
 * repetition are decided by exact tests, not by floating point.
 * Repetition detection compares canonical representatives; for an
 * irreducible defining polynomial that equality is exact.
 */

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebraic.hpp"
#include "gns.hpp"
#include "numeric.hpp"
#include "poly.hpp"
#include "words.hpp"

namespace carry {

enum class ParryClass { simple, nonsimple, unknown };

struct BetaProfile {
    AlgebraicReal beta;
    std::vector<int> bge;           // greedy digits of 1 so far
    ParryClass kind = ParryClass::unknown;
    std::size_t preperiod = 0;      // nonsimple: bge repeats after this many digits
    std::size_t period = 0;
    std::vector<int> dstar_prefix;  // quasi-greedy digits: prefix then period
    std::vector<int> dstar_period;
    std::string warning;

    /// i-th quasi-greedy digit, 1-indexed.
    int dstar(std::size_t i) const {
        if (i == 0) throw std::invalid_argument("digits are 1-indexed");
        if (i <= dstar_prefix.size()) return dstar_prefix[i - 1];
        if (dstar_period.empty())
            throw std::runtime_error(
                "digit stream undetermined past the expansion bound: " + warning);
        return dstar_period[(i - dstar_prefix.size() - 1) % dstar_period.size()];
    }
};

namespace detail {

inline std::string rep_key(Poly const& p) {
    std::ostringstream os;
    for (auto const& c : p) os << rational_string(c) << ';';
    return os.str();
}

} // namespace detail

/// Greedy expansion of 1: digits x_i = floor(beta * r_(i-1)),
/// r_i = beta * r_(i-1) - x_i, starting from r_0 = 1. Stops on r = 0
/// (terminating), on a repeated remainder (eventually periodic), or at
/// the step cap (undecided, reported with a warning).
inline BetaProfile beta_expand_one(AlgebraicReal const& beta, std::size_t cap = 10000) {
    BetaProfile prof{beta};
    auto field = beta.field();
    NumberFieldElement b = beta.value();
    BigInt fl = b.floor();
    if (fl < 1 || (fl == 1 && (b - BigRat(1)).is_zero()))
        throw std::invalid_argument("base must exceed 1");

    NumberFieldElement r = NumberFieldElement::from_rational(field, BigRat(1));
    std::map<std::string, std::size_t> seen;
    seen[detail::rep_key(r.rep())] = 0;
    for (std::size_t i = 1; i <= cap; ++i) {
        NumberFieldElement t = b * r;
        BigInt x = t.floor();
        if (!x.fits_sint_p()) throw std::overflow_error("digit too large");
        prof.bge.push_back((int)x.get_si());
        r = t - BigRat(x);
        if (r.is_zero()) {
            prof.kind = ParryClass::simple;
            return prof;
        }
        std::string key = detail::rep_key(r.rep());
        auto it = seen.find(key);
        if (it != seen.end()) {
            prof.kind = ParryClass::nonsimple;
            prof.preperiod = it->second;
            prof.period = i - it->second;
            return prof;
        }
        seen.emplace(std::move(key), i);
    }
    prof.kind = ParryClass::unknown;
    prof.warning = "no termination or repetition within " + std::to_string(cap) + " steps";
    return prof;
}

/// Fills the quasi-greedy digit stream d*: for a terminating expansion
/// t_1..t_m it is the purely periodic (t_1 .. t_(m-1) (t_m - 1))^inf;
/// otherwise it coincides with the greedy expansion itself.
inline BetaProfile quasi_greedy(BetaProfile prof) {
    switch (prof.kind) {
    case ParryClass::simple: {
        std::vector<int> per(prof.bge.begin(), prof.bge.end());
        per.back() -= 1;
        prof.dstar_prefix.clear();
        prof.dstar_period = std::move(per);
        break;
    }
    case ParryClass::nonsimple: {
        prof.dstar_prefix.assign(prof.bge.begin(), prof.bge.begin() + prof.preperiod);
        prof.dstar_period.assign(prof.bge.begin() + prof.preperiod, prof.bge.end());
        break;
    }
    case ParryClass::unknown:
        prof.dstar_prefix = prof.bge;
        prof.dstar_period.clear();
        break;
    }
    return prof;
}

/// Basis induced by the base: G(0) = 1 and
/// G(l) = d_1 G(l-1) + ... + d_l G(0) + 1 over the quasi-greedy digits.
inline Basis basis_from_beta(BetaProfile const& prof) {
    return Basis::from_digit_stream(prof.dstar_prefix, prof.dstar_period);
}

/// Membership of a digit word: no leading zero, and every suffix is
/// lexicographically at most the quasi-greedy prefix of its length.
inline bool beta_membership(BetaProfile const& prof, Word const& w) {
    if (w.empty()) return true;
    if (w[0] == 0) return false;
    std::size_t L = w.length();
    for (std::size_t start = 0; start < L; ++start) {
        for (std::size_t t = 0; start + t < L; ++t) {
            int d = prof.dstar(t + 1);
            if (w[start + t] < d) break;
            if (w[start + t] > d) return false;
        }
    }
    return true;
}

/// Ratio G(l) / beta^l, a bounded quantity whose plateau the reports
/// surface as an empirical constant.
inline double beta_kappa(BetaProfile const& prof, Basis const& basis, std::size_t l) {
    double bd = prof.beta.to_double();
    double g = basis.G(l).get_d();
    double denom = std::pow(bd, (double)l);
    return g / denom;
}

/// "c_d ... c_1 c_0" descending to ascending integer coefficients.
inline std::vector<BigInt> parse_poly_line(std::string const& text) {
    std::istringstream is(text);
    std::vector<BigInt> desc;
    std::string tok;
    while (is >> tok) desc.emplace_back(tok);
    if (desc.size() < 2) throw std::invalid_argument("polynomial needs degree at least 1");
    return std::vector<BigInt>(desc.rbegin(), desc.rend());
}

inline BigRat parse_rational(std::string const& tok) {
    BigRat r;
    if (mpq_set_str(r.get_mpq_t(), tok.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational: " + tok);
    r.canonicalize();
    return r;
}

/// Isolates the unique root above 1 when no interval is given.
inline AlgebraicReal make_beta(std::vector<BigInt> const& ascending,
                               std::optional<std::pair<BigRat, BigRat>> interval = std::nullopt) {
    if (interval) return AlgebraicReal(ascending, interval->first, interval->second);
    Poly p;
    for (auto const& c : ascending) p.emplace_back(BigRat(c));
    poly_normalize(p);
    if (poly_degree(p) < 1) throw std::invalid_argument("polynomial must be nonconstant");
    Poly sf = square_free_part(p);
    BigRat bound = 0;
    for (int i = 0; i < poly_degree(sf); ++i) {
        BigRat t = abs(sf[i] / sf.back());
        if (t > bound) bound = t;
    }
    bound += 1;
    int above = count_real_roots(sf, BigRat(1), bound);
    if (above != 1)
        throw std::invalid_argument(
            "polynomial does not have exactly one root above 1; give an interval");
    BigRat a = BigRat(3, 2);
    while (count_real_roots(sf, BigRat(1), a) > 0 || poly_eval(sf, a) == 0)
        a = 1 + (a - 1) / 2;
    return AlgebraicReal(ascending, a, bound);
}

/// Two-line input: "poly: c_d ... c_0" then optional
/// "interval: lo hi" with rational endpoints.
inline AlgebraicReal parse_beta_input(std::istream& in) {
    std::optional<std::vector<BigInt>> coeffs;
    std::optional<std::pair<BigRat, BigRat>> interval;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("expected 'poly:' or 'interval:' line");
        std::string head = line.substr(a, colon - a);
        std::string rest = line.substr(colon + 1);
        if (head == "poly") {
            coeffs = parse_poly_line(rest);
        } else if (head == "interval") {
            std::istringstream is(rest);
            std::string lo, hi;
            if (!(is >> lo >> hi)) throw std::invalid_argument("interval needs two endpoints");
            interval = {parse_rational(lo), parse_rational(hi)};
        } else {
            throw std::invalid_argument("unknown directive: " + head);
        }
    }
    if (!coeffs) throw std::invalid_argument("missing poly line");
    return make_beta(*coeffs, interval);
}

} // namespace carry
