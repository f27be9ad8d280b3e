#pragma once

/**
 * @file numeric.hpp
 * @brief Shared exact-arithmetic helpers on top of GMP: rational/decimal
 *        rendering and small conversions used by reports.
 */

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace carry {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt big_pow(BigInt const& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

/// Decimal rendering of a rational with the given count of significant
/// digits (default 15, the report convention).
inline std::string decimal_string(BigRat const& x, int sig_digits = 15) {
    if (x == 0) return "0";
    BigRat a = x;
    a.canonicalize();
    bool neg = a < 0;
    if (neg) a = -a;

    // scale so that the integer part carries sig_digits digits
    int exp10 = 0;
    BigRat t = a;
    while (t >= 1) { t /= 10; ++exp10; }
    while (t < BigRat(1, 10)) { t *= 10; --exp10; }
    // now 1/10 <= t < 1 and a = t * 10^exp10

    BigInt scaled;
    {
        BigRat s = a;
        int shift = sig_digits - exp10;
        for (int i = 0; i < shift; ++i) s *= 10;
        for (int i = 0; i < -shift; ++i) s /= 10;
        // round to nearest
        BigInt num = s.get_num(), den = s.get_den();
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (r * 2 >= den) q += 1;
        scaled = q;
    }
    std::string digits = scaled.get_str();
    if ((int)digits.size() > sig_digits) {
        // rounding overflowed into one more digit (e.g. 999.. -> 1000..)
        ++exp10;
        digits.pop_back();
    }

    std::string out;
    if (exp10 > 0 && exp10 <= sig_digits) {
        out = digits.substr(0, exp10);
        std::string frac = digits.substr(exp10);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else if (exp10 <= 0 && exp10 > -6) {
        out = "0.";
        out.append(-exp10, '0');
        std::string frac = digits;
        while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
        out += frac;
    } else {
        // scientific
        out = digits.substr(0, 1);
        std::string frac = digits.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(exp10 - 1);
    }
    return neg ? "-" + out : out;
}

inline std::string rational_string(BigRat const& x) {
    BigRat a = x;
    a.canonicalize();
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

inline double to_double(BigRat const& x) { return mpq_get_d(x.get_mpq_t()); }

} // namespace carry
