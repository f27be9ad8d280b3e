#pragma once

/**
 * @file roots.hpp
 * @brief All complex roots of a square-free integer polynomial by the
 *        Aberth-Ehrlich simultaneous iteration over GMP floats, with
 *        precision escalation until the corrections converge.
 */

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "numeric.hpp"

namespace carry {

struct ComplexF {
    mpf_class re, im;
};

inline ComplexF cf_add(ComplexF const& a, ComplexF const& b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexF cf_sub(ComplexF const& a, ComplexF const& b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexF cf_mul(ComplexF const& a, ComplexF const& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline mpf_class cf_norm2(ComplexF const& a) { return a.re * a.re + a.im * a.im; }
inline ComplexF cf_div(ComplexF const& a, ComplexF const& b) {
    mpf_class n = cf_norm2(b);
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline mpf_class cf_abs(ComplexF const& a) {
    mpf_class n = cf_norm2(a);
    mpf_class r;
    mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
    return r;
}

namespace detail {

inline ComplexF horner(std::vector<mpf_class> const& coeffs, ComplexF const& z) {
    ComplexF acc{mpf_class(0), mpf_class(0)};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = cf_mul(acc, z);
        acc.re += *it;
    }
    return acc;
}

} // namespace detail

/// Distinct roots of a square-free primitive integer polynomial.
/// Precision escalates 128 -> 2048 bits; per level the iteration stops
/// when every correction is below 2^(-prec/2) relative to its root.
inline std::vector<ComplexF> isolate_roots(std::vector<BigInt> const& coeffs) {
    int deg = (int)coeffs.size() - 1;
    if (deg < 1) return {};
    for (int prec = 128; prec <= 2048; prec *= 2) {
        mpf_set_default_prec(prec);
        std::vector<mpf_class> c(coeffs.size()), cd;
        for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = mpf_class(coeffs[i], prec);
        for (int i = 1; i <= deg; ++i) cd.push_back(c[i] * i);

        // Cauchy bound for the initial circle.
        mpf_class bound = 0;
        for (int i = 0; i < deg; ++i) {
            mpf_class t = abs(c[i] / c[deg]);
            if (t > bound) bound = t;
        }
        bound += 1;
        double radius = bound.get_d();

        std::vector<ComplexF> z(deg);
        for (int k = 0; k < deg; ++k) {
            double ang = 2.0 * 3.14159265358979323846 * (k + 0.5) / deg + 0.4;
            double r = radius * (1.0 + 0.05 * k / std::max(1, deg));
            z[k] = {mpf_class(r * std::cos(ang), prec), mpf_class(r * std::sin(ang), prec)};
        }

        mpf_class tol(1, prec);
        mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec / 2);
        mpf_class tol2 = tol * tol;

        bool converged = false;
        for (int iter = 0; iter < 500 && !converged; ++iter) {
            converged = true;
            for (int k = 0; k < deg; ++k) {
                ComplexF pv = detail::horner(c, z[k]);
                ComplexF pd = detail::horner(cd, z[k]);
                if (cf_norm2(pd) == 0) {
                    z[k].re += mpf_class(1e-3, prec);
                    converged = false;
                    continue;
                }
                ComplexF newton = cf_div(pv, pd);
                ComplexF sum{mpf_class(0), mpf_class(0)};
                for (int j = 0; j < deg; ++j) {
                    if (j == k) continue;
                    ComplexF diff = cf_sub(z[k], z[j]);
                    if (cf_norm2(diff) == 0) { diff.re += mpf_class(1e-6, prec); }
                    sum = cf_add(sum, cf_div(ComplexF{mpf_class(1), mpf_class(0)}, diff));
                }
                ComplexF denom = cf_sub(ComplexF{mpf_class(1), mpf_class(0)}, cf_mul(newton, sum));
                if (cf_norm2(denom) == 0) denom.re = mpf_class(1e-30, prec);
                ComplexF corr = cf_div(newton, denom);
                z[k] = cf_sub(z[k], corr);
                mpf_class scale = cf_norm2(z[k]);
                if (scale < 1) scale = 1;
                if (cf_norm2(corr) > tol2 * scale) converged = false;
            }
        }
        if (converged) {
            // Snap conjugate partners and near-real roots so later
            // modulus grouping sees exact symmetry.
            for (int k = 0; k < deg; ++k) {
                mpf_class scale = cf_abs(z[k]);
                if (scale < 1) scale = 1;
                if (abs(z[k].im) <= tol * scale) z[k].im = 0;
            }
            return z;
        }
    }
    throw std::runtime_error("root isolation did not converge at 2048 bits");
}

/// |z| at the precision z carries.
inline mpf_class root_modulus(ComplexF const& z) {
    if (z.im == 0) return abs(z.re);
    return cf_abs(z);
}

} // namespace carry
