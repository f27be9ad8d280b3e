#pragma once

/**
 * @file spectral.hpp
 * @brief Growth classification of level-count sequences from the roots
 *        of their minimal recurrence, and the carry-rate decision that
 *        follows from it.
 *
 * Zero roots are stripped before classification: they only shift the
 * sequence and never influence the growth class. A sequence has a
 * dominant eigenvalue (DEV) when exactly one root attains the maximal
 * modulus, and an almost dominant one (ADEV) when the maximal modulus
 * is attained by a real positive root whose multiplicity strictly
 * exceeds that of every other root of the same modulus. The growth
 * ratio gamma exists precisely in the ADEV case and equals that root.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfa.hpp"
#include "poly.hpp"
#include "recurrence.hpp"
#include "roots.hpp"

namespace carry {

struct SpectralRoot {
    double re = 0, im = 0;
    double modulus = 0;
    int multiplicity = 1;
};

struct SpectralReport {
    std::vector<BigRat> min_poly;      // monic, ascending
    int zero_root_order = 0;           // stripped power of X
    std::vector<BigRat> reduced_poly;  // min_poly with zero roots removed
    std::vector<SpectralRoot> roots;   // roots of reduced_poly
    bool degenerate = false;           // counts eventually zero
    bool is_dev = false;
    bool is_adev = false;
    double dominant_modulus = 0;
    int dominant_multiplicity = 0;
    bool dominant_real_positive = false;
    std::optional<BigRat> dominant_exact;  // when the dominant root is rational
    std::optional<double> gamma;           // growth ratio, present iff ADEV
};

/// Classifies the growth of the sequence annihilated by rec.poly.
inline SpectralReport spectral_classify(LinearRecurrence const& rec) {
    SpectralReport rep;
    rep.min_poly = rec.poly;

    std::size_t m = 0;
    while (m < rec.poly.size() && rec.poly[m] == 0) ++m;
    rep.zero_root_order = (int)m;
    rep.reduced_poly.assign(rec.poly.begin() + m, rec.poly.end());

    if (poly_degree(rep.reduced_poly) <= 0) {
        rep.degenerate = true;
        return rep;
    }

    auto factors = yun_square_free(rep.reduced_poly);
    std::vector<std::optional<BigRat>> exact_values;
    for (auto const& f : factors) {
        auto ic = primitive_integer_coeffs(f.factor);
        auto zs = isolate_roots(ic);
        bool linear = poly_degree(f.factor) == 1;
        for (auto const& z : zs) {
            SpectralRoot r;
            r.re = z.re.get_d();
            r.im = z.im.get_d();
            r.modulus = root_modulus(z).get_d();
            r.multiplicity = f.multiplicity;
            rep.roots.push_back(r);
            if (linear)
                exact_values.emplace_back(BigRat(-f.factor[0] / f.factor[1]));
            else
                exact_values.emplace_back(std::nullopt);
        }
    }

    double lambda = 0;
    for (auto const& r : rep.roots) lambda = std::max(lambda, r.modulus);
    rep.dominant_modulus = lambda;

    // Relative grouping tolerance matching the weakest isolation level.
    double tol = lambda * 5.4e-20; // 2^-64
    std::vector<SpectralRoot const*> dominant;
    for (std::size_t i = 0; i < rep.roots.size(); ++i) {
        auto const& r = rep.roots[i];
        if (lambda - r.modulus <= tol) {
            dominant.push_back(&r);
            if (exact_values[i] && r.im == 0 && r.re > 0)
                rep.dominant_exact = exact_values[i];
        }
    }

    rep.is_dev = dominant.size() == 1;
    SpectralRoot const* real_pos = nullptr;
    for (auto const* r : dominant)
        if (r->im == 0 && r->re > 0) real_pos = r;
    rep.dominant_real_positive = real_pos != nullptr;
    if (real_pos) {
        rep.dominant_multiplicity = real_pos->multiplicity;
        bool others_smaller = true;
        for (auto const* r : dominant)
            if (r != real_pos && r->multiplicity >= real_pos->multiplicity)
                others_smaller = false;
        rep.is_adev = others_smaller;
    }
    if (rep.is_adev) rep.gamma = lambda;
    return rep;
}

/// Carry-rate decision for the language of a trim automaton. The rate
/// exists and equals lambda/(lambda-1) when the language counts are
/// ADEV and every quotient of maximal growth is ADEV as well; the
/// criterion is sufficient only, so the negative answer is always
/// "undetermined", never a claim of non-existence.
struct CpDecision {
    bool determined = false;
    std::string reason;                // set when undetermined
    double cp_value = 0;
    std::optional<BigRat> cp_exact;    // when lambda is rational
    PceVerdict pce{PceVerdict::Kind::pce, -1};
    SpectralReport main;
    std::vector<int> offending_states; // trim-state quotients breaking ADEV
};

inline CpDecision decide_cp(Dfa const& d0) {
    CpDecision dec;
    Dfa d = trim(d0);
    dec.pce = check_pce(d);
    if (!dec.pce.ok()) {
        dec.reason = "language is not prefix-closed right-extendable";
        return dec;
    }
    CountTable ct(d);
    dec.main = spectral_classify(minimal_recurrence(ct));
    if (dec.main.degenerate || !dec.main.is_adev) {
        dec.reason = "level counts have no growth ratio";
        return dec;
    }
    double lambda = dec.main.dominant_modulus;
    double tol = lambda * 1e-9;
    for (int q = 0; q < d.state_count(); ++q) {
        Dfa quot = d;
        quot.initial = q;
        CountTable qt(quot);
        SpectralReport qr = spectral_classify(minimal_recurrence(qt));
        if (qr.degenerate) continue;
        if (qr.dominant_modulus >= lambda - tol && !qr.is_adev)
            dec.offending_states.push_back(q);
    }
    if (!dec.offending_states.empty()) {
        dec.reason = "a maximal-growth quotient has no growth ratio";
        return dec;
    }
    dec.determined = true;
    dec.cp_value = lambda / (lambda - 1.0);
    if (dec.main.dominant_exact) {
        BigRat l = *dec.main.dominant_exact;
        if (l > 1) dec.cp_exact = l / (l - 1);
    }
    return dec;
}

/// JSON form: exact rational coefficients as strings, roots with
/// double precision coordinates and exact multiplicities.
inline nlohmann::ordered_json spectral_report_json(SpectralReport const& rep) {
    nlohmann::ordered_json j;
    auto poly_strings = [](std::vector<BigRat> const& p) {
        std::vector<std::string> out;
        for (auto const& c : p) out.push_back(rational_string(c));
        return out;
    };
    j["minimal_polynomial"] = poly_strings(rep.min_poly);
    j["zero_root_order"] = rep.zero_root_order;
    j["reduced_polynomial"] = poly_strings(rep.reduced_poly);
    nlohmann::ordered_json roots = nlohmann::ordered_json::array();
    for (auto const& r : rep.roots) {
        nlohmann::ordered_json e;
        e["re"] = r.re;
        e["im"] = r.im;
        e["modulus"] = r.modulus;
        e["multiplicity"] = r.multiplicity;
        roots.push_back(e);
    }
    j["roots"] = roots;
    j["degenerate"] = rep.degenerate;
    j["dev"] = rep.is_dev;
    j["adev"] = rep.is_adev;
    j["dominant_modulus"] = rep.dominant_modulus;
    if (rep.dominant_exact) j["dominant_exact"] = rational_string(*rep.dominant_exact);
    if (rep.gamma) j["gamma"] = *rep.gamma;
    return j;
}

} // namespace carry
