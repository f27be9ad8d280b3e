#pragma once

/**
 * @file algebraic.hpp
 * @brief Exact arithmetic in Q(theta) for a real algebraic theta pinned
 *        by an integer polynomial and an isolating rational interval.
 *
 * Comparisons and floors are decided exactly: interval evaluation gives
 * a rational enclosure that refinement shrinks at will, and equality
 * against the enclosure boundary is settled by a gcd with the modulus
 * followed by a Sturm count on the isolating interval. This stays
 * correct when the supplied polynomial is square-free but reducible.
 */

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "numeric.hpp"
#include "poly.hpp"

namespace carry {

inline BigInt rat_floor(BigRat const& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

/// The field Q(theta). Holds the square-free modulus and the isolating
/// interval, which refinement narrows; elements share the field.
class NumberField {
public:
    NumberField(std::vector<BigInt> coeffs, BigRat lo, BigRat hi) {
        Poly p;
        for (auto const& c : coeffs) p.emplace_back(BigRat(c));
        poly_normalize(p);
        if (poly_degree(p) < 1)
            throw std::invalid_argument("defining polynomial must be nonconstant");
        modulus_ = square_free_part(p);
        int_coeffs_ = primitive_integer_coeffs(modulus_);
        lo_ = std::move(lo);
        hi_ = std::move(hi);
        if (poly_degree(modulus_) == 1) {
            exact_ = -modulus_[0] / modulus_[1];
            if (*exact_ <= lo_ || *exact_ > hi_)
                throw std::invalid_argument("interval does not contain the rational root");
            lo_ = hi_ = *exact_;
            return;
        }
        if (lo_ >= hi_) throw std::invalid_argument("empty isolating interval");
        BigRat flo = poly_eval(modulus_, lo_);
        BigRat fhi = poly_eval(modulus_, hi_);
        if (flo == 0 || fhi == 0)
            throw std::invalid_argument("interval endpoint is a root; perturb the interval");
        if ((flo > 0) == (fhi > 0))
            throw std::invalid_argument("no sign change over the isolating interval");
        if (count_real_roots(modulus_, lo_, hi_) != 1)
            throw std::invalid_argument("interval does not isolate a single root");
        sign_lo_ = flo > 0 ? 1 : -1;
    }

    Poly const& modulus() const { return modulus_; }
    std::vector<BigInt> const& integer_coeffs() const { return int_coeffs_; }
    int degree() const { return poly_degree(modulus_); }
    BigRat const& lo() const { return lo_; }
    BigRat const& hi() const { return hi_; }
    std::optional<BigRat> const& exact() const { return exact_; }

    /// One bisection step; the interval keeps isolating theta.
    void refine() const {
        if (exact_) return;
        BigRat mid = (lo_ + hi_) / 2;
        BigRat fm = poly_eval(modulus_, mid);
        if (fm == 0) {
            exact_ = mid;
            lo_ = hi_ = mid;
            return;
        }
        if ((fm > 0 ? 1 : -1) == sign_lo_) lo_ = mid;
        else hi_ = mid;
    }

    void refine_below(BigRat const& width) const {
        while (!exact_ && hi_ - lo_ >= width) refine();
    }

    /// Exact test of g(theta) == 0.
    bool vanishes(Poly const& g) const {
        auto [q, r] = g.empty() ? std::pair<Poly, Poly>{{}, {}} : poly_divmod(g, modulus_);
        if (r.empty() && g.empty()) return true;
        if (r.empty()) return true;
        if (exact_) return poly_eval(r, *exact_) == 0;
        Poly h = poly_gcd(r, modulus_);
        if (poly_degree(h) <= 0) return false;
        return count_real_roots(h, lo_, hi_) == 1;
    }

private:
    Poly modulus_; // monic, square-free
    std::vector<BigInt> int_coeffs_;
    mutable BigRat lo_, hi_;
    mutable std::optional<BigRat> exact_;
    int sign_lo_ = 0;
};

/// Exact rational enclosure of p(x) for x in [lo, hi], by interval
/// Horner with outward endpoint selection.
inline std::pair<BigRat, BigRat> interval_eval(Poly const& p, BigRat const& lo, BigRat const& hi) {
    BigRat a = 0, b = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        BigRat c1 = a * lo, c2 = a * hi, c3 = b * lo, c4 = b * hi;
        BigRat nlo = std::min(std::min(c1, c2), std::min(c3, c4));
        BigRat nhi = std::max(std::max(c1, c2), std::max(c3, c4));
        a = nlo + *it;
        b = nhi + *it;
    }
    return {a, b};
}

class NumberFieldElement {
public:
    NumberFieldElement(std::shared_ptr<NumberField const> field, Poly rep)
        : field_(std::move(field)), rep_(std::move(rep)) {
        if (!field_) throw std::invalid_argument("element without a field");
        if (poly_degree(rep_) >= field_->degree())
            rep_ = poly_divmod(rep_, field_->modulus()).second;
    }

    static NumberFieldElement from_rational(std::shared_ptr<NumberField const> f, BigRat c) {
        Poly p;
        if (c != 0) p.push_back(std::move(c));
        return NumberFieldElement(std::move(f), std::move(p));
    }

    static NumberFieldElement generator(std::shared_ptr<NumberField const> f) {
        return NumberFieldElement(std::move(f), Poly{BigRat(0), BigRat(1)});
    }

    std::shared_ptr<NumberField const> const& field() const { return field_; }
    Poly const& rep() const { return rep_; }

    NumberFieldElement operator+(NumberFieldElement const& o) const {
        check_field(o);
        return NumberFieldElement(field_, poly_add(rep_, o.rep_));
    }
    NumberFieldElement operator-(NumberFieldElement const& o) const {
        check_field(o);
        return NumberFieldElement(field_, poly_sub(rep_, o.rep_));
    }
    NumberFieldElement operator*(NumberFieldElement const& o) const {
        check_field(o);
        return NumberFieldElement(field_, poly_mul(rep_, o.rep_));
    }
    NumberFieldElement operator-(BigRat const& c) const {
        Poly p = rep_;
        if (p.empty()) p.push_back(-c);
        else p[0] -= c;
        poly_normalize(p);
        return NumberFieldElement(field_, std::move(p));
    }
    NumberFieldElement operator*(BigRat const& c) const {
        return NumberFieldElement(field_, poly_scale(rep_, c));
    }

    bool is_zero() const {
        if (rep_.empty()) return true;
        return field_->vanishes(rep_);
    }
    bool operator==(NumberFieldElement const& o) const { return (*this - o).is_zero(); }

    /// Current rational enclosure, without extra refinement.
    std::pair<BigRat, BigRat> enclosure() const {
        if (rep_.empty()) return {BigRat(0), BigRat(0)};
        return interval_eval(rep_, field_->lo(), field_->hi());
    }

    /// Exact floor, by refinement plus an exact boundary test.
    BigInt floor() const {
        if (rep_.empty()) return 0;
        for (int iter = 0; iter < 100000; ++iter) {
            auto [a, b] = enclosure();
            BigInt fa = rat_floor(a), fb = rat_floor(b);
            if (fa == fb) return fa;
            if (b - a < 1) {
                BigRat k(fb);
                if ((*this - k).is_zero()) return fb;
            }
            field_->refine();
        }
        throw std::runtime_error("floor refinement did not separate");
    }

    double to_double() const {
        if (rep_.empty()) return 0.0;
        BigRat width(1, 1);
        for (int iter = 0; iter < 210; ++iter) {
            auto [a, b] = enclosure();
            BigRat mag = std::max(abs(a), abs(b));
            if (mag < 1) mag = 1;
            if (b - a <= mag * BigRat(1, 1152921504606846976L)) // 2^-60 relative
                return BigRat((a + b) / 2).get_d();
            field_->refine();
        }
        auto [a, b] = enclosure();
        return BigRat((a + b) / 2).get_d();
    }

private:
    void check_field(NumberFieldElement const& o) const {
        if (field_ != o.field_)
            throw std::invalid_argument("elements from different fields");
    }

    std::shared_ptr<NumberField const> field_;
    Poly rep_;
};

/// A real algebraic number above 1 is the usual client: a shared field
/// plus the generator element.
class AlgebraicReal {
public:
    AlgebraicReal(std::vector<BigInt> coeffs, BigRat lo, BigRat hi)
        : field_(std::make_shared<NumberField>(std::move(coeffs), std::move(lo), std::move(hi))) {}

    std::shared_ptr<NumberField const> field() const { return field_; }
    NumberFieldElement value() const { return NumberFieldElement::generator(field_); }
    std::optional<BigRat> exact_rational() const { return field_->exact(); }
    double to_double() const { return value().to_double(); }

private:
    std::shared_ptr<NumberField> field_;
};

} // namespace carry
