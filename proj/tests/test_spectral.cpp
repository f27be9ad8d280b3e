#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "carry/dfa.hpp"
#include "carry/spectral.hpp"

using namespace carry;

namespace {

std::vector<BigRat> rats(std::vector<long> xs) {
    std::vector<BigRat> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

SpectralReport classify(char const* name) {
    CountTable ct(builtin(name));
    return spectral_classify(minimal_recurrence(ct));
}

} // namespace

TEST_CASE("square-free factorization splits multiplicities") {
    // (X-2)^2 (X+2) = X^3 - 2X^2 - 4X + 8.
    auto factors = yun_square_free(rats({8, -4, -2, 1}));
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].multiplicity == 1);
    CHECK(poly_monic(factors[0].factor) == rats({2, 1}));
    CHECK(factors[1].multiplicity == 2);
    CHECK(poly_monic(factors[1].factor) == rats({-2, 1}));
}

TEST_CASE("root isolation on small polynomials") {
    // X^2 - 4.
    auto zs = isolate_roots({BigInt(-4), BigInt(0), BigInt(1)});
    REQUIRE(zs.size() == 2);
    std::vector<double> res;
    for (auto const& z : zs) {
        CHECK(std::abs(z.im.get_d()) < 1e-18);
        res.push_back(z.re.get_d());
    }
    std::sort(res.begin(), res.end());
    CHECK(res[0] == Catch::Approx(-2.0).margin(1e-15));
    CHECK(res[1] == Catch::Approx(2.0).margin(1e-15));

    // X^2 + 1: a conjugate pair on the unit circle.
    auto im = isolate_roots({BigInt(1), BigInt(0), BigInt(1)});
    REQUIRE(im.size() == 2);
    for (auto const& z : im) {
        CHECK(std::abs(z.re.get_d()) < 1e-15);
        CHECK(std::abs(std::abs(z.im.get_d()) - 1.0) < 1e-15);
        CHECK(root_modulus(z).get_d() == Catch::Approx(1.0).margin(1e-15));
    }

    // X^3 - 2: one real root, moduli all 2^(1/3).
    auto cb = isolate_roots({BigInt(-2), BigInt(0), BigInt(0), BigInt(1)});
    REQUIRE(cb.size() == 3);
    double cbrt2 = std::cbrt(2.0);
    int reals = 0;
    for (auto const& z : cb) {
        CHECK(root_modulus(z).get_d() == Catch::Approx(cbrt2).margin(1e-12));
        if (z.im == 0) ++reals;
    }
    CHECK(reals == 1);
}

TEST_CASE("growth classification of the fixtures") {
    SpectralReport k1 = classify("K1");
    // X^2 - 4: two opposite dominant roots, no usable growth ratio.
    CHECK(k1.reduced_poly == rats({-4, 0, 1}));
    CHECK_FALSE(k1.is_dev);
    CHECK_FALSE(k1.is_adev);
    CHECK(k1.dominant_modulus == Catch::Approx(2.0));
    CHECK_FALSE(k1.gamma.has_value());

    SpectralReport k2 = classify("K2");
    CHECK(k2.reduced_poly == rats({-2, 1}));
    CHECK(k2.is_dev);
    CHECK(k2.is_adev);
    REQUIRE(k2.gamma.has_value());
    CHECK(*k2.gamma == Catch::Approx(2.0));
    REQUIRE(k2.dominant_exact.has_value());
    CHECK(*k2.dominant_exact == BigRat(2));

    SpectralReport k3 = classify("K3");
    // (X-2)^2 (X+2): not unique, but the positive root dominates by
    // multiplicity, so the ratio still exists.
    CHECK_FALSE(k3.is_dev);
    CHECK(k3.is_adev);
    CHECK(k3.dominant_multiplicity == 2);
    REQUIRE(k3.gamma.has_value());
    CHECK(*k3.gamma == Catch::Approx(2.0));
    REQUIRE(k3.dominant_exact.has_value());
    CHECK(*k3.dominant_exact == BigRat(2));

    SpectralReport k4 = classify("K4");
    // X^2 - 2X: the zero root is stripped, leaving a clean X - 2.
    CHECK(k4.zero_root_order == 1);
    CHECK(k4.reduced_poly == rats({-2, 1}));
    CHECK(k4.is_dev);
    CHECK(k4.is_adev);

    SpectralReport fib = classify("fibonacci");
    CHECK(fib.zero_root_order == 1);
    CHECK(fib.reduced_poly == rats({-1, -1, 1}));
    CHECK(fib.is_dev);
    REQUIRE(fib.gamma.has_value());
    CHECK(*fib.gamma == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    // Irrational dominant root: no exact value to report.
    CHECK_FALSE(fib.dominant_exact.has_value());
}

TEST_CASE("degenerate recurrences are flagged") {
    // s = 5, 0, 0, ...; annihilator X.
    LinearRecurrence rec;
    rec.poly = rats({0, 1});
    rec.initial = {BigInt(5)};
    SpectralReport rep = spectral_classify(rec);
    CHECK(rep.degenerate);
    CHECK_FALSE(rep.is_adev);
    CHECK_FALSE(rep.gamma.has_value());
}

TEST_CASE("carry-rate decision") {
    CpDecision b3 = decide_cp(builtin("base3"));
    CHECK(b3.determined);
    REQUIRE(b3.cp_exact.has_value());
    CHECK(*b3.cp_exact == BigRat(3, 2));
    CHECK(b3.cp_value == Catch::Approx(1.5));

    CpDecision b2 = decide_cp(builtin("base2"));
    CHECK(b2.determined);
    REQUIRE(b2.cp_exact.has_value());
    CHECK(*b2.cp_exact == BigRat(2));

    CpDecision fib = decide_cp(builtin("fibonacci"));
    CHECK(fib.determined);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(fib.cp_value == Catch::Approx(phi / (phi - 1.0)).epsilon(1e-9));
    CHECK_FALSE(fib.cp_exact.has_value());

    // level counts 1,2,5,13,34 grow like ((3+sqrt 5)/2)^l, and
    // lam/(lam-1) for that ratio collapses to the golden ratio
    CpDecision fina = decide_cp(builtin("fina"));
    CHECK(fina.determined);
    double lam = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(fina.cp_value == Catch::Approx(lam / (lam - 1.0)).epsilon(1e-9));
    CHECK(fina.cp_value == Catch::Approx(phi).epsilon(1e-9));
}

TEST_CASE("decision stays undetermined without a growth ratio") {
    CpDecision k1 = decide_cp(builtin("K1"));
    CHECK_FALSE(k1.determined);
    CHECK(k1.reason == "level counts have no growth ratio");

    // K4 grows cleanly overall, but a quotient oscillates.
    CpDecision k4 = decide_cp(builtin("K4"));
    CHECK_FALSE(k4.determined);
    CHECK(k4.main.is_adev);
    CHECK(k4.reason == "a maximal-growth quotient has no growth ratio");
    CHECK_FALSE(k4.offending_states.empty());
    CHECK(std::find(k4.offending_states.begin(), k4.offending_states.end(), 1) !=
          k4.offending_states.end());

    // Not prefix-closed: no decision at all.
    Dfa only_one = make_dfa(2, 2, 0, {1}, {{0, 1, 1}});
    CpDecision np = decide_cp(only_one);
    CHECK_FALSE(np.determined);
    CHECK_FALSE(np.pce.ok());
    CHECK(np.reason == "language is not prefix-closed right-extendable");
}

TEST_CASE("spectral report serialization") {
    auto j = spectral_report_json(classify("K3"));
    CHECK(j["minimal_polynomial"].is_array());
    CHECK(j["adev"] == true);
    CHECK(j["dev"] == false);
    CHECK(j["dominant_exact"] == "2");
    CHECK(j["gamma"] == 2.0);
    // Two distinct roots, 2 and -2, carrying total multiplicity 3.
    CHECK(j["roots"].size() == 2);
    int mult_sum = 0;
    for (auto const& r : j["roots"]) mult_sum += r["multiplicity"].get<int>();
    CHECK(mult_sum == 3);
}
