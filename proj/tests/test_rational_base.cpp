#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "carry/rational_base.hpp"
#include "carry/signature.hpp"

using namespace carry;

TEST_CASE("base 3/2 representations") {
    RationalBase rb(3, 2);
    // Hand table for 0..11.
    std::vector<Word> want = {
        Word{},        Word{2},          Word{2, 1},       Word{2, 1, 0},
        Word{2, 1, 2}, Word{2, 1, 0, 1}, Word{2, 1, 2, 0}, Word{2, 1, 2, 2},
        Word{2, 1, 0, 1, 1}, Word{2, 1, 2, 0, 0}, Word{2, 1, 2, 0, 2}, Word{2, 1, 2, 2, 1}};
    for (std::size_t n = 0; n < want.size(); ++n) {
        CAPTURE(n);
        CHECK(rb_repr(rb, BigInt((unsigned long)n)) == want[n]);
    }
}

TEST_CASE("value and representation invert each other") {
    for (auto [p, q] : {std::pair{3L, 2L}, {5L, 2L}, {5L, 3L}, {7L, 4L}, {2L, 1L}}) {
        CAPTURE(p, q);
        RationalBase rb(p, q);
        for (unsigned long n = 0; n < 100000; n += (n < 500 ? 1 : 97)) {
            Word w = rb_repr(rb, BigInt(n));
            REQUIRE(rb_val(rb, w) == BigInt(n));
        }
    }
}

TEST_CASE("digit values weigh powers of p/q") {
    RationalBase rb(3, 2);
    // 2101 read with weights (3/2)^i scaled by 1/q per digit:
    // ((((2)*3/2+1)*3/2+0)*3/2+1)/... = 5.
    CHECK(rb_val_exact(rb, Word{2, 1, 0, 1}) == BigRat(5));
    // A word outside the language has a fractional value.
    CHECK(rb_val_exact(rb, Word{1}) == BigRat(1, 2));
    CHECK_THROWS_AS(rb_val(rb, Word{1}), std::invalid_argument);
    CHECK_THROWS_AS(rb_val(rb, Word{0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(rb_val_exact(rb, Word{3}), std::invalid_argument);
}

TEST_CASE("successor in value order") {
    RationalBase rb(3, 2);
    Word w;
    for (unsigned long n = 0; n < 3000; ++n) {
        Word nxt = rb_succ(rb, w);
        REQUIRE(rb_val(rb, nxt) == BigInt(n + 1));
        w = std::move(nxt);
    }
}

TEST_CASE("streamed carries match successive-representation distance") {
    for (auto [p, q] : {std::pair{3L, 2L}, {5L, 2L}, {2L, 1L}}) {
        CAPTURE(p, q);
        RationalBase rb(p, q);
        std::vector<std::uint64_t> got;
        rb_cp_stream(rb, 4000, [&](std::uint64_t, std::uint64_t cp) { got.push_back(cp); });
        REQUIRE(got.size() == 4000);
        Word cur;
        for (std::uint64_t i = 0; i < 4000; ++i) {
            Word nxt = rb_succ(rb, cur);
            REQUIRE(got[i] == delta(cur, nxt));
            cur = std::move(nxt);
        }
    }
}

TEST_CASE("streamed carries match the signature tree") {
    //Two routes: digits from modular arithmetic on values, versus the
    // breadth-first chain rule on the periodic degree rhythm.
    for (auto [p, q] : {std::pair{3L, 2L}, {5L, 2L}, {5L, 3L}}) {
        CAPTURE(p, q);
        RationalBase rb(p, q);
        Signature sig = rational_base_signature(p, q);
        std::vector<std::uint64_t> lhs, rhs;
        rb_cp_stream(rb, 100000, [&](std::uint64_t, std::uint64_t cp) { lhs.push_back(cp); });
        enumerate_with_cp(sig, 100000,
                          [&](std::uint64_t, std::uint64_t cp, int) { rhs.push_back(cp); });
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("alphabet and parameter validation") {
    RationalBase rb(5, 2);
    CHECK(rb.alphabet().size == 5);
    CHECK_THROWS_AS(RationalBase(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(RationalBase(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(RationalBase(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(rb_repr(rb, BigInt(-1)), std::invalid_argument);
}
