#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <vector>

#include "carry/gns.hpp"
#include "carry/words.hpp"

using namespace carry;

namespace {

Basis fib() { return Basis::from_recurrence({BigInt(1), BigInt(1)}, {BigInt(1), BigInt(2)}); }
Basis trib() {
    return Basis::from_recurrence({BigInt(1), BigInt(1), BigInt(1)},
                                  {BigInt(1), BigInt(2), BigInt(4)});
}
/// Bisected Fibonacci terms 1, 3, 8, 21, 55; the greedy system whose
/// words avoid the factor family 2 1* 2.
Basis theta() { return Basis::from_recurrence({BigInt(3), BigInt(-1)}, {BigInt(1), BigInt(3)}); }
Basis base10() { return Basis::from_recurrence({BigInt(10)}, {BigInt(1)}); }

} // namespace

TEST_CASE("basis construction") {
    Basis f = fib();
    CHECK(f.G(0) == 1);
    CHECK(f.G(5) == 13);
    CHECK(f.G(10) == 144);
    CHECK(f.extendable());

    Basis e = Basis::explicit_terms({1, 2, 3, 5, 8, 13});
    CHECK_FALSE(e.extendable());
    CHECK(e.known() == 6);
    CHECK(e.G(5) == 13);
    CHECK_THROWS_AS(e.G(6), std::out_of_range);

    CHECK_THROWS_AS(Basis::explicit_terms({2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Basis::explicit_terms({1, 2, 2}), std::invalid_argument);
}

TEST_CASE("digit-stream bases match their recurrences") {
    // The recurrence route and the stream route (terms one above a
    // digit-weighted sum of earlier terms) must build the same basis.
    Basis fr = fib();
    Basis fd = Basis::from_digit_stream({}, {1, 0});
    Basis tr = trib();
    Basis td = Basis::from_digit_stream({}, {1, 1, 0});
    Basis hr = theta();
    Basis hd = Basis::from_digit_stream({2}, {1});
    for (std::size_t l = 0; l <= 40; ++l) {
        CAPTURE(l);
        CHECK(fr.G(l) == fd.G(l));
        CHECK(tr.G(l) == td.G(l));
        CHECK(hr.G(l) == hd.G(l));
    }
    CHECK(hr.G(4) == 55);
}

TEST_CASE("greedy representation fixtures") {
    Basis f = fib();
    CHECK(greedy_repr(f, BigInt(0)) == Word{});
    CHECK(greedy_repr(f, BigInt(9)) == Word{1, 0, 0, 0, 1});
    CHECK(greedy_repr(f, BigInt(12)) == Word{1, 0, 1, 0, 1});

    Basis h = theta();
    CHECK(greedy_repr(h, BigInt(2)) == Word{2});
    CHECK(greedy_repr(h, BigInt(7)) == Word{2, 1});

    CHECK(greedy_repr(base10(), BigInt(409)) == Word{4, 0, 9});
    CHECK_THROWS_AS(greedy_repr(f, BigInt(-3)), std::invalid_argument);
}

TEST_CASE("greedy value inverts greedy representation") {
    for (Basis const& b : {fib(), trib(), theta(), base10()}) {
        for (unsigned long n = 0; n < 20000; n += (n < 400 ? 1 : 83)) {
            BigInt big((unsigned long)n);
            REQUIRE(greedy_val(b, greedy_repr(b, big)) == big);
        }
    }
}

TEST_CASE("membership is the trailing-cut condition") {
    Basis f = fib();
    CHECK(gns_membership(f, Word{}));
    CHECK(gns_membership(f, Word{1, 0, 1, 0, 1}));
    CHECK(gns_membership(f, Word{1, 0, 0, 1, 0}));
    CHECK_FALSE(gns_membership(f, Word{1, 1, 0}));
    CHECK_FALSE(gns_membership(f, Word{0, 1}));
    CHECK_FALSE(gns_membership(f, Word{2}));

    // Exactly the greedy representations pass: sweep every digit string
    // of length <= 4 over {0,1,2} against the enumerated language.
    Basis h = theta();
    std::set<std::vector<int>> lang;
    for (unsigned long n = 0; n < 55; ++n) lang.insert(greedy_repr(h, BigInt(n)).digits);
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 0; len <= 4; ++len) {
        std::vector<std::vector<int>> next;
        for (auto const& ds : frontier) {
            CHECK(gns_membership(h, Word{ds}) == (lang.count(ds) > 0));
            for (int d = 0; d <= 2; ++d) {
                auto ext = ds;
                ext.push_back(d);
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
}

TEST_CASE("maximal words per level") {
    CHECK(g_max(fib(), 0) == Word{});
    CHECK(g_max(fib(), 5) == Word{1, 0, 1, 0, 1});
    CHECK(g_max(trib(), 3) == Word{1, 1, 0});
    CHECK(g_max(theta(), 2) == Word{2, 1});
    CHECK(g_max(base10(), 3) == Word{9, 9, 9});
}

TEST_CASE("carry fixtures in the Fibonacci system") {
    Basis f = fib();
    std::vector<std::uint64_t> want = {1, 2, 3, 1, 4, 1, 2, 5, 1, 2};
    for (std::size_t n = 0; n < want.size(); ++n) {
        CAPTURE(n);
        CHECK(greedy_cp(f, BigInt((unsigned long)n)) == want[n]);
    }
    CHECK(greedy_cp(f, BigInt(12)) == 6);
}

TEST_CASE("three carry routes agree") {
    // Definition by word distance, the maximal-suffix formula, and the
    // rolling stream must give identical sequences.
    for (Basis const& b : {fib(), trib(), theta(), base10()}) {
        std::vector<std::uint64_t> streamed;
        gns_cp_stream(b, 20000,
                      [&](std::uint64_t, std::uint64_t cp) { streamed.push_back(cp); });
        Word cur = greedy_repr(b, BigInt(0));
        for (unsigned long n = 0; n < 20000; ++n) {
            Word nxt = greedy_repr(b, BigInt(n + 1));
            REQUIRE(streamed[n] == delta(cur, nxt));
            if (n < 3000) REQUIRE(streamed[n] == greedy_cp(b, BigInt(n)));
            cur = std::move(nxt);
        }
    }
}

TEST_CASE("suffix chain of maximal words") {
    auto jf = j_table(fib(), 8);
    CHECK(jf == std::vector<std::size_t>{0, 0, 0, 1, 2, 3, 4, 5, 6});

    auto jt = j_table(trib(), 8);
    CHECK(jt == std::vector<std::size_t>{0, 0, 1, 0, 1, 2, 3, 4, 5});

    // Maximal words 2 1^(k-1) share no suffix with each other.
    auto jh = j_table(theta(), 8);
    CHECK(jh == std::vector<std::size_t>(9, 0));
}

TEST_CASE("prefix-closure scan accepts the classical bases") {
    for (Basis const& b : {fib(), trib(), theta(), base10()}) {
        auto rep = check_pce_gns(b, 5000);
        CHECK(rep.ok);
        CHECK(rep.ratio_condition_holds);
        CHECK_FALSE(rep.counterexample.has_value());
    }
}

TEST_CASE("prefix-closure scan finds the counterexample basis") {
    Basis bad = Basis::explicit_terms({1, 2, 3, 5, 9, 14, 23});
    auto rep = check_pce_gns(bad, 5000);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.kind == "prefix");
    REQUIRE(rep.counterexample.has_value());
    CHECK(*rep.counterexample == Word{1, 1});
    // The ratio condition alone cannot rule this basis out.
    CHECK(rep.ratio_condition_holds);

    // The reported word really is a prefix of a representation yet not
    // a representation itself.
    CHECK_FALSE(gns_membership(bad, *rep.counterexample));
    CHECK(is_prefix(*rep.counterexample, greedy_repr(bad, BigInt(8))));
}

TEST_CASE("prefix-closure scan finds missing extensions") {
    Basis stub = Basis::explicit_terms({1, 3, 4});
    auto rep = check_pce_gns(stub, 100);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.kind == "extension");
    REQUIRE(rep.counterexample.has_value());
    CHECK(*rep.counterexample == Word{2, 0});

    Basis steep = Basis::explicit_terms({1, 2, 6, 7});
    auto rep2 = check_pce_gns(steep, 100);
    CHECK_FALSE(rep2.ratio_condition_holds);
}

TEST_CASE("basis file parsing") {
    std::istringstream in("# fibonacci start\n1\n2\n3\n\n5\n");
    Basis b = parse_basis(in);
    CHECK(b.known() == 4);
    CHECK(b.G(3) == 5);
    CHECK_FALSE(b.extendable());

    std::istringstream bad("3\n5\n");
    CHECK_THROWS_AS(parse_basis(bad), std::invalid_argument);
}
