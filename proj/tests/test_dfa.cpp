#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "carry/dfa.hpp"

using namespace carry;

namespace {

/// All words over {0..r-1} of length <= lmax in radix order.
std::vector<Word> all_words(int r, int lmax) {
    std::vector<Word> out = {Word{}};
    std::size_t lo = 0;
    for (int l = 1; l <= lmax; ++l) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (int a = 0; a < r; ++a) {
                Word w = out[i];
                w.digits.push_back(a);
                out.push_back(w);
            }
        lo = hi;
    }
    return out;
}

bool has_factor_two_ones_two(Word const& w) {
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (w[i] != 2) continue;
        std::size_t j = i + 1;
        while (j < w.length() && w[j] == 1) ++j;
        if (j < w.length() && w[j] == 2) return true;
    }
    return false;
}

} // namespace

TEST_CASE("built-in automata membership") {
    Dfa b2 = builtin("base2");
    CHECK(b2.accepts(Word{}));
    CHECK(b2.accepts(Word{1}));
    CHECK(b2.accepts(Word{1, 0}));
    CHECK_FALSE(b2.accepts(Word{0, 1}));
    CHECK_FALSE(b2.accepts(Word{0}));

    Dfa fib = builtin("fibonacci");
    CHECK(fib.accepts(Word{1, 0, 1}));
    CHECK(fib.accepts(Word{1, 0, 0, 1, 0}));
    CHECK_FALSE(fib.accepts(Word{1, 1}));
    CHECK_FALSE(fib.accepts(Word{1, 0, 1, 1}));
    CHECK_FALSE(fib.accepts(Word{0, 1}));

    CHECK_THROWS_AS(builtin("nonesuch"), std::invalid_argument);
}

TEST_CASE("fina bans the factor 2 1* 2") {
    Dfa fina = builtin("fina");
    CHECK(fina.accepts(Word{2}));
    CHECK(fina.accepts(Word{2, 0, 2}));
    CHECK_FALSE(fina.accepts(Word{2, 2}));
    CHECK_FALSE(fina.accepts(Word{2, 1, 2}));
    CHECK_FALSE(fina.accepts(Word{2, 1, 1, 2}));
    CHECK_FALSE(fina.accepts(Word{1, 2, 1, 2}));

    // Exhaustive agreement with the combinatorial description up to
    // length 6: nonzero lead and no banned factor.
    for (Word const& w : all_words(3, 6)) {
        bool want = (w.empty() || w[0] != 0) && !has_factor_two_ones_two(w);
        CAPTURE(format_word(w, fina.alphabet));
        CHECK(fina.accepts(w) == want);
    }
}

TEST_CASE("spectral fixtures have the right shape") {
    // K1: even positions forced to digit 0, so levels pair up.
    Dfa k1 = builtin("K1");
    CHECK(k1.accepts(Word{0, 3}));
    CHECK(k1.accepts(Word{0, 3, 0}));
    CHECK_FALSE(k1.accepts(Word{1}));

    for (auto name : {"K1", "K2", "K3", "K4"}) {
        CAPTURE(name);
        Dfa d = builtin(name);
        CHECK(check_pce(d).ok());
        CHECK(d.accepts(Word{}));
    }
}

TEST_CASE("prefix-closed extendable check") {
    CHECK(check_pce(builtin("base2")).ok());
    CHECK(check_pce(builtin("base10")).ok());
    CHECK(check_pce(builtin("fibonacci")).ok());
    CHECK(check_pce(builtin("fina")).ok());

    // {1}: the initial state is not final.
    Dfa only_one = make_dfa(2, 2, 0, {1}, {{0, 1, 1}});
    auto v1 = check_pce(only_one);
    CHECK_FALSE(v1.ok());
    CHECK(v1.kind == PceVerdict::Kind::not_prefix_closed);

    // {e, 1}: prefix-closed but "1" has no continuation.
    Dfa stub = make_dfa(2, 2, 0, {0, 1}, {{0, 1, 1}});
    auto v2 = check_pce(stub);
    CHECK_FALSE(v2.ok());
    CHECK(v2.kind == PceVerdict::Kind::not_extendable);
    CHECK(v2.witness_state == 1);
}

TEST_CASE("trim drops unreachable and dead states") {
    // States 2 and 3 are unreachable; the language is 1 0*.
    Dfa junk = make_dfa(4, 2, 0, {0, 1}, {{0, 1, 1}, {1, 0, 1}, {2, 0, 3}});
    Dfa t = trim(junk);
    CHECK(t.state_count() == 2);

    // State 2 is reachable but dead (not final, no way out).
    Dfa dead = make_dfa(3, 2, 0, {0, 1}, {{0, 1, 1}, {1, 0, 1}, {0, 0, 2}});
    Dfa td = trim(dead);
    CHECK(td.state_count() == 2);
    for (Word const& w : all_words(2, 5))
        CHECK(td.accepts(w) == dead.accepts(w));
}

TEST_CASE("dfa file round trip") {
    Dfa fib = builtin("fibonacci");
    std::istringstream in(serialize_dfa(fib));
    Dfa back = parse_dfa(in);
    CHECK(back.initial == fib.initial);
    CHECK(back.final_states == fib.final_states);
    CHECK(back.trans == fib.trans);
    CHECK(back.alphabet == fib.alphabet);
}

TEST_CASE("dfa file parsing") {
    std::istringstream ok("# comment\nstates 2\ninitial 0\ntrans 0 1 1\ntrans 1 0 1\n");
    Dfa d = parse_dfa(ok);
    CHECK(d.state_count() == 2);
    // No finals line: every state accepts.
    CHECK(d.final_states == std::vector<bool>{true, true});
    CHECK(d.accepts(Word{1, 0, 0}));

    std::istringstream missing("initial 0\n");
    CHECK_THROWS_AS(parse_dfa(missing), std::invalid_argument);
    std::istringstream badinit("states 2\ninitial 7\n");
    CHECK_THROWS_AS(parse_dfa(badinit), std::invalid_argument);
    std::istringstream junk("states 1\ninitial 0\nedges 0 0 0\n");
    CHECK_THROWS_AS(parse_dfa(junk), std::invalid_argument);
    std::istringstream range("states 2\ninitial 0\nfinals 5\n");
    CHECK_THROWS_AS(parse_dfa(range), std::invalid_argument);
}
