#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "carry/analyzer.hpp"

using namespace carry;

namespace {

Signature sig_of(std::vector<int> prefix, std::vector<int> period) {
    return Signature{std::move(prefix), Rhythm{std::move(period)}};
}

BigRat reduced(long n, long d) {
    BigRat r(n, d);
    r.canonicalize();
    return r;
}

// carry sum from a raw stream pass, no side channels involved
BigInt stream_scp(SystemSource const& src, std::uint64_t n) {
    BigInt total = 0;
    src.stream(n, [&](std::uint64_t, std::uint64_t cp) { total += (unsigned long)cp; });
    return total;
}

}  // namespace

TEST_CASE("filtered mean follows from counts alone") {
    SystemSource base2 = source_from_signature(sig_of({}, {2}), "base 2");
    CHECK(filtered_cp(base2, 6) == reduced(127, 64));
    CHECK(filtered_cp(base2, 1) == reduced(3, 2));

    SystemSource base3 = source_from_signature(sig_of({}, {3}), "base 3");
    CHECK(filtered_cp(base3, 8) == reduced(19682, 13122));

    SystemSource h = source_from_h_language();
    CHECK(filtered_cp(h, 15) == reduced(131054, 65535));
    CHECK(filtered_cp(h, 15) > reduced(195, 100));
}

TEST_CASE("filtered mean equals the enumerated mean at a level boundary") {
    // two unrelated sources, same identity: summing the stream to v(l)
    // must land exactly on the count-only formula
    SystemSource fib = source_from_dfa(builtin("fibonacci"), "fibonacci");
    for (std::size_t l : {3, 7, 12}) {
        std::uint64_t vl = fib.cumulative_count(l).get_ui();
        BigRat mean = BigRat(stream_scp(fib, vl)) / BigRat((unsigned long)vl);
        CHECK(mean == filtered_cp(fib, l));
    }

    SystemSource skew = source_from_signature(sig_of({4}, {3, 2}), "skew");
    std::uint64_t v6 = skew.cumulative_count(6).get_ui();
    BigRat mean = BigRat(stream_scp(skew, v6)) / BigRat((unsigned long)v6);
    CHECK(mean == filtered_cp(skew, 6));
}

TEST_CASE("running mean report marks powers of two and level boundaries") {
    SystemSource fib = source_from_dfa(builtin("fibonacci"), "fibonacci");
    CpReport rep = empirical_cp(fib, 100);
    CHECK(rep.system == "fibonacci");
    CHECK(rep.n == 100);
    REQUIRE_FALSE(rep.checkpoints.empty());
    CHECK(rep.checkpoints.back().n == 100);

    std::set<std::uint64_t> at;
    for (auto const& c : rep.checkpoints) at.insert(c.n);
    for (std::uint64_t n : {1ull, 64ull, 100ull}) CHECK(at.count(n) == 1);
    // level boundaries that are not powers of two
    for (std::uint64_t n : {13ull, 21ull, 34ull, 55ull, 89ull}) CHECK(at.count(n) == 1);

    // each checkpoint mean is its own prefix mean
    for (auto const& c : rep.checkpoints) {
        CHECK(c.mean == BigRat(c.scp) / BigRat((unsigned long)c.n));
        CHECK(BigInt(stream_scp(fib, c.n)) == c.scp);
    }
    CHECK(rep.mean == rep.checkpoints.back().mean);
    CHECK(rep.max_cp >= 5);

    // predicted limit comes from the growth decision and is close by n=100
    REQUIRE(rep.theoretical.has_value());
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(*rep.theoretical == Catch::Approx(phi / (phi - 1.0)).epsilon(1e-9));
    CHECK(rep.provenance == "dominant-eigenvalue rate lambda/(lambda-1)");
    CHECK(std::abs(to_double(rep.mean) - *rep.theoretical) < 0.2);
}

TEST_CASE("probe agrees between the closed form and the raw stream") {
    SystemSource exact = source_from_dfa(builtin("base3"), "base 3");
    SystemSource plain = source_from_dfa(builtin("base3"), "base 3");
    plain.exact_scp = nullptr;  // force the streaming path
    REQUIRE(exact.exact_scp);

    std::vector<BigInt> points{BigInt(10), BigInt(100), BigInt(729), BigInt(5000)};
    std::vector<ProbeRow> a = probe(exact, points);
    std::vector<ProbeRow> b = probe(plain, points);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].n == b[i].n);
        CHECK(a[i].scp == b[i].scp);
        CHECK(a[i].mean == b[i].mean);
    }
    // 729 = v(6), so the mean there is the filtered one
    CHECK(a[2].mean == filtered_cp(exact, 6));
}

TEST_CASE("probe points are reported in ascending order with exact means") {
    SystemSource h = source_from_h_language();
    std::vector<ProbeRow> rows = probe(h, {BigInt(23), BigInt(5)});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 5);
    CHECK(rows[0].scp == 6);
    CHECK(rows[0].mean == reduced(6, 5));
    CHECK(rows[1].n == 23);
    CHECK(rows[1].mean == BigRat(rows[1].scp) / 23);
}

TEST_CASE("growth diagnostics separate steady from alternating ratios") {
    SystemSource base2 = source_from_signature(sig_of({}, {2}), "base 2");
    CHECK(local_growth(base2, 12).verdict == "converging");

    SystemSource fib = source_from_dfa(builtin("fibonacci"), "fibonacci");
    GrowthReport g = local_growth(fib, 14);
    CHECK(g.verdict == "converging");
    REQUIRE(g.rows.size() >= 14);
    CHECK(g.rows[5].u == 5);

    SystemSource k1 = source_from_dfa(builtin("K1"), "K1");
    CHECK(local_growth(k1, 14).verdict == "oscillating");

    SystemSource bare;
    bare.stream = base2.stream;
    CHECK_THROWS_AS(local_growth(bare, 5), std::invalid_argument);
}

TEST_CASE("source factories carry their own predicted limits") {
    SystemSource r32 = source_from_rational_base(RationalBase{3, 2});
    CHECK(r32.name == "base 3/2");
    REQUIRE(r32.theoretical_exact.has_value());
    CHECK(*r32.theoretical_exact == 3);
    CHECK(r32.provenance == "periodic signature rate p/(p-q)");

    SystemSource ten = source_from_rational_base(RationalBase{10, 1});
    CHECK(ten.name == "base 10");
    CHECK(*ten.theoretical_exact == reduced(10, 9));

    // period does not outgrow its length: no rate offered
    SystemSource flat = source_from_signature(sig_of({4}, {1}), "flat");
    CHECK_FALSE(flat.theoretical.has_value());
    CHECK_FALSE(flat.theoretical_exact.has_value());

    SystemSource k1 = source_from_dfa(builtin("K1"), "K1");
    CHECK_FALSE(k1.theoretical.has_value());

    SystemSource quiet = source_from_dfa(builtin("fibonacci"), "fibonacci", false);
    CHECK_FALSE(quiet.theoretical.has_value());

    Basis fb = Basis::from_recurrence({BigInt(1), BigInt(1)}, {BigInt(1), BigInt(2)});
    SystemSource gns = source_from_basis(fb, "fibonacci scale");
    CHECK_FALSE(gns.theoretical.has_value());
    CHECK(gns.cumulative_count(4) == 8);

    BetaProfile golden = quasi_greedy(beta_expand_one(make_beta(parse_poly_line("1 -1 -1"))));
    SystemSource gb = source_from_beta(golden, "golden");
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    REQUIRE(gb.theoretical.has_value());
    CHECK(*gb.theoretical == Catch::Approx(phi / (phi - 1.0)).epsilon(1e-12));
    CHECK_FALSE(gb.theoretical_exact.has_value());

    BetaProfile two = quasi_greedy(beta_expand_one(make_beta(parse_poly_line("1 -2"))));
    SystemSource ib = source_from_beta(two, "binary");
    REQUIRE(ib.theoretical_exact.has_value());
    CHECK(*ib.theoretical_exact == 2);
}

TEST_CASE("reports serialize to stable shapes") {
    SystemSource base2 = source_from_signature(sig_of({}, {2}), "base 2");
    CpReport rep = empirical_cp(base2, 64);
    CHECK(rep.mean == reduced(127, 64));

    nlohmann::ordered_json j = cp_report_json(rep);
    CHECK(j["meta"]["system"] == "base 2");
    CHECK(j["meta"]["n"] == 64);
    CHECK(j["meta"]["theoretical_exact"] == "2");
    CHECK(j["scp"] == "127");
    CHECK(j["mean_exact"] == "127/64");
    CHECK(j["mean"] == "1.984375");
    REQUIRE(j["checkpoints"].is_array());
    CHECK(j["checkpoints"].back()["checkpoint"] == 64);
    CHECK(j["checkpoints"].back()["scp"] == "127");

    std::string csv = cp_report_csv(rep);
    CHECK(csv.find("# system: base 2\n") == 0);
    CHECK(csv.find("# theoretical: 2\n") != std::string::npos);
    CHECK(csv.find("checkpoint,scp,mean\n") != std::string::npos);
    CHECK(csv.rfind("64,127,1.984375\n") == csv.size() - 16);

    // equal inputs serialize to equal bytes
    CpReport rep2 = empirical_cp(base2, 64);
    CHECK(cp_report_json(rep2).dump(2) == j.dump(2));
    CHECK(cp_report_csv(rep2) == csv);
}
