#pragma once

/**
 * @file analyzer.hpp
 * @brief Empirical carry statistics over any numeration source: running
 *        means with checkpoints, the per-level filtered mean, probes at
 *        chosen indices, and local growth diagnostics, plus JSON and
 *        CSV report forms.
 *
 * A source bundles a carry stream with optional exact side channels:
 * cumulative level counts, a closed form for the carry sum, and a
 * predicted limit with a note saying which argument produced it.
 * Reports carry exact rationals next to 15-digit decimals and contain
 * no timestamps, so equal runs serialize to equal bytes.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "beta.hpp"
#include "counting.hpp"
#include "dfa.hpp"
#include "gns.hpp"
#include "numeric.hpp"
#include "rational_base.hpp"
#include "signature.hpp"
#include "spectral.hpp"

namespace carry {

using CpEmit = std::function<void(std::uint64_t, std::uint64_t)>;

struct SystemSource {
    std::string name;
    std::function<void(std::uint64_t, CpEmit const&)> stream;
    std::function<BigInt(std::size_t)> cumulative_count; // v(l); null when unknown
    std::function<BigInt(BigInt const&)> exact_scp;      // closed-form carry sum; null when unknown
    std::optional<double> theoretical;
    std::optional<BigRat> theoretical_exact;
    std::string provenance; // which closed form supplied `theoretical`
};

struct CpCheckpoint {
    std::uint64_t n;
    BigInt scp;
    BigRat mean;
};

struct CpReport {
    std::string system;
    std::uint64_t n = 0;
    BigInt scp_total;
    BigRat mean;
    std::uint64_t max_cp = 0;
    std::optional<double> theoretical;
    std::optional<BigRat> theoretical_exact;
    std::string provenance;
    std::vector<CpCheckpoint> checkpoints;
};

/// Streams N carries and records the running mean at powers of two, at
/// level boundaries when the source knows them, and at N itself.
inline CpReport empirical_cp(SystemSource const& src, std::uint64_t N) {
    CpReport rep;
    rep.system = src.name;
    rep.n = N;
    rep.theoretical = src.theoretical;
    rep.theoretical_exact = src.theoretical_exact;
    rep.provenance = src.provenance;

    std::set<std::uint64_t> marks;
    for (std::uint64_t p = 1; p <= N && p != 0; p *= 2) marks.insert(p);
    if (src.cumulative_count) {
        for (std::size_t l = 0;; ++l) {
            BigInt v = src.cumulative_count(l);
            if (v > (unsigned long)N) break;
            marks.insert(v.get_ui());
            if (l > 4096) break;
        }
    }
    if (N > 0) marks.insert(N);

    std::vector<std::uint64_t> sorted(marks.begin(), marks.end());
    std::size_t next = 0;
    unsigned long long acc = 0;
    std::uint64_t maxcp = 0, seen = 0;
    src.stream(N, [&](std::uint64_t i, std::uint64_t cp) {
        acc += cp;
        seen = i + 1;
        if (cp > maxcp) maxcp = cp;
        if (next < sorted.size() && i + 1 == sorted[next]) {
            BigInt scp((unsigned long)acc);
            rep.checkpoints.push_back({i + 1, scp, BigRat(scp) / BigRat((unsigned long)(i + 1))});
            ++next;
        }
    });
    rep.n = seen; // a finite language can run out early
    rep.scp_total = BigInt((unsigned long)acc);
    rep.max_cp = maxcp;
    rep.mean = seen > 0 ? BigRat(rep.scp_total) / BigRat((unsigned long)seen) : BigRat(0);
    return rep;
}

/// Mean carry over the first v(l) values, exact from counts alone: the
/// per-level carry total of a prefix-closed extendable language equals
/// v(l), so the sum telescopes to v(0) + ... + v(l).
inline BigRat filtered_cp(SystemSource const& src, std::size_t l) {
    if (!src.cumulative_count)
        throw std::invalid_argument("source has no level counts");
    BigInt sum = 0;
    for (std::size_t j = 0; j <= l; ++j) sum += src.cumulative_count(j);
    BigInt vl = src.cumulative_count(l);
    return BigRat(sum) / BigRat(vl);
}

struct ProbeRow {
    BigInt n;
    BigInt scp;
    BigRat mean;
};

/// scp(n)/n at the given indices; uses the exact carry sum when the
/// source has one, otherwise a single stream pass to the largest index.
inline std::vector<ProbeRow> probe(SystemSource const& src, std::vector<BigInt> points) {
    std::sort(points.begin(), points.end());
    std::vector<ProbeRow> rows;
    if (src.exact_scp) {
        for (auto const& n : points) {
            if (n <= 0) throw std::invalid_argument("probe index must be positive");
            BigInt s = src.exact_scp(n);
            rows.push_back({n, s, BigRat(s) / BigRat(n)});
        }
        return rows;
    }
    if (points.empty()) return rows;
    if (!points.back().fits_ulong_p())
        throw std::invalid_argument("probe index too large for streaming");
    std::uint64_t top = points.back().get_ui();
    std::map<std::uint64_t, BigInt> want;
    for (auto const& n : points) {
        if (n <= 0) throw std::invalid_argument("probe index must be positive");
        want.emplace(n.get_ui(), 0);
    }
    unsigned long long acc = 0;
    src.stream(top, [&](std::uint64_t i, std::uint64_t cp) {
        acc += cp;
        auto it = want.find(i + 1);
        if (it != want.end()) it->second = BigInt((unsigned long)acc);
    });
    for (auto const& [n, s] : want)
        rows.push_back({BigInt((unsigned long)n), s, BigRat(s) / BigRat((unsigned long)n)});
    return rows;
}

struct GrowthRow {
    std::size_t level;
    BigInt u;
    double ratio; // u(l+1)/u(l)
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    std::string verdict; // "converging", "oscillating", or "irregular"
};

/// Ratios of consecutive level counts and a coarse trend label.
inline GrowthReport local_growth(SystemSource const& src, std::size_t lmax) {
    if (!src.cumulative_count)
        throw std::invalid_argument("source has no level counts");
    GrowthReport rep;
    std::vector<BigInt> u;
    BigInt prev = 0;
    for (std::size_t l = 0; l <= lmax + 1; ++l) {
        BigInt v = src.cumulative_count(l);
        u.push_back(v - prev);
        prev = v;
    }
    for (std::size_t l = 0; l <= lmax; ++l) {
        double r = u[l] > 0 ? BigRat(BigRat(u[l + 1]) / BigRat(u[l])).get_d() : 0.0;
        rep.rows.push_back({l, u[l], r});
    }
    std::size_t tail = std::min<std::size_t>(6, rep.rows.size());
    if (tail < 3) {
        rep.verdict = "irregular";
        return rep;
    }
    std::vector<double> r;
    for (std::size_t i = rep.rows.size() - tail; i < rep.rows.size(); ++i)
        r.push_back(rep.rows[i].ratio);
    double lo = r[0], hi = r[0];
    for (double x : r) { lo = std::min(lo, x); hi = std::max(hi, x); }
    bool steady = hi - lo <= 0.01 * std::max(1.0, hi);
    bool alternating = true;
    for (std::size_t i = 0; i + 2 < r.size(); ++i)
        if (std::abs(r[i] - r[i + 2]) > 0.01 * std::max(1.0, hi)) alternating = false;
    if (alternating && hi - lo > 0.01 * std::max(1.0, hi)) rep.verdict = "oscillating";
    else if (steady) rep.verdict = "converging";
    else rep.verdict = "irregular";
    return rep;
}

// --- source factories ---

inline SystemSource source_from_signature(Signature const& sig, std::string name) {
    auto counts = std::make_shared<LevelCounter>();
    auto sigp = std::make_shared<Signature>(sig);
    SystemSource src;
    src.name = std::move(name);
    src.stream = [sigp](std::uint64_t N, CpEmit const& emit) {
        enumerate_with_cp(*sigp, N, [&emit](std::uint64_t i, std::uint64_t cp, std::uint64_t) {
            emit(i, cp);
        });
    };
    src.cumulative_count = [sigp, counts](std::size_t l) -> BigInt {
        if (counts->v.size() <= l) *counts = level_counts(*sigp, (int)l + 1);
        return counts->v[l];
    };
    long p = sig.period.p();
    int q = sig.period.q();
    if (q > 0 && p > q) {
        BigRat cp = theoretical_cp(sig);
        src.theoretical = cp.get_d();
        src.theoretical_exact = cp;
        src.provenance = "periodic signature rate p/(p-q)";
    }
    return src;
}

inline SystemSource source_from_h_language() {
    SystemSource src;
    src.name = "H";
    src.stream = [](std::uint64_t N, CpEmit const& emit) {
        enumerate_h_with_cp(N, [&emit](std::uint64_t i, std::uint64_t cp, std::uint64_t) {
            emit(i, cp);
        });
    };
    src.cumulative_count = [](std::size_t l) -> BigInt {
        // v(l) = 2^(l+1) - 1
        return (BigInt(1) << (l + 1)) - 1;
    };
    return src;
}

inline SystemSource source_from_dfa(Dfa const& d, std::string name, bool with_theory = true) {
    auto ct = std::make_shared<CountTable>(d);
    SystemSource src;
    src.name = std::move(name);
    src.stream = [ct](std::uint64_t N, CpEmit const& emit) {
        dfa_cp_stream(*ct, N, [&emit](std::uint64_t i, std::uint64_t cp) { emit(i, cp); });
    };
    src.cumulative_count = [ct](std::size_t l) -> BigInt { return ct->v((int)l); };
    src.exact_scp = [ct](BigInt const& n) -> BigInt { return fast_scp(*ct, n); };
    if (with_theory) {
        CpDecision dec = decide_cp(d);
        if (dec.determined) {
            src.theoretical = dec.cp_value;
            src.theoretical_exact = dec.cp_exact;
            src.provenance = "dominant-eigenvalue rate lambda/(lambda-1)";
        }
    }
    return src;
}

inline SystemSource source_from_rational_base(RationalBase const& rb) {
    SystemSource src;
    src.name = "base " + std::to_string(rb.p);
    if (rb.q != 1) src.name += "/" + std::to_string(rb.q);
    src.stream = [rb](std::uint64_t N, CpEmit const& emit) {
        rb_cp_stream(rb, N, [&emit](std::uint64_t i, std::uint64_t cp) { emit(i, cp); });
    };
    auto counts = std::make_shared<LevelCounter>();
    auto sigp = std::make_shared<Signature>(rational_base_signature(rb.p, rb.q));
    src.cumulative_count = [sigp, counts](std::size_t l) -> BigInt {
        if (counts->v.size() <= l) *counts = level_counts(*sigp, (int)l + 1);
        return counts->v[l];
    };
    BigRat cp(rb.p, rb.p - rb.q);
    src.theoretical = cp.get_d();
    src.theoretical_exact = cp;
    src.provenance = "periodic signature rate p/(p-q)";
    return src;
}

inline SystemSource source_from_basis(Basis basis, std::string name) {
    auto bp = std::make_shared<Basis>(std::move(basis));
    SystemSource src;
    src.name = std::move(name);
    src.stream = [bp](std::uint64_t N, CpEmit const& emit) {
        gns_cp_stream(*bp, N, [&emit](std::uint64_t i, std::uint64_t cp) { emit(i, cp); });
    };
    src.cumulative_count = [bp](std::size_t l) -> BigInt { return bp->G(l); };
    return src;
}

inline SystemSource source_from_beta(BetaProfile const& prof, std::string name) {
    SystemSource src = source_from_basis(basis_from_beta(prof), std::move(name));
    double b = prof.beta.to_double();
    src.theoretical = b / (b - 1.0);
    if (auto r = prof.beta.exact_rational(); r && *r > 1)
        src.theoretical_exact = *r / (*r - 1);
    src.provenance = "base rate beta/(beta-1)";
    return src;
}

// --- report serialization ---

inline nlohmann::ordered_json cp_report_json(CpReport const& rep) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    meta["system"] = rep.system;
    meta["n"] = rep.n;
    meta["max_cp"] = rep.max_cp;
    if (rep.theoretical) meta["theoretical"] = *rep.theoretical;
    if (rep.theoretical_exact)
        meta["theoretical_exact"] = rational_string(*rep.theoretical_exact);
    if (!rep.provenance.empty()) meta["provenance"] = rep.provenance;
    j["meta"] = meta;
    j["scp"] = rep.scp_total.get_str();
    j["mean_exact"] = rational_string(rep.mean);
    j["mean"] = decimal_string(rep.mean);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (auto const& c : rep.checkpoints) {
        nlohmann::ordered_json row;
        row["checkpoint"] = c.n;
        row["scp"] = c.scp.get_str();
        row["mean"] = decimal_string(c.mean);
        rows.push_back(row);
    }
    j["checkpoints"] = rows;
    return j;
}

inline std::string cp_report_csv(CpReport const& rep) {
    std::string out;
    out += "# system: " + rep.system + "\n";
    out += "# n: " + std::to_string(rep.n) + "\n";
    out += "# max_cp: " + std::to_string(rep.max_cp) + "\n";
    if (rep.theoretical_exact)
        out += "# theoretical: " + rational_string(*rep.theoretical_exact) + "\n";
    else if (rep.theoretical)
        out += "# theoretical: " + decimal_string(BigRat(*rep.theoretical)) + "\n";
    if (!rep.provenance.empty()) out += "# provenance: " + rep.provenance + "\n";
    out += "checkpoint,scp,mean\n";
    for (auto const& c : rep.checkpoints)
        out += std::to_string(c.n) + "," + c.scp.get_str() + "," + decimal_string(c.mean) + "\n";
    return out;
}

} // namespace carry
