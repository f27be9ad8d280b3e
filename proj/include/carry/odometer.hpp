#pragma once

/**
 * @file odometer.hpp
 * @brief The increment map on digit tails: stabilization of the
 *        successor under growing truncations, empirical cylinder
 *        measures, the layered decomposition of the mean carry with an
 *        exact tail bound, and the truncated-carry summation identity.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gns.hpp"
#include "numeric.hpp"
#include "words.hpp"

namespace carry {

/// Successor of every trailing truncation of the input, watched for a
/// stable low-order window. The input is a digit tail (most significant
/// first); every truncation must satisfy the greedy cut conditions.
struct OdometerStep {
    bool stabilized = false;
    Word full_successor;        // successor of the whole input
    Word window;                // stabilized low-order digits
    std::size_t stable_from = 0; // truncation length where the window settled
};

inline OdometerStep odometer_step(Basis const& b, Word const& s,
                                  std::size_t window_digits = 32,
                                  std::size_t stable_runs = 8) {
    std::size_t L = s.length();
    if (L == 0) throw std::invalid_argument("empty digit tail");

    // One pass validates every truncation: each cut value must stay
    // below the next basis term.
    BigInt tail = 0;
    for (std::size_t i = 0; i < L; ++i) {
        int d = s[L - 1 - i];
        if (d < 0) throw std::invalid_argument("negative digit");
        tail += BigInt(d) * b.G(i);
        if (tail >= b.G(i + 1))
            throw std::invalid_argument(
                "truncation of length " + std::to_string(i + 1) +
                " violates the greedy cut condition");
    }

    auto low_window = [&](Word const& w) {
        std::size_t take = std::min(window_digits, w.length());
        std::vector<int> win(window_digits, 0);
        for (std::size_t t = 0; t < take; ++t)
            win[window_digits - 1 - t] = w[w.length() - 1 - t];
        return Word(std::move(win));
    };

    OdometerStep out;
    BigInt val = 0;
    Word last_window;
    std::size_t run = 0;
    for (std::size_t j = 1; j <= L; ++j) {
        val += BigInt(s[L - j]) * b.G(j - 1);
        Word succ = greedy_repr(b, val + 1);
        Word win = low_window(succ);
        if (j > 1 && win == last_window) {
            ++run;
        } else {
            run = 1;
            out.stable_from = j;
        }
        last_window = std::move(win);
        if (j == L) out.full_successor = std::move(succ);
    }
    out.window = last_window;
    out.stabilized = run >= stable_runs;
    if (!out.stabilized) out.stable_from = 0;
    return out;
}

struct CylinderQuery {
    Word word;
    std::uint64_t n;
};

/// nu_N(cyl(w)): the fraction of i < N whose zero-padded representation
/// ends with w. Counted by rolling the representation once.
inline BigRat cylinder_measure(Basis const& b, CylinderQuery const& query) {
    if (query.n == 0) throw std::invalid_argument("empty sample");
    Word const& w = query.word;
    std::uint64_t hits = 0;
    std::vector<int> cur; // digits of repr(i), most significant first
    std::vector<Word> gmax;
    detail::ensure_gmax(b, gmax, 1);
    for (std::uint64_t i = 0; i < query.n; ++i) {
        bool match = true;
        for (std::size_t t = 0; t < w.length(); ++t) {
            int digit = t < cur.size() ? cur[cur.size() - 1 - t] : 0; // pad
            if (digit != w[w.length() - 1 - t]) { match = false; break; }
        }
        if (match) ++hits;
        std::size_t m = detail::max_suffix_index(gmax, cur);
        if (m == cur.size()) {
            cur.assign(cur.size() + 1, 0);
            cur[0] = 1;
            detail::ensure_gmax(b, gmax, cur.size() + 1);
        } else {
            cur[cur.size() - 1 - m] += 1;
            for (std::size_t t = 0; t < m; ++t) cur[cur.size() - 1 - t] = 0;
        }
    }
    BigRat nu((unsigned long)hits, (unsigned long)query.n);
    nu.canonicalize();
    return nu;
}

/// Counts of cyl(g_k) for k = 0..K in one carry-stream pass: a value
/// whose longest maximal suffix has length m lies in cyl(g_k) exactly
/// for the k reached from m by iterating the suffix map J.
inline std::vector<std::uint64_t> gmax_cylinder_counts(Basis const& b, std::size_t K,
                                                       std::uint64_t N) {
    std::vector<std::uint64_t> counts(K + 1, 0);
    counts[0] = N; // cyl(epsilon) is everything
    std::vector<std::size_t> jt = j_table(b, std::max<std::size_t>(K, 1));
    gns_cp_stream(b, N, [&](std::uint64_t, std::uint64_t cp) {
        std::size_t m = (std::size_t)cp - 1;
        if (m >= jt.size()) {
            auto wider = j_table(b, m);
            jt = std::move(wider);
        }
        for (std::size_t k = m; k >= 1;) {
            if (k <= K) ++counts[k];
            std::size_t nk = jt[k];
            if (nk == 0) break;
            k = nk;
        }
    });
    return counts;
}

struct LayerRow {
    std::size_t k = 0;
    Word gk;
    std::size_t jk = 0;       // longest maximal proper suffix length
    std::uint64_t count = 0;  // hits of cyl(g_k) among i < n
    BigRat nu;                // count / n
    BigRat cumulative;        // estimate through this layer
    BigRat tail_bound;        // crude bound on the mass past this layer
};

struct LayerTable {
    std::uint64_t n = 0;
    std::size_t layers = 0;
    std::vector<LayerRow> rows;
    BigRat estimate;          // 1 + sum of (k - J(k)) nu_N(cyl(g_k))
    BigRat tail_bound;        // bound for the layers past K
};

/// Layered estimate of the mean carry: carries decompose over maximal
/// suffixes, giving CP = 1 + sum_k (k - J(k)) mu(cyl(g_k)); the table
/// reports the empirical version at sample size n plus exact tail
/// bounds sum_(j>k) (j+1)/G(j), evaluated with 64 explicit terms and a
/// geometric remainder at the smallest observed term ratio.
inline LayerTable layer_cp(Basis const& b, std::size_t K, std::uint64_t N) {
    if (K < 1) throw std::invalid_argument("need at least one layer");
    LayerTable table;
    table.n = N;
    table.layers = K;

    auto jt = j_table(b, K);
    auto counts = gmax_cylinder_counts(b, K, N);

    // Tail bounds, built backwards from the crude series.
    std::size_t T = K + 64;
    BigRat rho;
    bool have_rho = false;
    for (std::size_t j = 1; j <= T; ++j) {
        BigRat r(b.G(j + 1));
        r /= BigRat(b.G(j));
        if (!have_rho || r < rho) { rho = r; have_rho = true; }
    }
    if (!have_rho || rho <= 1)
        throw std::domain_error("basis ratios do not stay above 1; no geometric tail bound");
    BigRat remainder = (BigRat((unsigned long)(T + 1)) / (rho - 1) + rho / ((rho - 1) * (rho - 1)))
                       / BigRat(b.G(T));
    std::vector<BigRat> tail(K + 1);
    BigRat acc = remainder;
    for (std::size_t j = T; j > K; --j) acc += BigRat((unsigned long)(j + 1)) / BigRat(b.G(j));
    tail[K] = acc;
    for (std::size_t k = K; k > 1; --k)
        tail[k - 1] = tail[k] + BigRat((unsigned long)(k + 1)) / BigRat(b.G(k));

    BigRat cumulative = 1;
    for (std::size_t k = 1; k <= K; ++k) {
        LayerRow row;
        row.k = k;
        row.gk = g_max(b, k);
        row.jk = jt[k];
        row.count = counts[k];
        row.nu = BigRat((unsigned long)counts[k], (unsigned long)N);
        row.nu.canonicalize();
        cumulative += BigRat((unsigned long)(k - jt[k])) * row.nu;
        row.cumulative = cumulative;
        row.tail_bound = tail[k];
        table.rows.push_back(std::move(row));
    }
    table.estimate = cumulative;
    table.tail_bound = tail[K];
    return table;
}

inline std::string layer_table_csv(LayerTable const& table, Alphabet const& a) {
    std::string out;
    out += "# n: " + std::to_string(table.n) + "\n";
    out += "# layers: " + std::to_string(table.layers) + "\n";
    out += "# estimate: " + decimal_string(table.estimate) + "\n";
    out += "# tail_bound: " + decimal_string(table.tail_bound) + "\n";
    out += "k,g_k,J_k,weight,nu,cumulative,tail_bound\n";
    for (auto const& row : table.rows) {
        out += std::to_string(row.k) + "," + format_word(row.gk, a) + "," +
               std::to_string(row.jk) + "," + std::to_string(row.k - row.jk) + "," +
               decimal_string(row.nu) + "," + decimal_string(row.cumulative) + "," +
               decimal_string(row.tail_bound) + "\n";
    }
    return out;
}

inline nlohmann::ordered_json layer_table_json(LayerTable const& table, Alphabet const& a) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    meta["n"] = table.n;
    meta["layers"] = table.layers;
    j["meta"] = meta;
    j["estimate_exact"] = rational_string(table.estimate);
    j["estimate"] = decimal_string(table.estimate);
    j["tail_bound"] = decimal_string(table.tail_bound);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (auto const& row : table.rows) {
        nlohmann::ordered_json r;
        r["k"] = row.k;
        r["g_k"] = format_word(row.gk, a);
        r["J_k"] = row.jk;
        r["weight"] = row.k - row.jk;
        r["count"] = row.count;
        r["nu"] = decimal_string(row.nu);
        r["cumulative"] = decimal_string(row.cumulative);
        r["tail_bound"] = decimal_string(row.tail_bound);
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

/// Exact check of the truncated-carry identity: writing f_k(n) for
/// cp(n) when cp(n) <= k+1 and 0 otherwise, every 0 < N < G(k+1)
/// satisfies sum_(n<N) f_k = sum_(n<N) f_(k-1) + floor(N/G(k)) (k+1).
struct FkIdentityReport {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::uint64_t>> failure; // (k, N)
};

inline FkIdentityReport fk_identity_check(Basis const& b, std::size_t kmax,
                                          std::vector<std::uint64_t> const& samples) {
    FkIdentityReport rep;
    std::uint64_t top = 0;
    for (auto n : samples) top = std::max(top, n);
    if (top == 0) return rep;

    std::vector<unsigned long long> sums(kmax + 2, 0); // sums[k+1] = sum f_k
    std::vector<std::uint64_t> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::size_t next = 0;

    auto check_at = [&](std::uint64_t N) {
        for (std::size_t k = 0; k <= kmax; ++k) {
            if (BigInt((unsigned long)N) >= b.G(k + 1)) continue;
            BigInt lhs((unsigned long)sums[k + 1]);
            BigInt quot = BigInt((unsigned long)N) / b.G(k);
            BigInt rhs = BigInt((unsigned long)sums[k]) + quot * BigInt((unsigned long)(k + 1));
            if (lhs != rhs && rep.ok) {
                rep.ok = false;
                rep.failure = {k, N};
            }
        }
    };

    gns_cp_stream(b, top, [&](std::uint64_t i, std::uint64_t cp) {
        for (std::size_t k = 0; k <= kmax; ++k)
            if (cp <= k + 1) sums[k + 1] += cp;
        while (next < sorted.size() && i + 1 == sorted[next]) {
            check_at(i + 1);
            ++next;
        }
    });
    return rep;
}

} // namespace carry
