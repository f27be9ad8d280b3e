#pragma once

/**
 * @file counting.hpp
 * @brief Exact per-state word counting for a DFA language, radix-order
 *        enumeration, successor, ranking/unranking, and the closed-form
 *        carry sum scp(N) computed without enumeration.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dfa.hpp"
#include "numeric.hpp"
#include "words.hpp"

namespace carry {

/// Per-state, per-length counts over the trimmed automaton.
/// u(l, q) = words of exact length l accepted from q;
/// v(l, q) = words of length <= l. Tables grow on demand up to the
/// length budget.
class CountTable {
public:
    explicit CountTable(Dfa const& d, int length_budget = 4096)
        : dfa_(trim(d)), budget_(length_budget) {
        int n = dfa_.state_count();
        u_.push_back(std::vector<BigInt>(n));
        v_.push_back(std::vector<BigInt>(n));
        for (int q = 0; q < n; ++q) {
            u_[0][q] = dfa_.final_states[q] ? 1 : 0;
            v_[0][q] = u_[0][q];
        }
        reach_.push_back(std::vector<bool>(n));
        for (int q = 0; q < n; ++q) reach_[0][q] = dfa_.final_states[q];
    }

    Dfa const& dfa() const { return dfa_; }
    int computed_length() const { return (int)u_.size() - 1; }

    void ensure(int lmax) {
        if (lmax > budget_)
            throw std::length_error("length budget exceeded in count table");
        int n = dfa_.state_count();
        while ((int)u_.size() <= lmax) {
            auto const& prev = u_.back();
            std::vector<BigInt> row(n);
            std::vector<bool> rrow(n, false);
            for (int q = 0; q < n; ++q) {
                for (int a = 0; a < dfa_.alphabet.size; ++a) {
                    int t = dfa_.trans[q][a];
                    if (t >= 0) {
                        row[q] += prev[t];
                        if (reach_.back()[t]) rrow[q] = true;
                    }
                }
            }
            std::vector<BigInt> vrow(n);
            for (int q = 0; q < n; ++q) vrow[q] = v_.back()[q] + row[q];
            u_.push_back(std::move(row));
            v_.push_back(std::move(vrow));
            reach_.push_back(std::move(rrow));
        }
    }

    BigInt const& u(int l, int q) { ensure(l); return u_[l][q]; }
    BigInt const& v(int l, int q) { ensure(l); return v_[l][q]; }
    BigInt const& u(int l) { return u(l, dfa_.initial); }
    BigInt const& v(int l) { return v(l, dfa_.initial); }

    /// True when some accepted word of exact length m starts at q.
    bool reach(int q, int m) {
        if (m > budget_) throw std::length_error("length budget exceeded");
        ensure(m);
        return reach_[m][q];
    }

    int budget() const { return budget_; }

private:
    Dfa dfa_;
    int budget_;
    std::vector<std::vector<BigInt>> u_, v_;
    std::vector<std::vector<bool>> reach_;
};

/// Eagerly filled table: counts for every state and length <= lmax.
inline CountTable count(Dfa const& d, int lmax) {
    CountTable ct(d);
    ct.ensure(lmax);
    return ct;
}

/// Rank of w in the radix order of L: all strictly shorter words plus
/// the same-length words that branch off below w's path.
inline BigInt value_of(CountTable& ct, Word const& w) {
    Dfa const& d = ct.dfa();
    if (!d.accepts(w)) throw std::invalid_argument("word not in language");
    int L = (int)w.length();
    BigInt n = L > 0 ? ct.v(L - 1) : BigInt(0);
    int q = d.initial;
    for (int j = 0; j < L; ++j) {
        for (int a = 0; a < w[j]; ++a) {
            int t = d.trans[q][a];
            if (t >= 0) n += ct.u(L - 1 - j, t);
        }
        q = d.trans[q][w[j]];
    }
    return n;
}

/// Inverse of value_of: greedy digit selection against the same counts.
inline Word repr_of(CountTable& ct, BigInt const& n) {
    if (n < 0) throw std::invalid_argument("negative rank");
    Dfa const& d = ct.dfa();
    int L = 0;
    while (ct.v(L) <= n) {
        if (L >= ct.budget())
            throw std::length_error("rank exceeds language size within length budget");
        ++L;
    }
    BigInt rank = n - (L > 0 ? ct.v(L - 1) : BigInt(0));
    Word w;
    int q = d.initial;
    for (int j = 0; j < L; ++j) {
        for (int a = 0; a < d.alphabet.size; ++a) {
            int t = d.trans[q][a];
            if (t < 0) continue;
            BigInt const& c = ct.u(L - 1 - j, t);
            if (rank < c) {
                w.digits.push_back(a);
                q = t;
                break;
            }
            rank -= c;
        }
    }
    return w;
}

/// Next word of L in radix order: rewrite the rightmost position that
/// admits a larger digit whose target still completes to the exact
/// remaining length, then complete minimally; otherwise the minimal
/// word one digit longer.
inline Word successor(CountTable& ct, Word const& w) {
    Dfa const& d = ct.dfa();
    int L = (int)w.length();
    std::vector<int> path(L + 1);
    path[0] = d.initial;
    for (int j = 0; j < L; ++j) {
        int t = d.trans[path[j]][w[j]];
        if (t < 0) throw std::invalid_argument("word not in language");
        path[j + 1] = t;
    }
    if (!d.final_states[path[L]]) throw std::invalid_argument("word not in language");

    auto complete_min = [&](Word& out, int q, int remaining) {
        for (int m = remaining; m > 0; --m) {
            for (int a = 0; a < d.alphabet.size; ++a) {
                int t = d.trans[q][a];
                if (t >= 0 && ct.reach(t, m - 1)) {
                    out.digits.push_back(a);
                    q = t;
                    break;
                }
            }
        }
    };

    for (int j = L; j >= 1; --j) {
        for (int b = w[j - 1] + 1; b < d.alphabet.size; ++b) {
            int t = d.trans[path[j - 1]][b];
            if (t >= 0 && ct.reach(t, L - j)) {
                Word out(std::vector<int>(w.digits.begin(), w.digits.begin() + (j - 1)));
                out.digits.push_back(b);
                complete_min(out, t, L - j);
                return out;
            }
        }
    }
    int len = L + 1;
    while (!ct.reach(d.initial, len)) ++len; // budget guard inside reach
    Word out;
    complete_min(out, d.initial, len);
    return out;
}

/// Streams the first N words of L in radix order. The emitted count can
/// fall short of N when the language is finite.
template <class Emit>
void enumerate(Dfa const& d0, std::uint64_t N, Emit&& emit) {
    Dfa d = trim(d0);
    struct Node { std::int64_t parent; int digit; int state; };
    std::vector<Node> arena;
    std::vector<std::int64_t> level{-1};
    arena.push_back({-1, -1, d.initial});
    std::uint64_t emitted = 0;
    std::vector<int> scratch;

    auto emit_node = [&](std::int64_t idx) {
        scratch.clear();
        for (std::int64_t i = idx; i >= 0 && arena[i].digit >= 0; i = arena[i].parent)
            scratch.push_back(arena[i].digit);
        Word w(std::vector<int>(scratch.rbegin(), scratch.rend()));
        emit(w);
        ++emitted;
    };

    level[0] = 0;
    if (d.final_states[d.initial]) emit_node(0);
    while (emitted < N && !level.empty()) {
        std::vector<std::int64_t> next;
        for (std::int64_t idx : level) {
            for (int a = 0; a < d.alphabet.size && emitted < N; ++a) {
                int t = d.trans[arena[idx].state][a];
                if (t < 0) continue;
                arena.push_back({idx, a, t});
                std::int64_t child = (std::int64_t)arena.size() - 1;
                next.push_back(child);
                if (d.final_states[t]) emit_node(child);
            }
            if (emitted >= N) break;
        }
        level = std::move(next);
    }
}

/// Number of tree nodes strictly left of the root-to-w path, counted
/// over all lengths up to |w|.
inline BigInt left_bank_count(CountTable& ct, Word const& w) {
    Dfa const& d = ct.dfa();
    int L = (int)w.length();
    BigInt total = 0;
    int q = d.initial;
    for (int j = 0; j < L; ++j) {
        for (int a = 0; a < w[j]; ++a) {
            int t = d.trans[q][a];
            if (t >= 0) total += ct.v(L - 1 - j, t);
        }
        q = d.trans[q][w[j]];
        if (q < 0) throw std::invalid_argument("word leaves the automaton");
    }
    return total;
}

/// Exact scp(N) = sum of cp(i) for i < N, in time polynomial in
/// |repr(N)|: the cumulative level counts plus the left bank of repr(N).
inline BigInt fast_scp(CountTable& ct, BigInt const& N) {
    if (N <= 0) return 0;
    Word w = repr_of(ct, N);
    BigInt total = 0;
    for (int j = 0; j < (int)w.length(); ++j) total += ct.v(j);
    total += left_bank_count(ct, w);
    return total;
}

/// Carry stream for a DFA source: consecutive radix-order words via
/// successor, cp = changed trailing positions.
template <class Emit>
void dfa_cp_stream(CountTable& ct, std::uint64_t N, Emit&& emit) {
    Word w; // repr(0)
    for (std::uint64_t i = 0; i < N; ++i) {
        Word next = successor(ct, w);
        emit(i, (std::uint64_t)delta(w, next));
        w = std::move(next);
    }
}

} // namespace carry
