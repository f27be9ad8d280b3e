#pragma once

/**
 * @file dfa.hpp
 * @brief Deterministic automata over digit alphabets, trimming, the
 *        prefix-closed/extendable check, and the built-in fixtures.
 */

#include <algorithm>
#include <array>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "words.hpp"

namespace carry {

struct Dfa {
    Alphabet alphabet{2};
    int initial = 0;
    std::vector<bool> final_states;
    // trans[q][a] = target state, -1 if undefined
    std::vector<std::vector<int>> trans;

    int state_count() const { return (int)trans.size(); }

    int step(int q, int a) const {
        if (q < 0 || q >= state_count() || !alphabet.contains(a)) return -1;
        return trans[q][a];
    }

    /// Runs w from the initial state; -1 when the path dies.
    int run(Word const& w) const {
        int q = initial;
        for (int a : w.digits) {
            q = step(q, a);
            if (q < 0) return -1;
        }
        return q;
    }

    bool accepts(Word const& w) const {
        int q = run(w);
        return q >= 0 && final_states[q];
    }
};

inline Dfa make_dfa(int states, int alphabet_size, int initial,
                    std::vector<int> finals,
                    std::vector<std::array<int, 3>> edges) {
    Dfa d;
    d.alphabet = Alphabet(alphabet_size);
    d.initial = initial;
    d.final_states.assign(states, false);
    for (int f : finals) d.final_states[f] = true;
    d.trans.assign(states, std::vector<int>(alphabet_size, -1));
    for (auto const& [src, a, dst] : edges) {
        if (d.trans[src][a] != -1)
            throw std::invalid_argument("duplicate transition");
        d.trans[src][a] = dst;
    }
    return d;
}

/// Keeps exactly the states that are reachable from the initial state
/// and can still reach a final state.
inline Dfa trim(Dfa const& d) {
    int n = d.state_count();
    std::vector<bool> fwd(n, false);
    std::vector<int> stack{d.initial};
    fwd[d.initial] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int a = 0; a < d.alphabet.size; ++a) {
            int t = d.trans[q][a];
            if (t >= 0 && !fwd[t]) { fwd[t] = true; stack.push_back(t); }
        }
    }
    std::vector<bool> bwd(n, false);
    for (int q = 0; q < n; ++q)
        if (d.final_states[q]) { bwd[q] = true; stack.push_back(q); }
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int q = 0; q < n; ++q)
            for (int a = 0; a < d.alphabet.size; ++a)
                if (d.trans[q][a] == t && !bwd[q]) { bwd[q] = true; stack.push_back(q); }
    }
    std::vector<int> remap(n, -1);
    int kept = 0;
    for (int q = 0; q < n; ++q)
        if (fwd[q] && bwd[q]) remap[q] = kept++;
    if (remap[d.initial] < 0)
        throw std::invalid_argument("empty language after trim");
    Dfa out;
    out.alphabet = d.alphabet;
    out.initial = remap[d.initial];
    out.final_states.assign(kept, false);
    out.trans.assign(kept, std::vector<int>(d.alphabet.size, -1));
    for (int q = 0; q < n; ++q) {
        if (remap[q] < 0) continue;
        out.final_states[remap[q]] = d.final_states[q];
        for (int a = 0; a < d.alphabet.size; ++a) {
            int t = d.trans[q][a];
            if (t >= 0 && remap[t] >= 0) out.trans[remap[q]][a] = remap[t];
        }
    }
    return out;
}

struct PceVerdict {
    enum class Kind { pce, not_prefix_closed, not_extendable } kind;
    int witness_state = -1;

    bool ok() const { return kind == Kind::pce; }
};

/// On a trim automaton: prefix-closed iff every state is final,
/// extendable iff every state has an outgoing transition.
inline PceVerdict check_pce(Dfa const& d) {
    Dfa t = trim(d);
    for (int q = 0; q < t.state_count(); ++q)
        if (!t.final_states[q])
            return {PceVerdict::Kind::not_prefix_closed, q};
    for (int q = 0; q < t.state_count(); ++q) {
        bool out = false;
        for (int a = 0; a < t.alphabet.size; ++a)
            if (t.trans[q][a] >= 0) out = true;
        if (!out) return {PceVerdict::Kind::not_extendable, q};
    }
    return {PceVerdict::Kind::pce, -1};
}

/// Built-in automata. base(p) recognizes canonical base-p integers;
/// fibonacci bans the factor 11; fina bans factors 2 1* 2; K1..K4 are
/// the four spectral fixtures over a four-letter alphabet.
inline Dfa builtin(std::string const& name) {
    if (name.rfind("base", 0) == 0) {
        std::string arg = name.substr(4);
        if (!arg.empty() && arg[0] == '(') arg = arg.substr(1, arg.size() - 2);
        int p = arg.empty() ? 10 : std::stoi(arg);
        if (p < 2) throw std::invalid_argument("base needs p >= 2");
        std::vector<std::array<int, 3>> edges;
        for (int a = 1; a < p; ++a) edges.push_back({0, a, 1});
        for (int a = 0; a < p; ++a) edges.push_back({1, a, 1});
        return make_dfa(2, p, 0, {0, 1}, edges);
    }
    if (name == "fibonacci")
        return make_dfa(3, 2, 0, {0, 1, 2},
                        {{0, 1, 1}, {1, 0, 2}, {2, 1, 1}, {2, 0, 2}});
    if (name == "fina")
        return make_dfa(3, 3, 0, {0, 1, 2},
                        {{0, 2, 1}, {0, 1, 2},
                         {1, 0, 2}, {1, 1, 1},
                         {2, 2, 1}, {2, 0, 2}, {2, 1, 2}});
    if (name == "K1")
        return make_dfa(2, 4, 0, {0, 1},
                        {{0, 0, 1}, {1, 0, 0}, {1, 1, 0}, {1, 2, 0}, {1, 3, 0}});
    if (name == "K2")
        return make_dfa(2, 4, 0, {0, 1},
                        {{0, 0, 1}, {0, 1, 1}, {1, 2, 0}, {1, 3, 0}});
    if (name == "K3")
        return make_dfa(3, 4, 0, {0, 1, 2},
                        {{0, 0, 1}, {0, 1, 1}, {0, 2, 2},
                         {1, 2, 0}, {1, 3, 0},
                         {2, 0, 2}, {2, 1, 2}});
    if (name == "K4")
        return make_dfa(5, 4, 0, {0, 1, 2, 3, 4},
                        {{0, 0, 1}, {0, 1, 1}, {0, 2, 3},
                         {1, 0, 2},
                         {2, 0, 1}, {2, 1, 1}, {2, 2, 1}, {2, 3, 1},
                         {3, 0, 4}, {3, 1, 4}, {3, 2, 4}, {3, 3, 4},
                         {4, 0, 3}});
    throw std::invalid_argument("unknown builtin automaton: " + name);
}

/// Line-oriented DFA file:
///   states n
///   initial i
///   finals i j k      (omitted line = every state final)
///   trans src digit dst
inline Dfa parse_dfa(std::istream& in) {
    int states = -1, initial = -1, max_digit = -1;
    std::optional<std::vector<int>> finals;
    std::vector<std::array<int, 3>> edges;
    std::string line;
    int lineno = 0;
    auto fail = [&](std::string const& msg) {
        throw std::invalid_argument("dfa file line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "states") {
            if (!(ls >> states) || states <= 0) fail("bad state count");
        } else if (key == "initial") {
            if (!(ls >> initial)) fail("bad initial state");
        } else if (key == "finals") {
            std::vector<int> f;
            int x;
            while (ls >> x) f.push_back(x);
            finals = f;
        } else if (key == "trans") {
            int src, dig, dst;
            if (!(ls >> src >> dig >> dst)) fail("bad transition");
            if (dig < 0) fail("negative digit");
            max_digit = std::max(max_digit, dig);
            edges.push_back({src, dig, dst});
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (states <= 0) throw std::invalid_argument("dfa file: missing 'states'");
    if (initial < 0 || initial >= states)
        throw std::invalid_argument("dfa file: missing or bad 'initial'");
    std::vector<int> fin;
    if (finals) fin = *finals;
    else for (int q = 0; q < states; ++q) fin.push_back(q);
    for (int f : fin)
        if (f < 0 || f >= states) throw std::invalid_argument("dfa file: final state out of range");
    for (auto const& [src, dig, dst] : edges)
        if (src < 0 || src >= states || dst < 0 || dst >= states)
            throw std::invalid_argument("dfa file: transition state out of range");
    return make_dfa(states, std::max(max_digit + 1, 1), initial, fin, edges);
}

inline std::string serialize_dfa(Dfa const& d) {
    std::string out = "states " + std::to_string(d.state_count()) + "\n";
    out += "initial " + std::to_string(d.initial) + "\n";
    out += "finals";
    for (int q = 0; q < d.state_count(); ++q)
        if (d.final_states[q]) out += " " + std::to_string(q);
    out += "\n";
    for (int q = 0; q < d.state_count(); ++q)
        for (int a = 0; a < d.alphabet.size; ++a)
            if (d.trans[q][a] >= 0)
                out += "trans " + std::to_string(q) + " " + std::to_string(a) +
                       " " + std::to_string(d.trans[q][a]) + "\n";
    return out;
}

} // namespace carry
