/** @file
 *  Tour of the Zeckendorf numeration system: successor carries for the
 *  first few integers, the per-level carry identity, and the long-run
 *  mean next to the closed-form rate.
 */

#include "carry/analyzer.hpp"
#include "carry/counting.hpp"
#include "carry/dfa.hpp"
#include "carry/numeric.hpp"
#include "carry/spectral.hpp"
#include "carry/words.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

using namespace carry;

int main() {
    Dfa fib = builtin("fibonacci");
    CountTable table(fib);

    // Replacing repr(i) by repr(i+1) rewrites a suffix; the carry is the
    // length of that suffix.
    std::puts("successor carries, smallest values first");
    std::puts("   i  repr(i)   repr(i+1)  carry");
    Word w = repr_of(table, BigInt(0ul));
    for (int i = 0; i < 13; ++i) {
        Word next = successor(table, w);
        std::printf("  %2d  %-8s  %-9s  %zu\n", i,
                    format_word(w, fib.alphabet).c_str(),
                    format_word(next, fib.alphabet).c_str(),
                    delta(w, next));
        w = next;
    }

    // Summing the carries across one length level always gives the count
    // of words up to that level, so the filtered means are exact.
    std::puts("\nper-level carry sums against the language count");
    std::puts("  level  sum of carries  words up to level");
    {
        int lmax = 8;
        std::vector<unsigned long> level_sum((std::size_t)lmax + 1, 0);
        BigInt budget = table.v(lmax);
        int level = 0;
        BigInt upper = table.v(0);
        std::uint64_t total = budget.get_ui();
        dfa_cp_stream(table, total, [&](std::uint64_t i, std::uint64_t cp) {
            while (BigInt((unsigned long)i) >= upper) upper = table.v(++level);
            level_sum[(std::size_t)level] += cp;
        });
        for (int l = 1; l <= lmax; ++l)
            std::printf("  %5d  %14lu  %17s\n", l, level_sum[(std::size_t)l],
                        table.v(l).get_str().c_str());
    }

    // Streaming mean versus the dominant-eigenvalue prediction.
    SystemSource src = source_from_dfa(fib, "fibonacci");
    CpReport rep = empirical_cp(src, 100000);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::puts("\nrunning mean at selected checkpoints");
    for (auto const& c : rep.checkpoints)
        if (c.n >= 1000)
            std::printf("  n = %-7llu  mean = %s\n",
                        (unsigned long long)c.n, decimal_string(c.mean).c_str());
    std::printf("  closed form phi/(phi-1) = %.12f\n", phi / (phi - 1.0));

    CpDecision verdict = decide_cp(fib);
    std::printf("\nspectral verdict: %s, rate %.12f\n",
                verdict.determined ? "carry rate exists" : "undetermined",
                verdict.cp_value);
    return 0;
}
