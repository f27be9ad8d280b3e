/** @file
 *  From a polynomial to a layer table: expands the Tribonacci base,
 *  builds its induced basis, and brackets the carry rate between the
 *  sampled layer estimate and its tail bound.
 */

#include "carry/beta.hpp"
#include "carry/gns.hpp"
#include "carry/numeric.hpp"
#include "carry/odometer.hpp"
#include "carry/words.hpp"

#include <cstdio>
#include <string>

using namespace carry;

int main() {
    auto coeffs = parse_poly_line("1 -1 -1 -1");
    AlgebraicReal beta = make_beta(coeffs);
    BetaProfile prof = quasi_greedy(beta_expand_one(beta));

    std::printf("base beta = %.12f\n", prof.beta.to_double());
    std::string bge;
    for (int d : prof.bge) bge += std::to_string(d);
    std::printf("expansion of one: %s (%s)\n", bge.c_str(),
                prof.kind == ParryClass::simple ? "simple" : "nonsimple");

    Basis basis = basis_from_beta(prof);
    std::printf("induced basis:");
    for (int l = 0; l < 8; ++l)
        std::printf(" %s", basis.G((std::size_t)l).get_str().c_str());
    std::puts("");

    // One layer per maximal word g_k; the weight k - J(k) prices the
    // carry spent crossing that layer.
    std::size_t layers = 12;
    LayerTable table = layer_cp(basis, layers, 100000);
    int max_digit = 0;
    for (int d : prof.dstar_prefix) max_digit = std::max(max_digit, d);
    for (int d : prof.dstar_period) max_digit = std::max(max_digit, d);
    Alphabet ab(max_digit + 1);

    std::puts("\n  k  g_k           J_k  weight  nu          cumulative");
    for (auto const& row : table.rows)
        std::printf(" %2zu  %-12s  %3zu  %6zu  %-10s  %s\n", row.k,
                    format_word(row.gk, ab).c_str(), row.jk, row.k - row.jk,
                    decimal_string(row.nu).c_str(),
                    decimal_string(row.cumulative).c_str());

    double b = prof.beta.to_double();
    std::printf("\nestimate through %zu layers: %s\n", layers,
                decimal_string(table.estimate).c_str());
    std::printf("tail bound for deeper layers: %s\n",
                decimal_string(table.tail_bound).c_str());
    std::printf("closed form beta/(beta-1):   %.12f\n", b / (b - 1.0));
    return 0;
}
