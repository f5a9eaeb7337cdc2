// Builds the 8-dimensional unimodular algebra r'_2 x| R^4, checks its LCS
// structure and prints the lattice certificate for m = 3.

#include "lcs/lcs.hpp"

#include <iostream>

int main() {
    using namespace lcs;

    const LieAlgebra h = parse_structure_equations({"(0,0,-13+24,-14-23)", {}});
    const KForm omega = parse_form("13-1/2 24", 4, 2);
    const KForm theta = parse_form("1", 4, 1);

    const auto n = unimodular_extension_dim(h, theta);
    std::cout << "unimodular extension needs dim V = 2 * " << n->get_str() << "\n";

    const SymplecticSpace v = SymplecticSpace::standard(2);
    std::vector<QMatrix> pi(4, QMatrix(4, 4));
    pi[0] = QMatrix::diagonal({0, -1, -1, 0});
    const Representation rep(h, v, pi);

    const ExtensionResult g = extend(h, omega, theta, rep);
    std::cout << "g     = " << format_structure_equations(g.algebra) << "\n";
    std::cout << "omega = " << format_form(g.structure.omega) << "\n";
    std::cout << "theta = " << format_form(g.structure.theta) << "\n";
    std::cout << "kind: " << to_string(g.verdict.kind) << ", exact: " << (g.exact ? "yes" : "no")
              << ", unimodular: " << (g.unimodular ? "yes" : "no") << "\n\n";

    std::cout << certificate_report(build_certificate(3));
}
