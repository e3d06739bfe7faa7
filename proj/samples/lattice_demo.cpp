// Walks through B3 with the law x + y - xy: theta invariants, the degree-2
// lattices, and the multiplier that relates them.

#include "fgalab/checks.hpp"

#include <iostream>

using namespace fgalab;

int main() {
    const int trunc = 8;
    auto rs = RootSystem::parse("B3");
    auto law = make_multiplicative<Integer>(Integer(1), IntegerRing{}, trunc);
    auto ctx = make_context(rs, law);

    std::cout << "law: " << law.name() << ", even: " << (is_even(law) ? "yes" : "no") << "\n";
    std::cout << "Theta_1 = " << theta(ctx, 1).series.str() << "\n";
    std::cout << "Theta_1 / 2 integral: " << (theta_div2(ctx, 1) ? "yes" : "no") << "\n\n";

    for (int d = 2; d <= 4; ++d) {
        auto inv = invariant_graded_lattice(ctx, d);
        auto ideal = ideal_graded_lattice(ctx, d);
        auto kernel = kernel_model(ctx, d);
        auto e = inclusion_multiplier(kernel, ideal, eta(rs, d));
        std::cout << "d = " << d << ": invariants rank " << inv.rank() << ", ideal rank " << ideal.rank()
                  << ", kernel model rank " << kernel.rank() << "\n";
        std::cout << "  kernel model -> ideal multiplier " << (e.tau ? e.tau->get_str() : "infinite")
                  << " (eta_d = " << eta(rs, d) << ")\n";
    }

    auto rep = eta_bound_check(ctx, 2);
    std::cout << "\n" << to_json(rep).dump(2) << "\n";
}
