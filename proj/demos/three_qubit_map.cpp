// Locate the three-qubit topological phase boundaries: the monopole pair
// leaves the sweep sphere at g' = 1/sqrt2 and the offset monopoles exit at
// H0' = 1 and 2.

#include <cstdio>

#include "chernsim/chernsim.hpp"

int main() {
    using namespace chernsim;
    const double scale = kDefaultAPar;

    std::printf("g' scan at H0' = 0:\n");
    for (double gt : {0.3, 0.5, 0.65, 0.72, 0.9, 1.2}) {
        ThreeQubitModel model{gt * scale, 0.0, scale};
        const auto roots = three_qubit_ground_degeneracies(model);
        std::printf("  g'=%5.2f  count=%1.0f  roots/H_r' = [", gt,
                    monopole_count_three_qubit(model).value);
        for (size_t i = 0; i < roots.size(); ++i)
            std::printf("%s%.4f", i ? ", " : "", roots[i] / scale);
        std::printf("]\n");
    }

    std::printf("H0' scan at g' = 0.01:\n");
    for (double h0t : {0.5, 0.9, 1.1, 1.9, 2.1, 2.5}) {
        ThreeQubitModel model{0.01 * scale, h0t * scale, scale};
        std::printf("  H0'=%5.2f  count=%1.0f\n", h0t, monopole_count_three_qubit(model).value);
    }
    return 0;
}
