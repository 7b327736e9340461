// Walk the Chern number from 0 to 3 by growing the sweep radius past the
// three hyperfine monopoles, comparing the dynamic estimate against both
// oracles at two adiabaticity settings.

#include <cstdio>

#include "chernsim/chernsim.hpp"

int main() {
    using namespace chernsim;
    const NVModel model;

    std::printf("%8s %8s %10s %10s %8s %8s\n", "hr/A", "h0/A", "C(a=2)", "C(a=8)", "count", "fhs");
    for (double hr : {0.2, 0.5, 1.0, 2.25}) {
        const NormalizedPoint p{hr, 0.23};
        const double c2 = chern_dynamic(p, 2.0, model, PropagationSettings{}).value;
        const double c8 = chern_dynamic(p, 8.0, model, PropagationSettings{}).value;
        const double count = monopole_count_nv(p).value;
        const double fhs = chern_fhs_nv(model, p).value;
        std::printf("%8.2f %8.2f %10.4f %10.4f %8.0f %8.0f\n", hr, 0.23, c2, c8, count, fhs);
    }
    return 0;
}
