// Demo: where does noisy-channel key distribution stop being securable?
//
// For a few alphabet sizes, prints the disturbance threshold at which the
// eavesdropper's information catches up with the legitimate channel, for
// both the square-root strategy and the optimal one, then walks one
// alphabet across its disturbance range to show the two curves crossing.

#include <cstdio>

#include "pyrinfo/thresholds.hpp"

int main() {
    using namespace pyrinfo;

    std::printf("key-rate thresholds (disturbance fractions)\n");
    std::printf("%4s  %12s  %12s  %12s\n", "n", "critical", "srm", "optimal");
    for (int n : {2, 3, 5, 10, 30}) {
        const double critical = critical_disturbance(n);
        const double srm_star = ck_threshold(n, Strategy::srm).d_star;
        const double opt_star = ck_threshold(n, Strategy::optimal).d_star;
        std::printf("%4d  %12.6f  %12.6f  %12.6f\n", n, critical, srm_star, opt_star);
    }

    const int n = 10;
    const auto report = ck_threshold(n, Strategy::optimal);
    std::printf("\nscan for n = %d (optimal eavesdropping), threshold at D = %.6f\n",
                n, report.d_star);
    std::printf("%10s  %12s  %12s  %6s\n", "D", "I_AB", "I_AE", "key?");
    const double hi = double(n - 1) / n;
    for (int i = 1; i < 10; ++i) {
        const double d = hi * i / 10.0;
        const double ab = alice_bob_information(n, d);
        const double ae = eve_information(n, d, Strategy::optimal);
        std::printf("%10.4f  %12.6f  %12.6f  %6s\n", d, ab, ae,
                    ab > ae ? "yes" : "no");
    }
    return 0;
}
