#pragma once
// Security thresholds for an n-ary key against the symmetric individual
// attack: one-way key distillation is possible exactly while the
// legitimate mutual information exceeds the eavesdropper's.
//
// At disturbance d the legitimate parties share
//     I_AB = beta0 log_n(n beta0) + (n-1) beta1 log_n(n beta1),
// while the eavesdropper learns the letter outright on the error fraction
// and otherwise holds the pyramid with overlap lambda(d):
//     I_AE = d + (1 - d) I_pyramid(lambda(d)),
// with I_pyramid either the square-root value or the family optimum. The
// threshold d* solves I_AB = I_AE; the optimal-measurement variant uses
// the family branch whenever the disturbance lies below the critical value
//     d_c = (n-2)^2 / ((n-2)^2 + n),
// which is where lambda(d) crosses the regime boundary.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pyrinfo/attack.hpp"
#include "pyrinfo/information.hpp"
#include "pyrinfo/numerics.hpp"
#include "pyrinfo/pyramid.hpp"

namespace pyrinfo {

enum class Strategy { srm, optimal };

// Mutual information between sender and receiver across the noisy channel,
// in base-n units.
inline double alice_bob_information(int n, double disturbance) {
    const NoiseModel m = make_noise_model(n, disturbance);
    return (detail::xlog(m.beta0, n * m.beta0) +
            detail::xlog((n - 1) * m.beta1, n * m.beta1)) /
           std::log(double(n));
}

// Eavesdropper's information under the chosen measurement strategy.
inline double eve_information(int n, double disturbance, Strategy strategy) {
    const NoiseModel m = make_noise_model(n, disturbance);
    // exactly in [0, 1] on the admissible domain; clamp away rounding dust
    const double lambda = std::clamp(disturbance_to_lambda(n, disturbance), 0.0, 1.0);
    const auto p = make_pyramid(n, lambda);
    const double pyramid_info =
        strategy == Strategy::srm ? srm_information(p) : optimum(p).i_max;
    return m.disturbance + m.beta0 * pyramid_info;
}

// Disturbance below which the eavesdropper's optimal measurement departs
// from the square-root measurement. Zero for n = 2.
inline double critical_disturbance(int n) {
    if (n < 2) throw std::invalid_argument("critical_disturbance: need n >= 2");
    const double c = double(n - 2) * (n - 2);
    return c / (c + n);
}

struct ThresholdReport {
    int n = 0;
    Strategy strategy = Strategy::srm;
    double d_star = 0.0;             // disturbance where I_AB = I_AE
    double info_at_threshold = 0.0;  // common value of the two curves there
    double critical_d = 0.0;         // critical_disturbance(n)
    double bracket_lo = 0.0;         // search interval handed to the root finder
    double bracket_hi = 0.0;
};

// Solve I_AB(d) = I_AE(d) by bisection. The gap is positive at vanishing
// disturbance and negative near the channel's maximum, so the bracket
// pinches the interval endpoints by a hair to stay inside the domain.
inline ThresholdReport ck_threshold(int n, Strategy strategy, double tol = 1e-12) {
    if (n < 2) throw std::invalid_argument("ck_threshold: need n >= 2");
    ThresholdReport report;
    report.n = n;
    report.strategy = strategy;
    report.critical_d = critical_disturbance(n);
    report.bracket_lo = 1e-9;
    report.bracket_hi = double(n - 1) / n - 1e-9;
    const auto gap = [n, strategy](double d) {
        return alice_bob_information(n, d) - eve_information(n, d, strategy);
    };
    report.d_star = bisect_root(gap, report.bracket_lo, report.bracket_hi, tol);
    report.info_at_threshold = alice_bob_information(n, report.d_star);
    return report;
}

}  // namespace pyrinfo
