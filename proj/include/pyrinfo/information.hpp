#pragma once
// Mutual information between the sender's letter and a measurement outcome,
// in base-n units (one unit = one letter of an n-ary alphabet).
//
// For a pyramid measured with the one-parameter family the joint
// distribution is two-valued, governed by the overlap pair
//     sqrt(eta0) = sqrt(n r1) + s1,   sqrt(eta1) = s1,
//     s1 = (sqrt(r0) - sqrt(r1)) / sqrt(n),
// which satisfies eta0 + (n-1) eta1 = 1. At rescaled parameter T the
// amplitudes shrink to
//     a0 = sqrt(n r1) + (1-T) s1,   a1 = (1-T) s1,
// equivalently etaBar0 = (sqrt(eta0) - T sqrt(eta1))^2 and
// etaBar1 = (1-T)^2 eta1 for lambda >= 0. The closed forms below use the
// amplitude representation directly, which stays faithful to the measured
// probabilities over the whole admissible lambda range.

#include <cmath>
#include <stdexcept>
#include <string>

#include "pyrinfo/measurements.hpp"
#include "pyrinfo/numerics.hpp"
#include "pyrinfo/pyramid.hpp"

namespace pyrinfo {

struct JointDistribution {
    RealMatrix p;  // rows: letters; columns: outcomes

    int letters() const { return int(p.rows()); }
    int outcomes() const { return int(p.cols()); }
};

// p_nm = (1/n) <E_n| P_m |E_n>; tiny negative traces from rounding are
// clipped to zero.
inline JointDistribution joint_distribution(const PyramidEnsemble& p, const Povm& povm) {
    if (povm.dim() != p.n)
        throw std::invalid_argument("joint_distribution: POVM dimension " +
                                    std::to_string(povm.dim()) + " does not match n = " +
                                    std::to_string(p.n));
    JointDistribution j;
    j.p.resize(p.n, povm.size());
    for (int n = 0; n < p.n; ++n) {
        for (int m = 0; m < povm.size(); ++m) {
            const Complex v = p.edges.col(n).adjoint() * povm.elements[m] * p.edges.col(n);
            const double prob = v.real() / p.n;
            if (prob < -1e-10)
                throw std::invalid_argument("joint_distribution: negative probability " +
                                            std::to_string(prob));
            j.p(n, m) = std::max(prob, 0.0);
        }
    }
    return j;
}

// I = sum_nm p_nm log_n(p_nm / (p_n. p_.m)) with 0 log 0 = 0. The base of
// the logarithm is the number of letters (rows).
inline double mutual_information(const JointDistribution& j) {
    const int rows = j.letters();
    const int cols = j.outcomes();
    if (rows < 2) throw std::invalid_argument("mutual_information: need >= 2 letters");
    if (j.p.minCoeff() < 0.0)
        throw std::invalid_argument("mutual_information: negative entry");
    const RealVector row = j.p.rowwise().sum();
    const RealVector col = j.p.colwise().sum();
    double nats = 0.0;
    for (int n = 0; n < rows; ++n) {
        for (int m = 0; m < cols; ++m) {
            const double pnm = j.p(n, m);
            if (pnm > 0.0 && row[n] > 0.0 && col[m] > 0.0)
                nats += pnm * std::log(pnm / (row[n] * col[m]));
        }
    }
    return nats / std::log(double(rows));
}

struct EtaPair {
    double eta0 = 0.0;  // probability of the correct letter outcome
    double eta1 = 0.0;  // probability of each wrong letter outcome
};

inline EtaPair eta_pair(const PyramidEnsemble& p) {
    const double s1 = (std::sqrt(p.r0) - std::sqrt(p.r1)) / std::sqrt(double(p.n));
    const double s0 = std::sqrt(p.n * p.r1) + s1;
    return {s0 * s0, s1 * s1};
}

// T-rescaled pair: the letter outcomes of the family at T keep the
// two-valued structure with shrunken amplitudes.
inline EtaPair scaled_eta_pair(const PyramidEnsemble& p, double T) {
    const double s1 = (std::sqrt(p.r0) - std::sqrt(p.r1)) / std::sqrt(double(p.n));
    const double a1 = (1.0 - T) * s1;
    const double a0 = std::sqrt(p.n * p.r1) + a1;
    return {a0 * a0, a1 * a1};
}

namespace detail {

inline double xlog(double x, double arg) {
    return (x > 0.0 && arg > 0.0) ? x * std::log(arg) : 0.0;
}

}  // namespace detail

// Information of the square-root measurement:
//     I = eta0 log_n(n eta0) + (n-1) eta1 log_n(n eta1).
inline double srm_information(const PyramidEnsemble& p) {
    const EtaPair e = eta_pair(p);
    const double n = p.n;
    return (detail::xlog(e.eta0, n * e.eta0) + detail::xlog((n - 1) * e.eta1, n * e.eta1)) /
           std::log(n);
}

// Information of the family at rescaled parameter T in [0, 1]:
//     I(T) = etaBar0 log_n(n etaBar0 / s) + (n-1) etaBar1 log_n(n etaBar1 / s),
//     s = etaBar0 + (n-1) etaBar1  (the conclusive probability).
inline double family_information(const PyramidEnsemble& p, double T) {
    if (!(T >= 0.0 && T <= 1.0))
        throw std::invalid_argument("family_information: need T in [0, 1]");
    const EtaPair e = scaled_eta_pair(p, T);
    const double n = p.n;
    const double s = e.eta0 + (n - 1) * e.eta1;
    if (s <= 0.0) return 0.0;
    return (detail::xlog(e.eta0, n * e.eta0 / s) +
            detail::xlog((n - 1) * e.eta1, n * e.eta1 / s)) /
           std::log(n);
}

// Boundary of the two optimality regimes in lambda: below it the
// square-root measurement is optimal, above it the family optimum sits at
// an interior T.
inline double regime_boundary(int n) {
    if (n < 2) throw std::invalid_argument("regime_boundary: need n >= 2");
    return double(3 * n - 4) / (double(n) * (n - 1));
}

enum class Regime { srm_optimal, family_optimal };

struct OptimumReport {
    int n = 0;
    double lambda = 0.0;
    double boundary = 0.0;  // regime_boundary(n)
    Regime regime = Regime::srm_optimal;
    double t_star = 0.0;  // maximizing T
    double i_max = 0.0;   // information at the optimum
    double i_srm = 0.0;   // information of the square-root measurement
};

// Closed-form accessible information over the family, for lambda in [0, 1].
// n = 2 always sits in the square-root regime (the boundary is 1 there).
// For n >= 3 and lambda >= boundary the optimum is
//     T* = 1 - (sqrt(eta0/eta1) - 1)/(n - 2),
//     I_max = (1 - lambda) (n-1)/(n-2) log_n(n-1).
inline OptimumReport optimum(const PyramidEnsemble& p) {
    if (!(p.lambda >= 0.0 && p.lambda <= 1.0))
        throw std::invalid_argument("optimum: closed form requires lambda in [0, 1]");
    OptimumReport r;
    r.n = p.n;
    r.lambda = p.lambda;
    r.boundary = regime_boundary(p.n);
    r.i_srm = srm_information(p);
    if (p.n == 2 || p.lambda < r.boundary) {
        r.regime = Regime::srm_optimal;
        r.t_star = 0.0;
        r.i_max = r.i_srm;
        return r;
    }
    r.regime = Regime::family_optimal;
    const EtaPair e = eta_pair(p);
    if (e.eta1 <= 0.0) {
        // lambda = 1: the edges coincide, every measurement is blind, and
        // the maximizer formula tends to T = 1
        r.t_star = 1.0;
        r.i_max = 0.0;
        return r;
    }
    r.t_star = 1.0 - (std::sqrt(e.eta0 / e.eta1) - 1.0) / (p.n - 2);
    r.i_max = (1.0 - p.lambda) * (p.n - 1) / (p.n - 2) * std::log(double(p.n - 1)) /
              std::log(double(p.n));
    return r;
}

// Limit of I_max / I_srm as lambda -> 1: (n/2)/(n-2) ln(n-1). Meaningful
// for n >= 3 only.
inline double asymptotic_ratio(int n) {
    if (n < 3) throw std::invalid_argument("asymptotic_ratio: need n >= 3");
    return (0.5 * n) / (n - 2) * std::log(double(n - 1));
}

// Overlap at which the square-root information drops below the unambiguous
// endpoint value 1 - lambda. The curves only cross for large enough
// alphabets (the square-root value stays above the endpoint for n <= 4).
inline double srm_mud_crossing(int n, double tol = 1e-12) {
    if (n < 2) throw std::invalid_argument("srm_mud_crossing: need n >= 2");
    const double lo = std::max(regime_boundary(n), 1e-6);
    const double hi = 1.0 - 1e-9;
    const auto gap = [n](double lambda) {
        return srm_information(make_pyramid(n, lambda)) - (1.0 - lambda);
    };
    if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0))
        throw std::domain_error("srm_mud_crossing: curves do not cross for n = " +
                                std::to_string(n));
    return bisect_root(gap, lo, hi, tol);
}

}  // namespace pyrinfo
