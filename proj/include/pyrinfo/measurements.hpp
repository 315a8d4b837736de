#pragma once
// Measurements on pyramid ensembles.
//
// Two parameterizations appear below and must not be confused:
//  * t is the raw interpolation parameter of the one-parameter POVM family,
//      |ebar_m> = (|E_m> - |H>)/sqrt(n r1) + t |H>/sqrt(n r0),  m < n,
//      |ebar_n> = |H> sqrt((1 - |t|^2)/r0),
//    valid for |t| <= 1. t = 1 gives the square-root measurement (with a
//    vanishing extra outcome); t = sqrt(r1/r0) gives unambiguous
//    discrimination, where <E_k|ebar_m> = 0 for k != m.
//  * T in [0, 1] is the rescaled parameter t = 1 - T + T sqrt(r1/r0), so
//    T = 0 is the square-root measurement and T = 1 is unambiguous
//    discrimination. Conversions are family_t / family_T.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrinfo/numerics.hpp"
#include "pyrinfo/pyramid.hpp"

namespace pyrinfo {

struct Povm {
    std::vector<Matrix> elements;
    std::vector<std::string> labels;  // same length as elements

    int dim() const { return elements.empty() ? 0 : int(elements.front().rows()); }
    int size() const { return int(elements.size()); }
};

struct PovmCheck {
    double completeness_error = 0.0;  // |sum_m P_m - 1| in operator norm
    double min_eigenvalue = 0.0;      // smallest eigenvalue over all elements
    double hermiticity = 0.0;         // worst element-wise Hermiticity deviation
};

inline PovmCheck validate_povm(const Povm& povm) {
    if (povm.elements.empty()) throw std::invalid_argument("validate_povm: empty POVM");
    const int d = povm.dim();
    Matrix sum = Matrix::Zero(d, d);
    PovmCheck check;
    check.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const Matrix& el : povm.elements) {
        if (el.rows() != d || el.cols() != d)
            throw std::invalid_argument("validate_povm: inconsistent element dimensions");
        check.hermiticity = std::max(check.hermiticity, hermiticity_error(el));
        sum += el;
        // (el + el')/2 is exactly Hermitian, so the eig precondition holds
        const auto eig = hermitian_eig(0.5 * (el + el.adjoint()));
        check.min_eigenvalue = std::min(check.min_eigenvalue, eig.values.minCoeff());
    }
    const auto dev = hermitian_eig(0.5 * (sum + sum.adjoint()) - Matrix::Identity(d, d));
    check.completeness_error = dev.values.cwiseAbs().maxCoeff();
    return check;
}

namespace detail {

inline void require_nondegenerate(const PyramidEnsemble& p, const char* who) {
    if (p.n * p.r1 <= 1e-12 || p.n * p.r0 <= 1e-12)
        throw std::invalid_argument(std::string(who) +
                                    ": degenerate pyramid (lambda at an endpoint of the "
                                    "admissible interval)");
}

}  // namespace detail

// Square-root measurement, the closed-form route: rank-1 projectors onto
//     |e_m> = (|E_m> - |H>)/sqrt(n r1) + |H>/sqrt(n r0).
// This is a von Neumann measurement: the |e_m> are orthonormal.
inline Povm srm(const PyramidEnsemble& p) {
    detail::require_nondegenerate(p, "srm");
    const double a = 1.0 / std::sqrt(p.n * p.r1);
    const double b = 1.0 / std::sqrt(p.n * p.r0);
    Povm out;
    for (int m = 0; m < p.n; ++m) {
        const Vector e = (p.edges.col(m) - p.height) * a + p.height * b;
        out.elements.push_back(e * e.adjoint());
        out.labels.push_back(std::to_string(m));
    }
    return out;
}

// Square-root measurement, the density-operator route:
//     P_m = (n rho)^(-1/2) |E_m><E_m| (n rho)^(-1/2).
// Kept separate from srm() so the two constructions can be compared.
inline Povm srm_from_density(const PyramidEnsemble& p) {
    detail::require_nondegenerate(p, "srm_from_density");
    const Matrix b = inv_sqrt_psd(double(p.n) * ensemble_density(p));
    Povm out;
    for (int m = 0; m < p.n; ++m) {
        const Vector v = b * p.edges.col(m);
        out.elements.push_back(v * v.adjoint());
        out.labels.push_back(std::to_string(m));
    }
    return out;
}

// Raw interpolation parameter for a given T in [0, 1].
inline double family_t(const PyramidEnsemble& p, double T) {
    detail::require_nondegenerate(p, "family_t");
    return 1.0 - T + T * std::sqrt(p.r1 / p.r0);
}

// Inverse of family_t. Undefined at lambda = 0 where t is identically 1.
inline double family_T(const PyramidEnsemble& p, double t) {
    detail::require_nondegenerate(p, "family_T");
    const double denom = 1.0 - std::sqrt(p.r1 / p.r0);
    if (std::abs(denom) < 1e-14)
        throw std::invalid_argument("family_T: parameterization degenerate at lambda = 0");
    return (1.0 - t) / denom;
}

// One-parameter POVM family; |t| <= 1 (complex t is admitted so structured
// searches can scan phases). Produces n letter outcomes plus one
// inconclusive outcome, which vanishes at |t| = 1.
inline Povm family_povm(const PyramidEnsemble& p, Complex t) {
    detail::require_nondegenerate(p, "family_povm");
    const double t2 = std::norm(t);
    if (t2 > 1.0 + 1e-12)
        throw std::invalid_argument("family_povm: need |t| <= 1, got |t| = " +
                                    std::to_string(std::sqrt(t2)));
    const double a = 1.0 / std::sqrt(p.n * p.r1);
    const Complex b = t / std::sqrt(p.n * p.r0);
    Povm out;
    for (int m = 0; m < p.n; ++m) {
        const Vector e = (p.edges.col(m) - p.height) * a + p.height * b;
        out.elements.push_back(e * e.adjoint());
        out.labels.push_back(std::to_string(m));
    }
    const double rest = std::max(1.0 - t2, 0.0);
    const Vector h = p.height * std::sqrt(rest / p.r0);
    out.elements.push_back(h * h.adjoint());
    out.labels.push_back("inconclusive");
    return out;
}

inline Povm family_povm(const PyramidEnsemble& p, double t) {
    return family_povm(p, Complex(t, 0.0));
}

// Unambiguous discrimination: the family at t = sqrt(r1/r0), where a letter
// outcome never fires for a wrong letter. The price is an inconclusive
// outcome with probability (1 - t^2) r0 = lambda.
inline double unambiguous_t(const PyramidEnsemble& p) {
    detail::require_nondegenerate(p, "unambiguous_t");
    return std::sqrt(p.r1 / p.r0);
}

inline Povm unambiguous_povm(const PyramidEnsemble& p) {
    return family_povm(p, unambiguous_t(p));
}

// Probability of the inconclusive outcome of the family at parameter t,
// averaged over letters: (1 - t^2) r0.
inline double inconclusive_probability(const PyramidEnsemble& p, double t) {
    return (1.0 - t * t) * p.r0;
}

}  // namespace pyrinfo
