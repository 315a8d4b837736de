#pragma once
// Symmetric state ensembles ("pyramids"): n unit vectors |E_k> in an
// n-dimensional space with pairwise overlap
//
//     <E_k|E_l> = lambda + (1 - lambda) delta_kl,
//
// lambda in [-1/(n-1), 1]. Two derived weights recur everywhere:
//
//     r0 = (1 + (n-1) lambda) / n,   r1 = (1 - lambda) / n,
//
// so that <E_k|E_l> = r0 - r1 + n r1 delta_kl. The average vector
// |H> = (1/n) sum_k |E_k> has squared norm r0, and the ensemble average
// rho = (1/n) sum_k |E_k><E_k| has eigenvalue r0 on |H> and r1 on the
// (n-1)-dimensional complement.
//
// The edges are realized as real vectors in the canonical basis:
//     E_k[j] = sqrt(n r1) (delta_kj - 1/n) + sqrt(r0 / n),
// which reproduces the overlap matrix exactly and puts |H> on the
// uniform direction, H[j] = sqrt(r0 / n).

#include <cmath>
#include <stdexcept>
#include <string>

#include "pyrinfo/numerics.hpp"

namespace pyrinfo {

struct PyramidEnsemble {
    int n = 0;
    double lambda = 0.0;
    double r0 = 0.0;  // eigenvalue of rho along |H>
    double r1 = 0.0;  // eigenvalue of rho on the complement, multiplicity n-1
    Matrix edges;     // column k is |E_k>; entries are real
    Vector height;    // |H>, the edge average
};

inline double lambda_lower_bound(int n) { return -1.0 / (n - 1); }

inline PyramidEnsemble make_pyramid(int n, double lambda) {
    if (n < 2) throw std::invalid_argument("make_pyramid: need n >= 2");
    const double lo = lambda_lower_bound(n);
    if (!(lambda >= lo && lambda <= 1.0))
        throw std::invalid_argument("make_pyramid: lambda = " + std::to_string(lambda) +
                                    " outside admissible interval [" + std::to_string(lo) +
                                    ", 1]");
    PyramidEnsemble p;
    p.n = n;
    p.lambda = lambda;
    p.r0 = (1.0 + (n - 1) * lambda) / n;
    p.r1 = (1.0 - lambda) / n;
    const double spread = std::sqrt(n * p.r1);
    const double lift = std::sqrt(std::max(p.r0, 0.0) / n);
    p.edges = Matrix::Constant(n, n, Complex(lift, 0.0));
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j)
            p.edges(j, k) += spread * ((j == k ? 1.0 : 0.0) - 1.0 / n);
    }
    p.height = p.edges.rowwise().sum() / double(n);
    return p;
}

// rho = (1/n) sum_k |E_k><E_k|
inline Matrix ensemble_density(const PyramidEnsemble& p) {
    return (p.edges * p.edges.adjoint()) / double(p.n);
}

// Parallelepiped volume spanned by the edges:
//     (1/n!) (n r0)^(1/2) (n r1)^((n-1)/2).
// Evaluated in log space so large n does not overflow the factorial.
inline double pyramid_volume(const PyramidEnsemble& p) {
    const double a = p.n * p.r0;
    const double b = p.n * p.r1;
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return std::exp(0.5 * std::log(a) + 0.5 * (p.n - 1) * std::log(b) -
                    std::lgamma(p.n + 1.0));
}

}  // namespace pyrinfo
