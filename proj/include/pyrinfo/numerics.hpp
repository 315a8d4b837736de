#pragma once
// Dense Hermitian linear algebra plus scalar root finding and maximization.
// Everything here operates on small matrices (dimension <= a few dozen), so
// the implementations favour robustness over asymptotic cleverness.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace pyrinfo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Largest absolute deviation from Hermiticity, max_ij |A_ij - conj(A_ji)|.
inline double hermiticity_error(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

struct EigenDecomposition {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns, vectors.col(i) <-> values[i]
};

// Spectral decomposition of a Hermitian matrix. The input is symmetrized
// before solving; inputs whose deviation from Hermiticity exceeds
// tol * max(1, |A|_max) are rejected.
inline EigenDecomposition hermitian_eig(const Matrix& a, double tol = 1e-12) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("hermitian_eig: matrix must be square and non-empty");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double dev = hermiticity_error(a);
    if (dev > tol * scale)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.adjoint()));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Moore-Penrose inverse square root of a positive semidefinite matrix:
// eigenvalues below null_tol * max_eigenvalue are treated as exact zeros,
// so B * A * B is the projector onto the support of A. Eigenvalues below
// the negative of that cut are rejected.
inline Matrix inv_sqrt_psd(const Matrix& a, double null_tol = 1e-12) {
    const EigenDecomposition eig = hermitian_eig(a);
    const double top = eig.values.cwiseAbs().maxCoeff();
    const double cut = null_tol * std::max(top, 1e-300);
    if (eig.values.minCoeff() < -cut)
        throw std::invalid_argument("inv_sqrt_psd: matrix has negative eigenvalue " +
                                    std::to_string(eig.values.minCoeff()));
    RealVector inv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        inv[i] = eig.values[i] > cut ? 1.0 / std::sqrt(eig.values[i]) : 0.0;
    return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

// Bisection on a bracketing interval: f(lo) and f(hi) must have opposite
// signs. Returns the midpoint of the final bracket of width <= tol.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12) {
    if (!(lo < hi)) throw std::invalid_argument("bisect_root: need lo < hi");
    if (!(tol > 0)) throw std::invalid_argument("bisect_root: need tol > 0");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("bisect_root: endpoints do not bracket a sign change");
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ScalarMaximum {
    double argmax = 0.0;
    double value = 0.0;
};

namespace detail {

// Golden-section search for the maximum of f on [lo, hi]; shrinks the
// bracket to width tol assuming f is unimodal there.
inline ScalarMaximum golden_section_max(const std::function<double(double)>& f, double lo,
                                        double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 400 && b - a > tol; ++i) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    ScalarMaximum best{xm, fm};
    if (f1 > best.value) best = {x1, f1};
    if (f2 > best.value) best = {x2, f2};
    return best;
}

}  // namespace detail

// Maximize a scalar function on [lo, hi]. A 1024-point scan locates the
// dominant peak (guarding against secondary local maxima), then a
// golden-section refinement polishes the bracketing subinterval down to
// width tol. The returned value is the larger of the scan and the
// refinement; for unimodal f the argmax is accurate to the precision
// allowed by the flatness of f near its peak.
inline ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo,
                                     double hi, double tol = 1e-12) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: need lo < hi");
    if (!(tol > 0)) throw std::invalid_argument("maximize_scalar: need tol > 0");
    constexpr int n_scan = 1024;
    const double step = (hi - lo) / n_scan;
    ScalarMaximum best{lo, f(lo)};
    int best_i = 0;
    for (int i = 1; i <= n_scan; ++i) {
        const double x = (i == n_scan) ? hi : lo + i * step;
        const double fx = f(x);
        if (fx > best.value) {
            best = {x, fx};
            best_i = i;
        }
    }
    const double a = std::max(lo, lo + (best_i - 1) * step);
    const double b = std::min(hi, lo + (best_i + 1) * step);
    const ScalarMaximum refined = detail::golden_section_max(f, a, b, tol);
    return refined.value >= best.value ? refined : best;
}

}  // namespace pyrinfo
