#pragma once
// Symmetric individual attack on an n-ary signal and the ancilla ensembles
// it leaves behind.
//
// The channel keeps a letter intact with probability beta0 = 1 - d and
// turns it into each of the other n - 1 letters with probability
// beta1 = d / (n - 1), where d is the disturbance. A purification of this
// channel uses two amplitudes a, b constrained by
//     |a + b/n|^2 = beta0 - (n-1) beta1 / n,   |b|^2 = n beta1,
// which together imply |a|^2 + |b|^2 + 2 Re(conj(a) b)/n = 1. Within that
// constraint the phases of a and b are free; observable quantities must
// not depend on them.
//
// After the legitimate parties project onto outcome pair (k, l), the
// eavesdropper holds a pure state indexed by (k, l). In the basis
// |mbar_{k'}> (x) |m_{l'}> its coordinates are
//     E_kl[(k', l')] = delta_kl (a/n) delta_{k'l'} + (b/n) delta_{k'k} delta_{l'l},
// with norms |E_kk|^2 = beta0/n and |E_kl|^2 = beta1/n for k != l. The
// normalized states for equal outcomes form a pyramid with pairwise overlap
//     lambda = (beta0 - beta1)/beta0 = 1 - d / ((n-1)(1-d)),
// independent of the free phases.
//
// The same attack has a four-system presentation: with
// |psi> = (1/sqrt(n)) sum_j |jj> and |psibar>[p, q] = w^{pq}/n
// (w = exp(2 pi i / n)),
//     |Psi> = a |psi>_{12} |psibar>_{34} + b |psi>_{13} |psibar>_{24}.
// The sender projects system 1 onto abar_k[i] = w^{-ki}/sqrt(n), the
// receiver projects system 2 onto bbar_l[i] = w^{+li}/sqrt(n), and the
// residual on systems (3, 4) reproduces E_kl exactly, where the ancilla
// basis reads |mbar_{k'}>[p] = w^{+k'p}/sqrt(n) on system 3 and the
// computational |l'> on system 4.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "pyrinfo/numerics.hpp"

namespace pyrinfo {

struct NoiseModel {
    int n = 0;
    double disturbance = 0.0;
    double beta0 = 0.0;  // probability the letter survives
    double beta1 = 0.0;  // probability of each specific error
};

inline NoiseModel make_noise_model(int n, double disturbance) {
    if (n < 2) throw std::invalid_argument("make_noise_model: need n >= 2");
    const double hi = double(n - 1) / n;
    if (!(disturbance >= 0.0 && disturbance <= hi))
        throw std::invalid_argument("make_noise_model: need disturbance in [0, " +
                                    std::to_string(hi) + "], got " +
                                    std::to_string(disturbance));
    NoiseModel m;
    m.n = n;
    m.disturbance = disturbance;
    m.beta0 = 1.0 - disturbance;
    m.beta1 = disturbance / (n - 1);
    return m;
}

struct AttackAmplitudes {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
};

// Canonical phase choice: a real, b imaginary.
inline AttackAmplitudes default_amplitudes(const NoiseModel& m) {
    AttackAmplitudes amps;
    amps.a = Complex(std::sqrt(m.beta0 - m.beta1), 0.0);
    amps.b = Complex(0.0, std::sqrt(double(m.n) * m.beta1));
    return amps;
}

// General solution of the constraints: |b| and |a + b/n| are fixed, their
// phases chi and phi are free.
inline AttackAmplitudes phased_amplitudes(const NoiseModel& m, double phi, double chi) {
    const double shifted = m.beta0 - (m.n - 1) * m.beta1 / m.n;
    AttackAmplitudes amps;
    amps.b = std::polar(std::sqrt(double(m.n) * m.beta1), chi);
    amps.a = std::polar(std::sqrt(shifted), phi) - amps.b / double(m.n);
    return amps;
}

// Worst violation of the two defining constraints.
inline double amplitude_constraint_error(const NoiseModel& m, const AttackAmplitudes& amps) {
    const double shifted = std::norm(amps.a + amps.b / double(m.n));
    const double e1 = std::abs(shifted - (m.beta0 - (m.n - 1) * m.beta1 / m.n));
    const double e2 = std::abs(std::norm(amps.b) - double(m.n) * m.beta1);
    return std::max(e1, e2);
}

// Pairwise overlap of the equal-outcome ancilla states as a function of
// the disturbance.
inline double disturbance_to_lambda(int n, double disturbance) {
    const NoiseModel m = make_noise_model(n, disturbance);
    return (m.beta0 - m.beta1) / m.beta0;
}

// Eavesdropper's (unnormalized) states, one column per outcome pair
// (k, l), in the |mbar> (x) |m> coordinates described above. Column k*n + l
// has row index k'*n + l'.
struct AncillaFamily {
    NoiseModel noise;
    AttackAmplitudes amplitudes;
    Matrix states;  // n^2 rows, n^2 columns

    Vector state(int k, int l) const { return states.col(k * noise.n + l); }
};

inline AncillaFamily build_ancilla_family(const NoiseModel& m, const AttackAmplitudes& amps) {
    AncillaFamily fam;
    fam.noise = m;
    fam.amplitudes = amps;
    const int n = m.n;
    fam.states = Matrix::Zero(n * n, n * n);
    const Complex a_over_n = amps.a / double(n);
    const Complex b_over_n = amps.b / double(n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            auto col = fam.states.col(k * n + l);
            if (k == l)
                for (int j = 0; j < n; ++j) col[j * n + j] += a_over_n;
            col[k * n + l] += b_over_n;
        }
    }
    return fam;
}

inline AncillaFamily build_ancilla_family(const NoiseModel& m) {
    return build_ancilla_family(m, default_amplitudes(m));
}

// Common overlap of the normalized equal-outcome states. Verifies along
// the way that the overlaps are real and agree with each other to within
// tol, since the construction guarantees both.
inline double measured_lambda(const AncillaFamily& fam, double tol = 1e-9) {
    const int n = fam.noise.n;
    if (n < 2) throw std::invalid_argument("measured_lambda: empty family");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 0; k < n; ++k) {
        const Vector sk = fam.state(k, k);
        const double nk = sk.norm();
        for (int l = k + 1; l < n; ++l) {
            const Vector sl = fam.state(l, l);
            const Complex overlap = (sk.adjoint() * sl)(0) / (nk * sl.norm());
            if (std::abs(overlap.imag()) > tol)
                throw std::runtime_error("measured_lambda: overlap has an imaginary part");
            lo = std::min(lo, overlap.real());
            hi = std::max(hi, overlap.real());
        }
    }
    if (hi - lo > tol)
        throw std::runtime_error("measured_lambda: overlaps are not uniform");
    return 0.5 * (lo + hi);
}

namespace detail {

inline Complex unit_phase(int n, long exponent) {
    const long r = ((exponent % n) + n) % n;
    return std::polar(1.0, 2.0 * 3.14159265358979323846 * double(r) / double(n));
}

}  // namespace detail

// Joint pure state of sender (1), receiver (2), and the two eavesdropper
// systems (3, 4); coordinates indexed ((i1 n + i2) n + i3) n + i4. Kept to
// small n because the vector has n^4 entries.
inline Vector build_four_qunit_state(int n, const AttackAmplitudes& amps) {
    if (n < 2 || n > 6)
        throw std::invalid_argument("build_four_qunit_state: need 2 <= n <= 6");
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
    Vector psi = Vector::Zero(n * n * n * n);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3)
                for (int i4 = 0; i4 < n; ++i4) {
                    Complex value(0.0, 0.0);
                    if (i1 == i2)
                        value += amps.a * inv_sqrt_n *
                                 detail::unit_phase(n, long(i3) * i4) / double(n);
                    if (i1 == i3)
                        value += amps.b * inv_sqrt_n *
                                 detail::unit_phase(n, long(i2) * i4) / double(n);
                    psi[((i1 * n + i2) * n + i3) * n + i4] = value;
                }
    return psi;
}

// Project system 1 onto abar_k and system 2 onto bbar_l; the result lives
// on systems (3, 4) in computational coordinates i3*n + i4.
inline Vector project_on_outcomes(const Vector& psi, int n, int k, int l) {
    if (psi.size() != n * n * n * n)
        throw std::invalid_argument("project_on_outcomes: state size does not match n");
    if (k < 0 || k >= n || l < 0 || l >= n)
        throw std::invalid_argument("project_on_outcomes: outcome out of range");
    Vector residual = Vector::Zero(n * n);
    const double inv_n = 1.0 / double(n);  // two factors of 1/sqrt(n)
    for (int i3 = 0; i3 < n; ++i3)
        for (int i4 = 0; i4 < n; ++i4) {
            Complex acc(0.0, 0.0);
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2)
                    acc += detail::unit_phase(n, long(k) * i1 - long(l) * i2) *
                           psi[((i1 * n + i2) * n + i3) * n + i4];
            residual[i3 * n + i4] = acc * inv_n;
        }
    return residual;
}

// Express an ancilla state in the computational coordinates of systems
// (3, 4): |mbar_{k'}> is the Fourier vector w^{+k'p}/sqrt(n), |m_{l'}> is
// computational.
inline Vector ancilla_in_computational(const AncillaFamily& fam, int k, int l) {
    const int n = fam.noise.n;
    const Vector s = fam.state(k, l);
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
    Vector out = Vector::Zero(n * n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Complex acc(0.0, 0.0);
            for (int kp = 0; kp < n; ++kp)
                acc += s[kp * n + q] * detail::unit_phase(n, long(kp) * p);
            out[p * n + q] = acc * inv_sqrt_n;
        }
    return out;
}

}  // namespace pyrinfo
