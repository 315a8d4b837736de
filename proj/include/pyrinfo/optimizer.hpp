#pragma once
// Numerical maximization of accessible information over POVMs, independent
// of any closed form, plus a structured grid search over deformations of
// the one-parameter family. Both exist to cross-check the analytic optimum
// from the outside.
//
// The iteration is a monotone fixed-point scheme. With outcome weights
// w_kj = ln(P(j|k)/q_j) shifted by a constant c large enough to make them
// positive, form
//     R_j = sum_k p_k (w_kj + c) rho_k,
//     S   = sum_j R_j Pi_j R_j,
// and update Pi_j <- S^(-1/2) R_j Pi_j R_j S^(-1/2). The shift leaves the
// stationary points of the mutual information untouched, the sandwich
// restores completeness, and candidates are only accepted when they do not
// lower the objective; when a raw step overshoots, it is damped toward the
// current POVM until it improves. Multiple seeded restarts (one informed
// start plus random rank-one decompositions of the identity) guard against
// dormant outcomes and local traps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrinfo/information.hpp"
#include "pyrinfo/measurements.hpp"
#include "pyrinfo/numerics.hpp"
#include "pyrinfo/pyramid.hpp"

namespace pyrinfo {

struct GeneralEnsemble {
    RealVector priors;           // p_k, nonnegative, summing to one
    std::vector<Matrix> states;  // density operators, one per letter

    int size() const { return int(states.size()); }
    int dim() const { return states.empty() ? 0 : int(states.front().rows()); }
};

inline void validate_ensemble(const GeneralEnsemble& e, double tol = 1e-10) {
    if (e.size() < 2) throw std::invalid_argument("validate_ensemble: need >= 2 letters");
    if (e.priors.size() != e.size())
        throw std::invalid_argument("validate_ensemble: priors/states length mismatch");
    if (e.priors.minCoeff() < -tol)
        throw std::invalid_argument("validate_ensemble: negative prior");
    if (std::abs(e.priors.sum() - 1.0) > tol)
        throw std::invalid_argument("validate_ensemble: priors do not sum to one");
    const int d = e.dim();
    for (const Matrix& rho : e.states) {
        if (rho.rows() != d || rho.cols() != d)
            throw std::invalid_argument("validate_ensemble: inconsistent dimensions");
        if (hermiticity_error(rho) > tol)
            throw std::invalid_argument("validate_ensemble: state is not Hermitian");
        if (std::abs(rho.trace().real() - 1.0) > tol)
            throw std::invalid_argument("validate_ensemble: state trace is not one");
        const auto eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
        if (eig.values.minCoeff() < -tol)
            throw std::invalid_argument("validate_ensemble: state is not positive");
    }
}

// Equiprobable pure-state ensemble of the pyramid edges.
inline GeneralEnsemble general_ensemble(const PyramidEnsemble& p) {
    GeneralEnsemble e;
    e.priors = RealVector::Constant(p.n, 1.0 / p.n);
    for (int k = 0; k < p.n; ++k) {
        const Vector edge = p.edges.col(k);
        e.states.push_back(edge * edge.adjoint());
    }
    return e;
}

inline JointDistribution joint_distribution(const GeneralEnsemble& e, const Povm& povm) {
    if (povm.dim() != e.dim())
        throw std::invalid_argument("joint_distribution: POVM dimension mismatch");
    JointDistribution j;
    j.p.resize(e.size(), povm.size());
    for (int k = 0; k < e.size(); ++k)
        for (int m = 0; m < povm.size(); ++m) {
            const double prob = e.priors[k] * (e.states[k] * povm.elements[m]).trace().real();
            if (prob < -1e-10)
                throw std::invalid_argument("joint_distribution: negative probability");
            j.p(k, m) = std::max(prob, 0.0);
        }
    return j;
}

inline double ensemble_information(const GeneralEnsemble& e, const Povm& povm) {
    return mutual_information(joint_distribution(e, povm));
}

struct OptimizeOptions {
    std::uint64_t seed = 42;
    int restarts = 16;
    double tol = 1e-10;   // stop a restart when one sweep gains less than this
    int max_iter = 100000;
};

struct OptimizationResult {
    Povm povm;
    double info = 0.0;            // best information found
    int iterations = 0;           // sweeps used by the winning restart
    int restarts = 0;
    std::uint64_t seed = 0;
    bool converged = false;       // winning restart stopped by tolerance, not budget
    std::vector<double> history;  // winning restart's accepted objective values
};

namespace detail {

inline Matrix random_hermitian(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix x(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) x(r, c) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (x + x.adjoint());
}

inline Matrix clip_psd(const Matrix& a) {
    const auto eig = hermitian_eig(0.5 * (a + a.adjoint()));
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (int i = 0; i < eig.values.size(); ++i)
        if (eig.values[i] > 0.0)
            out += eig.values[i] * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    return out;
}

// Rescale a list of PSD matrices so they sum to the identity.
inline void sandwich_to_completeness(std::vector<Matrix>& elements) {
    const int d = int(elements.front().rows());
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& el : elements) sum += el;
    const Matrix g = inv_sqrt_psd(0.5 * (sum + sum.adjoint()));
    for (Matrix& el : elements) el = g * el * g;
}

inline double completeness_deviation(const std::vector<Matrix>& elements) {
    const int d = int(elements.front().rows());
    Matrix sum = Matrix::Constant(d, d, Complex(0, 0));
    for (const Matrix& el : elements) sum += el;
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

// Informed start: the pretty-good measurement of the ensemble, padded with
// empty outcomes up to the requested count, then nudged by a small
// Hermitian perturbation so the padding can wake up.
inline Povm informed_start(const GeneralEnsemble& e, int outcomes, std::mt19937_64& rng) {
    const int d = e.dim();
    Matrix rho_bar = Matrix::Zero(d, d);
    for (int k = 0; k < e.size(); ++k) rho_bar += e.priors[k] * e.states[k];
    const Matrix b = inv_sqrt_psd(0.5 * (rho_bar + rho_bar.adjoint()));
    std::vector<Matrix> elements;
    for (int k = 0; k < e.size(); ++k)
        elements.push_back(e.priors[k] * b * e.states[k] * b);
    while (int(elements.size()) < outcomes) elements.push_back(Matrix::Zero(d, d));
    if (int(elements.size()) > outcomes) elements.resize(outcomes);
    for (Matrix& el : elements) el = clip_psd(el + 1e-3 * random_hermitian(d, rng));
    sandwich_to_completeness(elements);
    Povm povm;
    povm.elements = std::move(elements);
    for (int m = 0; m < outcomes; ++m) povm.labels.push_back(std::to_string(m));
    return povm;
}

// Random start: rank-one pieces along Haar-random unitary columns with
// random weights, rescaled into a decomposition of the identity.
inline Povm random_start(int d, int outcomes, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    std::vector<Matrix> elements;
    while (int(elements.size()) < outcomes) {
        Matrix x(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) x(r, c) = Complex(gauss(rng), gauss(rng));
        const Eigen::HouseholderQR<Matrix> qr(x);
        Matrix q = qr.householderQ();
        const Matrix r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int c = 0; c < d; ++c) {
            const Complex diag = r_mat(c, c);
            if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
        }
        for (int c = 0; c < d && int(elements.size()) < outcomes; ++c)
            elements.push_back(weight(rng) * q.col(c) * q.col(c).adjoint());
    }
    sandwich_to_completeness(elements);
    Povm povm;
    povm.elements = std::move(elements);
    for (int m = 0; m < outcomes; ++m) povm.labels.push_back(std::to_string(m));
    return povm;
}

struct RestartOutcome {
    Povm povm;
    double info = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

inline RestartOutcome run_restart(const GeneralEnsemble& e, Povm povm,
                                  const OptimizeOptions& opts) {
    const int d = e.dim();
    const int outcomes = povm.size();
    RestartOutcome out;
    out.info = ensemble_information(e, povm);
    out.history.push_back(out.info);
    out.converged = false;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        out.iterations = iter;
        const JointDistribution joint = joint_distribution(e, povm);
        const RealVector q = joint.p.colwise().sum();

        // log-likelihood-ratio weights, clamped where a letter never fires
        RealMatrix w(e.size(), outcomes);
        double min_w = 0.0;
        for (int m = 0; m < outcomes; ++m) {
            if (q[m] <= 1e-14) continue;  // dormant outcome
            for (int k = 0; k < e.size(); ++k) {
                const double cond = joint.p(k, m) / e.priors[k];
                const double value = cond > 0.0 ? std::max(std::log(cond / q[m]), -60.0) : -60.0;
                w(k, m) = value;
                min_w = std::min(min_w, value);
            }
        }
        const double shift = 0.01 + std::max(0.0, -min_w);

        std::vector<Matrix> r_ops(outcomes, Matrix::Zero(d, d));
        for (int m = 0; m < outcomes; ++m) {
            if (q[m] <= 1e-14) continue;
            for (int k = 0; k < e.size(); ++k)
                r_ops[m] += e.priors[k] * (w(k, m) + shift) * e.states[k];
        }

        Matrix s = Matrix::Zero(d, d);
        for (int m = 0; m < outcomes; ++m)
            s += r_ops[m] * povm.elements[m] * r_ops[m];
        const Matrix g = inv_sqrt_psd(0.5 * (s + s.adjoint()));

        Povm candidate = povm;
        for (int m = 0; m < outcomes; ++m)
            candidate.elements[m] = g * r_ops[m] * povm.elements[m] * r_ops[m] * g;
        if (completeness_deviation(candidate.elements) > 1e-12)
            sandwich_to_completeness(candidate.elements);

        double candidate_info = ensemble_information(e, candidate);
        if (candidate_info < out.info) {
            // overshoot: damp toward the current POVM (convex mixes of two
            // POVMs stay valid POVMs)
            double step = 0.5;
            bool improved = false;
            while (step >= 1e-8) {
                Povm damped = povm;
                for (int m = 0; m < outcomes; ++m)
                    damped.elements[m] =
                        (1.0 - step) * povm.elements[m] + step * candidate.elements[m];
                const double damped_info = ensemble_information(e, damped);
                if (damped_info > out.info) {
                    candidate = std::move(damped);
                    candidate_info = damped_info;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) {
                out.converged = true;  // no ascent direction left along this step
                break;
            }
        }

        const double gain = candidate_info - out.info;
        povm = std::move(candidate);
        out.info = candidate_info;
        out.history.push_back(out.info);
        if (gain < opts.tol) {
            out.converged = true;
            break;
        }
    }
    out.povm = std::move(povm);
    return out;
}

}  // namespace detail

inline OptimizationResult optimize(const GeneralEnsemble& e, int outcomes,
                                   const OptimizeOptions& opts = {}) {
    validate_ensemble(e);
    if (outcomes < 2) throw std::invalid_argument("optimize: need >= 2 outcomes");
    if (opts.restarts < 1) throw std::invalid_argument("optimize: need >= 1 restart");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("optimize: tolerance must be positive");

    OptimizationResult best;
    best.restarts = opts.restarts;
    best.seed = opts.seed;
    best.info = -1.0;
    for (int r = 0; r < opts.restarts; ++r) {
        std::mt19937_64 rng(opts.seed + std::uint64_t(r));
        Povm start = (r == 0) ? detail::informed_start(e, outcomes, rng)
                              : detail::random_start(e.dim(), outcomes, rng);
        detail::RestartOutcome outcome = detail::run_restart(e, std::move(start), opts);
        if (outcome.info > best.info) {
            best.info = outcome.info;
            best.povm = std::move(outcome.povm);
            best.iterations = outcome.iterations;
            best.converged = outcome.converged;
            best.history = std::move(outcome.history);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Structured search: family members rotated about the pyramid axis, singly
// and in pairwise convex mixtures.

struct StructuredSearchSpace {
    std::vector<double> t_grid;           // rescaled family parameter T in [0, 1]
    std::vector<double> rotation_angles;  // radians, applied in the axis complement
    std::vector<double> mixture_weights;  // weights of the first mixture component
};

inline StructuredSearchSpace default_search_space() {
    StructuredSearchSpace space;
    for (int i = 0; i <= 10; ++i) space.t_grid.push_back(i / 10.0);
    space.rotation_angles = {0.0, 0.39269908169872414, 0.78539816339744828,
                             1.1780972450961724, 1.5707963267948966};
    space.mixture_weights = {0.25, 0.5, 0.75};
    return space;
}

struct StructuredProbe {
    double T1 = 0.0, angle1 = 0.0;
    double T2 = 0.0, angle2 = 0.0;
    double weight = 1.0;  // weight of the first component; 1 for singles
    bool mixture = false;
    double info = 0.0;
};

struct StructuredSearchReport {
    StructuredProbe best;
    double best_single = 0.0;
    double best_mixture = 0.0;  // zero when the space has no mixtures
    int evaluated = 0;
};

namespace detail {

// Rotation by theta in the plane of the first two directions orthogonal to
// the pyramid axis. The complement is one-dimensional for n = 2, where only
// the identity survives.
inline Matrix axis_complement_rotation(const PyramidEnsemble& p, double theta) {
    const int n = p.n;
    if (theta == 0.0 || n < 3) return Matrix::Identity(n, n);
    Matrix seed = Matrix::Zero(n, n);
    seed.col(0) = p.height.normalized();
    for (int c = 1; c < n; ++c) seed(c - 1, c) = Complex(1.0, 0.0);
    const Eigen::HouseholderQR<Matrix> qr(seed);
    const Matrix q = qr.householderQ();
    const Vector u1 = q.col(1);
    const Vector u2 = q.col(2);
    Matrix rot = Matrix::Identity(n, n);
    const double c = std::cos(theta), s = std::sin(theta);
    rot += (c - 1.0) * (u1 * u1.adjoint() + u2 * u2.adjoint());
    rot += s * (u2 * u1.adjoint() - u1 * u2.adjoint());
    return rot;
}

inline Povm rotated_family(const PyramidEnsemble& p, double T, double theta) {
    Povm fam = family_povm(p, family_t(p, T));
    if (theta != 0.0 && p.n >= 3) {
        const Matrix u = axis_complement_rotation(p, theta);
        for (Matrix& el : fam.elements) el = u * el * u.adjoint();
    }
    return fam;
}

}  // namespace detail

inline StructuredSearchReport structured_search(
    const PyramidEnsemble& p, const StructuredSearchSpace& space = default_search_space()) {
    if (space.t_grid.empty())
        throw std::invalid_argument("structured_search: empty parameter grid");
    const GeneralEnsemble e = general_ensemble(p);
    std::vector<double> angles = space.rotation_angles;
    if (angles.empty() || p.n == 2) angles = {0.0};

    struct Single {
        double T, angle;
        Povm povm;
        double info;
    };
    std::vector<Single> singles;
    StructuredSearchReport report;
    report.best.info = -1.0;
    for (double T : space.t_grid) {
        for (double angle : angles) {
            Single s{T, angle, detail::rotated_family(p, T, angle), 0.0};
            s.info = ensemble_information(e, s.povm);
            ++report.evaluated;
            report.best_single = std::max(report.best_single, s.info);
            if (s.info > report.best.info) {
                report.best = StructuredProbe{T, angle, 0.0, 0.0, 1.0, false, s.info};
            }
            singles.push_back(std::move(s));
        }
    }

    for (std::size_t i = 0; i < singles.size(); ++i) {
        for (std::size_t j = i + 1; j < singles.size(); ++j) {
            for (double wgt : space.mixture_weights) {
                Povm mixed;
                for (const Matrix& el : singles[i].povm.elements)
                    mixed.elements.push_back(wgt * el);
                for (const Matrix& el : singles[j].povm.elements)
                    mixed.elements.push_back((1.0 - wgt) * el);
                mixed.labels.assign(mixed.elements.size(), "");
                const double info = ensemble_information(e, mixed);
                ++report.evaluated;
                report.best_mixture = std::max(report.best_mixture, info);
                if (info > report.best.info) {
                    report.best = StructuredProbe{singles[i].T,  singles[i].angle,
                                                  singles[j].T,  singles[j].angle,
                                                  wgt,           true,
                                                  info};
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Cross-check of the numerical optimizer against the closed-form optimum.

struct VerifyRow {
    int n = 0;
    double lambda = 0.0;
    double closed_form = 0.0;
    double numerical = 0.0;
    double deficit = 0.0;  // closed form minus numerical, when positive
    double excess = 0.0;   // numerical minus closed form, when positive
    int iterations = 0;
    bool converged = false;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    double worst_deficit = 0.0;
    double worst_excess = 0.0;
};

// Run the optimizer with extra outcomes beyond the alphabet size and
// compare against the closed-form accessible information.
inline VerifyReport verify_against_closed_form(const std::vector<int>& alphabet_sizes,
                                               const std::vector<double>& lambdas,
                                               int extra_outcomes,
                                               const OptimizeOptions& opts = {}) {
    VerifyReport report;
    for (int n : alphabet_sizes) {
        for (double lambda : lambdas) {
            const auto p = make_pyramid(n, lambda);
            const auto closed = optimum(p);
            const auto result = optimize(general_ensemble(p), n + extra_outcomes, opts);
            VerifyRow row;
            row.n = n;
            row.lambda = lambda;
            row.closed_form = closed.i_max;
            row.numerical = result.info;
            row.deficit = std::max(0.0, closed.i_max - result.info);
            row.excess = std::max(0.0, result.info - closed.i_max);
            row.iterations = result.iterations;
            row.converged = result.converged;
            report.worst_deficit = std::max(report.worst_deficit, row.deficit);
            report.worst_excess = std::max(report.worst_excess, row.excess);
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace pyrinfo
