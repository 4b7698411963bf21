#include "cvrep/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvrep/tolerances.hpp"

namespace cvrep {

namespace {

void check_mode(const GaussianState &state, int mode) {
    if (mode < 0 || mode >= state.modes()) {
        throw std::out_of_range(
            "mode " + std::to_string(mode) + " out of range for a " + std::to_string(state.modes()) + "-mode state");
    }
}

void check_pair(const GaussianState &state, int a, int b) {
    check_mode(state, a);
    check_mode(state, b);
    if (a == b) {
        throw std::invalid_argument("two-mode gate needs distinct modes");
    }
}

void check_finite(double v, const char *what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

GaussianState discard_or_empty(const GaussianState &state, int mode) {
    if (state.modes() == 1) {
        return GaussianState(VectorXd(0), MatrixXd(0, 0));
    }
    return discard(state, {mode});
}

GaussianState apply_local(const GaussianState &state, const std::vector<int> &modes, const MatrixXd &local) {
    return apply(state, embed(state.modes(), modes, local));
}

}  // namespace

GaussianState::GaussianState(VectorXd mean, MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() % 2 != 0) {
        throw std::invalid_argument("mean vector must have even length");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw std::invalid_argument("covariance shape does not match the mean vector");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
        throw std::invalid_argument("state has non-finite entries");
    }
    if (mean_.size() == 0) {
        return;
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > tol::symmetry * std::max(1.0, cov_.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("covariance is not symmetric");
    }
    // Squeezed states carry large and tiny eigenvalues together, so the bound is
    // checked relative to the covariance scale.
    double slack = tol::uncertainty * std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if (min_symplectic_eigenvalue() < 0.5 - slack) {
        throw std::invalid_argument("covariance violates the uncertainty principle");
    }
}

VectorXd GaussianState::symplectic_eigenvalues() const {
    const int n = modes();
    if (n == 0) {
        return VectorXd(0);
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov_);
    VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    MatrixXd half = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
    MatrixXd a = half * omega(n) * half;
    // a is antisymmetric with eigenvalues +-i nu, so a^T a has each nu^2 twice.
    Eigen::SelfAdjointEigenSolver<MatrixXd> sq(a.transpose() * a, Eigen::EigenvaluesOnly);
    VectorXd all = sq.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    VectorXd nu(n);
    for (int i = 0; i < n; ++i) {
        nu[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
    }
    return nu;
}

double GaussianState::min_symplectic_eigenvalue() const {
    if (modes() == 0) {
        return 0.5;
    }
    return symplectic_eigenvalues().minCoeff();
}

SymplecticMap SymplecticMap::identity(int n_modes) {
    return {MatrixXd::Identity(2 * n_modes, 2 * n_modes), VectorXd::Zero(2 * n_modes)};
}

SymplecticMap SymplecticMap::then(const SymplecticMap &after) const {
    if (after.matrix.rows() != matrix.rows()) {
        throw std::invalid_argument("composing maps of different sizes");
    }
    return {after.matrix * matrix, after.matrix * displacement + after.displacement};
}

bool SymplecticMap::is_symplectic(double tolerance) const {
    MatrixXd w = omega(modes());
    return (matrix * w * matrix.transpose() - w).cwiseAbs().maxCoeff() <= tolerance;
}

GaussianState apply(const GaussianState &state, const SymplecticMap &map) {
    if (map.matrix.rows() != state.mean().size()) {
        throw std::invalid_argument("map size does not match the state");
    }
    MatrixXd cov = map.matrix * state.cov() * map.matrix.transpose();
    MatrixXd sym = 0.5 * (cov + cov.transpose());
    return GaussianState(map.matrix * state.mean() + map.displacement, sym);
}

SymplecticMap embed(int n_modes, const std::vector<int> &modes, const MatrixXd &local) {
    const int k = static_cast<int>(modes.size());
    if (local.rows() != 2 * k || local.cols() != 2 * k) {
        throw std::invalid_argument("local map size does not match the mode list");
    }
    std::vector<int> index(2 * k);
    for (int i = 0; i < k; ++i) {
        index[i] = modes[i];
        index[k + i] = n_modes + modes[i];
    }
    SymplecticMap map = SymplecticMap::identity(n_modes);
    for (int r = 0; r < 2 * k; ++r) {
        for (int c = 0; c < 2 * k; ++c) {
            map.matrix(index[r], index[c]) = local(r, c);
        }
    }
    return map;
}

namespace gate_matrix {

MatrixXd squeeze_factor(double k) {
    MatrixXd m(2, 2);
    m << k, 0, 0, 1.0 / k;
    return m;
}

MatrixXd two_mode_squeeze(double r) {
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    MatrixXd m(4, 4);
    m << c, s, 0, 0,
        s, c, 0, 0,
        0, 0, c, -s,
        0, 0, -s, c;
    return m;
}

MatrixXd beam_splitter_pm() {
    const double h = std::numbers::sqrt2 / 2;
    MatrixXd m(4, 4);
    m << h, h, 0, 0,
        h, -h, 0, 0,
        0, 0, h, h,
        0, 0, h, -h;
    return m;
}

MatrixXd beam_splitter(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    MatrixXd m(4, 4);
    m << c, -s, 0, 0,
        s, c, 0, 0,
        0, 0, c, -s,
        0, 0, s, c;
    return m;
}

MatrixXd phase_shift(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    MatrixXd m(2, 2);
    m << c, -s, s, c;
    return m;
}

MatrixXd qnd(double gain) {
    MatrixXd m = MatrixXd::Identity(4, 4);
    m(1, 0) = gain;
    m(2, 3) = -gain;
    return m;
}

MatrixXd swap() {
    MatrixXd m = MatrixXd::Zero(4, 4);
    m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = 1;
    return m;
}

}  // namespace gate_matrix

GaussianState vacuum(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("vacuum needs at least one mode");
    }
    return GaussianState(VectorXd::Zero(2 * n_modes), 0.5 * MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState coherent(std::complex<double> alpha) {
    return displace(vacuum(1), 0, alpha);
}

GaussianState tensor(const GaussianState &a, const GaussianState &b) {
    const int na = a.modes();
    const int nb = b.modes();
    const int n = na + nb;
    VectorXd mean(2 * n);
    MatrixXd cov = MatrixXd::Zero(2 * n, 2 * n);
    // Source index -> combined index, keeping [all x, all p].
    auto place = [&](int offset, int nsrc, int i) { return i < nsrc ? offset + i : n + offset + (i - nsrc); };
    for (int i = 0; i < 2 * na; ++i) {
        mean[place(0, na, i)] = a.mean()[i];
        for (int j = 0; j < 2 * na; ++j) {
            cov(place(0, na, i), place(0, na, j)) = a.cov()(i, j);
        }
    }
    for (int i = 0; i < 2 * nb; ++i) {
        mean[place(na, nb, i)] = b.mean()[i];
        for (int j = 0; j < 2 * nb; ++j) {
            cov(place(na, nb, i), place(na, nb, j)) = b.cov()(i, j);
        }
    }
    return GaussianState(mean, cov);
}

GaussianState displace(const GaussianState &state, int mode, std::complex<double> alpha) {
    check_mode(state, mode);
    check_finite(alpha.real(), "displacement");
    check_finite(alpha.imag(), "displacement");
    SymplecticMap map = SymplecticMap::identity(state.modes());
    map.displacement[state.x_index(mode)] = std::numbers::sqrt2 * alpha.real();
    map.displacement[state.p_index(mode)] = std::numbers::sqrt2 * alpha.imag();
    return GaussianState(state.mean() + map.displacement, state.cov());
}

GaussianState squeeze(const GaussianState &state, int mode, double r) {
    check_finite(r, "squeezing parameter");
    return squeeze_by_factor(state, mode, std::exp(r));
}

GaussianState squeeze_by_factor(const GaussianState &state, int mode, double k) {
    check_mode(state, mode);
    check_finite(k, "squeezing factor");
    if (k == 0) {
        throw std::invalid_argument("squeezing factor must be nonzero");
    }
    return apply_local(state, {mode}, gate_matrix::squeeze_factor(k));
}

GaussianState two_mode_squeeze(const GaussianState &state, int a, int b, double r) {
    check_pair(state, a, b);
    check_finite(r, "squeezing parameter");
    return apply_local(state, {a, b}, gate_matrix::two_mode_squeeze(r));
}

GaussianState beam_splitter_pm(const GaussianState &state, int a, int b) {
    check_pair(state, a, b);
    return apply_local(state, {a, b}, gate_matrix::beam_splitter_pm());
}

GaussianState beam_splitter(const GaussianState &state, int a, int b, double angle) {
    check_pair(state, a, b);
    check_finite(angle, "beam splitter angle");
    return apply_local(state, {a, b}, gate_matrix::beam_splitter(angle));
}

GaussianState phase_shift(const GaussianState &state, int mode, double phi) {
    check_mode(state, mode);
    check_finite(phi, "phase");
    return apply_local(state, {mode}, gate_matrix::phase_shift(phi));
}

GaussianState fourier(const GaussianState &state, int mode) {
    check_mode(state, mode);
    MatrixXd m(2, 2);
    m << 0, -1, 1, 0;
    return apply_local(state, {mode}, m);
}

GaussianState inverse_fourier(const GaussianState &state, int mode) {
    check_mode(state, mode);
    MatrixXd m(2, 2);
    m << 0, 1, -1, 0;
    return apply_local(state, {mode}, m);
}

GaussianState pi_gate(const GaussianState &state, int mode) {
    check_mode(state, mode);
    return apply_local(state, {mode}, -MatrixXd::Identity(2, 2));
}

GaussianState qnd(const GaussianState &state, int control, int target, double gain) {
    check_pair(state, control, target);
    check_finite(gain, "QND gain");
    return apply_local(state, {control, target}, gate_matrix::qnd(gain));
}

GaussianState swap_modes(const GaussianState &state, int a, int b) {
    check_pair(state, a, b);
    return apply_local(state, {a, b}, gate_matrix::swap());
}

HomodyneResult homodyne(const GaussianState &state, int mode, Quadrature basis, const OutcomePolicy &policy) {
    check_mode(state, mode);
    const int n = state.modes();
    const Eigen::Index q = basis == Quadrature::x ? state.x_index(mode) : state.p_index(mode);
    const double mu = state.mean()[q];
    const double var = state.cov()(q, q);
    if (var < tol::degenerate_variance) {
        throw std::domain_error("degenerate homodyne conditioning: measured variance below threshold");
    }

    double outcome = mu;
    if (std::holds_alternative<AverageOutcome>(policy)) {
        MeasurementRecord record{mode, basis, mu, mu, var};
        return {record, discard_or_empty(state, mode)};
    }
    if (const auto *s = std::get_if<SampleOutcome>(&policy)) {
        std::normal_distribution<double> dist(mu, std::sqrt(var));
        outcome = dist(*s->rng);
    } else if (const auto *f = std::get_if<ForcedOutcome>(&policy)) {
        outcome = f->value;
    }
    check_finite(outcome, "homodyne outcome");

    std::vector<Eigen::Index> keep;
    for (int i = 0; i < n; ++i) {
        if (i != mode) {
            keep.push_back(state.x_index(i));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (i != mode) {
            keep.push_back(state.p_index(i));
        }
    }
    const auto m = static_cast<Eigen::Index>(keep.size());
    VectorXd mean(m);
    MatrixXd cov(m, m);
    VectorXd cross(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        mean[i] = state.mean()[keep[i]];
        cross[i] = state.cov()(keep[i], q);
        for (Eigen::Index j = 0; j < m; ++j) {
            cov(i, j) = state.cov()(keep[i], keep[j]);
        }
    }
    mean += cross * ((outcome - mu) / var);
    cov -= cross * cross.transpose() / var;
    cov = 0.5 * (cov + cov.transpose()).eval();

    MeasurementRecord record{mode, basis, outcome, mu, var};
    return {record, GaussianState(mean, cov)};
}

GaussianState feedforward_displace(
    const GaussianState &state, int target, Quadrature quad, double gain, const MeasurementRecord &record) {
    check_mode(state, target);
    check_finite(gain, "feedforward gain");
    VectorXd mean = state.mean();
    mean[quad == Quadrature::x ? state.x_index(target) : state.p_index(target)] += gain * record.outcome;
    return GaussianState(mean, state.cov());
}

GaussianState discard(const GaussianState &state, const std::vector<int> &modes) {
    const int n = state.modes();
    std::vector<bool> drop(n, false);
    for (int m : modes) {
        check_mode(state, m);
        drop[m] = true;
    }
    std::vector<Eigen::Index> keep;
    for (int i = 0; i < n; ++i) {
        if (!drop[i]) {
            keep.push_back(state.x_index(i));
        }
    }
    if (keep.empty()) {
        throw std::invalid_argument("cannot discard every mode");
    }
    const auto k = static_cast<Eigen::Index>(keep.size());
    for (Eigen::Index i = 0; i < k; ++i) {
        keep.push_back(keep[i] + n);
    }
    VectorXd mean(2 * k);
    MatrixXd cov(2 * k, 2 * k);
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
        mean[i] = state.mean()[keep[i]];
        for (Eigen::Index j = 0; j < 2 * k; ++j) {
            cov(i, j) = state.cov()(keep[i], keep[j]);
        }
    }
    return GaussianState(mean, cov);
}

GaussianState deferred_feedforward(
    const GaussianState &state, int source, Quadrature from_basis, int target, Quadrature quad, double gain) {
    check_pair(state, source, target);
    check_finite(gain, "feedforward gain");
    // Local order (x_s, x_t, p_s, p_t). Each case is the linear shear generated
    // by gain * q_s * conj(quad)_t, with the back-action on the source's
    // conjugate quadrature.
    MatrixXd m = MatrixXd::Identity(4, 4);
    if (from_basis == Quadrature::x && quad == Quadrature::x) {
        m(1, 0) = gain;
        m(2, 3) = -gain;
    } else if (from_basis == Quadrature::x && quad == Quadrature::p) {
        m(3, 0) = gain;
        m(2, 1) = gain;
    } else if (from_basis == Quadrature::p && quad == Quadrature::x) {
        m(1, 2) = gain;
        m(0, 3) = gain;
    } else {
        m(3, 2) = gain;
        m(0, 1) = -gain;
    }
    return apply_local(state, {source, target}, m);
}

double fidelity_with_coherent(const GaussianState &state, std::complex<double> alpha) {
    if (state.modes() != 1) {
        throw std::invalid_argument("fidelity_with_coherent needs a single-mode state");
    }
    Eigen::Matrix2d sum = state.cov() + 0.5 * Eigen::Matrix2d::Identity();
    Eigen::Vector2d delta(
        state.mean()[0] - std::numbers::sqrt2 * alpha.real(), state.mean()[1] - std::numbers::sqrt2 * alpha.imag());
    double quad = delta.dot(sum.inverse() * delta);
    return std::exp(-0.5 * quad) / std::sqrt(sum.determinant());
}

}  // namespace cvrep
