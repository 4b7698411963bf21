#ifndef CVREP_GAUSSIAN_HPP
#define CVREP_GAUSSIAN_HPP

#include <complex>
#include <random>
#include <variant>
#include <vector>

#include "cvrep/linalg.hpp"

namespace cvrep {

enum class Quadrature { x, p };

/// Mean and covariance of an n-mode Gaussian state.
///
/// Conventions: hbar = 1, x = (a + a^dag)/sqrt(2), vacuum variance 1/2, and the
/// phase-space ordering [x1..xn, p1..pn]. Modes are 0-based.
class GaussianState {
   public:
    /// Validates symmetry and the uncertainty bound. A 0-mode state is allowed so
    /// that measuring the last mode has somewhere to land.
    GaussianState(VectorXd mean, MatrixXd cov);

    int modes() const {
        return static_cast<int>(mean_.size() / 2);
    }
    const VectorXd &mean() const {
        return mean_;
    }
    const MatrixXd &cov() const {
        return cov_;
    }
    Eigen::Index x_index(int mode) const {
        return mode;
    }
    Eigen::Index p_index(int mode) const {
        return modes() + mode;
    }

    /// Ascending symplectic eigenvalues of the covariance.
    VectorXd symplectic_eigenvalues() const;
    double min_symplectic_eigenvalue() const;

   private:
    VectorXd mean_;
    MatrixXd cov_;
};

/// Affine phase-space map v -> matrix v + displacement.
struct SymplecticMap {
    MatrixXd matrix;
    VectorXd displacement;

    static SymplecticMap identity(int n_modes);
    int modes() const {
        return static_cast<int>(matrix.rows() / 2);
    }
    /// `after` applied to the result of `this`.
    SymplecticMap then(const SymplecticMap &after) const;
    bool is_symplectic(double tolerance) const;
};

GaussianState apply(const GaussianState &state, const SymplecticMap &map);

/// Embeds a 2k x 2k local map acting on `modes` into an n-mode identity.
SymplecticMap embed(int n_modes, const std::vector<int> &modes, const MatrixXd &local);

struct MeasurementRecord {
    int mode = 0;
    Quadrature basis = Quadrature::x;
    double outcome = 0;
    /// Marginal of the measured quadrature just before the measurement.
    double marginal_mean = 0;
    double marginal_variance = 0;
};

/// How homodyne outcomes are chosen.
struct SampleOutcome {
    std::mt19937_64 *rng;
};
struct ForcedOutcome {
    double value;
};
/// Conditions on the marginal mean.
struct MeanOutcome {};
/// Averages over the outcome distribution. A lone homodyne then reduces to a
/// partial trace; the circuit interpreter also defers feedforward (see run()).
struct AverageOutcome {};
using OutcomePolicy = std::variant<SampleOutcome, ForcedOutcome, MeanOutcome, AverageOutcome>;

struct HomodyneResult {
    MeasurementRecord record;
    GaussianState state;
};

GaussianState vacuum(int n_modes);
GaussianState coherent(std::complex<double> alpha);
/// Independent product of two states, modes of `a` first.
GaussianState tensor(const GaussianState &a, const GaussianState &b);

GaussianState displace(const GaussianState &state, int mode, std::complex<double> alpha);
/// x -> e^r x, p -> e^-r p.
GaussianState squeeze(const GaussianState &state, int mode, double r);
/// x -> k x, p -> p / k. Negative k is allowed (k = -1 is the pi gate).
GaussianState squeeze_by_factor(const GaussianState &state, int mode, double k);
GaussianState two_mode_squeeze(const GaussianState &state, int a, int b, double r);
/// Balanced "+-" splitter: a <- (a + b)/sqrt2, b <- (a - b)/sqrt2 on both quadratures.
GaussianState beam_splitter_pm(const GaussianState &state, int a, int b);
/// Mode-space rotation: a <- a cos(t) - b sin(t), b <- a sin(t) + b cos(t).
GaussianState beam_splitter(const GaussianState &state, int a, int b, double angle);
/// Rotates (x, p) by phi. phi = pi/2 is the Fourier gate, phi = pi the pi gate.
GaussianState phase_shift(const GaussianState &state, int mode, double phi);
GaussianState fourier(const GaussianState &state, int mode);
GaussianState inverse_fourier(const GaussianState &state, int mode);
GaussianState pi_gate(const GaussianState &state, int mode);
/// x_t += gain x_c and p_c -= gain p_t.
GaussianState qnd(const GaussianState &state, int control, int target, double gain);
GaussianState swap_modes(const GaussianState &state, int a, int b);

HomodyneResult homodyne(const GaussianState &state, int mode, Quadrature basis, const OutcomePolicy &policy);
GaussianState feedforward_displace(
    const GaussianState &state, int target, Quadrature quad, double gain, const MeasurementRecord &record);
GaussianState discard(const GaussianState &state, const std::vector<int> &modes);

/// Coherent stand-in for "measure `from_basis` on `source`, then displace `quad` of
/// `target` by gain * outcome". The measured quadrature of `source` is left
/// unchanged, so tracing `source` out afterwards yields the outcome average.
GaussianState deferred_feedforward(
    const GaussianState &state, int source, Quadrature from_basis, int target, Quadrature quad, double gain);

/// <alpha| rho |alpha> for a single-mode Gaussian rho.
double fidelity_with_coherent(const GaussianState &state, std::complex<double> alpha);

/// Local symplectic matrices of the gates, over the listed modes in order.
namespace gate_matrix {
MatrixXd squeeze_factor(double k);
MatrixXd two_mode_squeeze(double r);
MatrixXd beam_splitter_pm();
MatrixXd beam_splitter(double angle);
MatrixXd phase_shift(double phi);
/// Over (control, target).
MatrixXd qnd(double gain);
MatrixXd swap();
}  // namespace gate_matrix

}  // namespace cvrep

#endif
