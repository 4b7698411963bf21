#ifndef CVREP_PROTOCOL_HPP
#define CVREP_PROTOCOL_HPP

#include <complex>

#include "cvrep/library.hpp"

namespace cvrep {

/// F1 = 1, F2 = F3 = 1/(1 + 2e^-2r), F4 = 1/(1 + e^-2r).
double fidelity_formula(ErasureTag tag, double r);

/// Coherent input, optical encoder at squeezing r, erasure, optical decoder.
/// Returns the single-mode state on the recovery wire. The default averages over
/// homodyne outcomes; any other policy gives the state for particular outcomes.
GaussianState optical_recovered_state(
    ErasureTag tag, double r, std::complex<double> alpha, const OutcomePolicy &policy = AverageOutcome{});
double optical_recovery_fidelity(
    ErasureTag tag, double r, std::complex<double> alpha, const OutcomePolicy &policy = AverageOutcome{});

/// Coherent input on wire 1 and x-squeezed vacua (factor e^-r) on wires 2..5,
/// pushed through the ideal encoder.
GaussianState ideal_encoded_state(std::complex<double> alpha, double r);
GaussianState ideal_recovered_state(ErasureTag tag, double r, std::complex<double> alpha);

/// Smallest of F1..F4 from the simulated pipeline.
double min_simulated_fidelity(double r);

}  // namespace cvrep

#endif
