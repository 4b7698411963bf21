#include "cvrep/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace cvrep {

namespace {

GaussianState keep_only(const RunResult &res, int wire) {
    std::vector<int> drop;
    for (int i = 0; i < static_cast<int>(res.wires.size()); ++i) {
        if (res.wires[i] != wire) {
            drop.push_back(i);
        }
    }
    return discard(res.state, drop);
}

GaussianState erase(const GaussianState &state, ErasureTag tag) {
    return discard(state, erasure_pattern(tag).erased);
}

}  // namespace

double fidelity_formula(ErasureTag tag, double r) {
    const double e = std::exp(-2 * r);
    switch (tag) {
        case ErasureTag::E1:
            return 1;
        case ErasureTag::E2:
        case ErasureTag::E3:
            return 1 / (1 + 2 * e);
        case ErasureTag::E4:
            return 1 / (1 + e);
    }
    return 0;
}

GaussianState optical_recovered_state(
    ErasureTag tag, double r, std::complex<double> alpha, const OutcomePolicy &policy) {
    GaussianState input = tensor(coherent(alpha), vacuum(4));
    RunResult encoded = run(optical_encoder(r), input, policy);
    RunResult decoded = run(optical_decoder(tag), erase(encoded.state, tag), policy);
    return keep_only(decoded, optical_recovery_wire(tag));
}

double optical_recovery_fidelity(ErasureTag tag, double r, std::complex<double> alpha, const OutcomePolicy &policy) {
    return fidelity_with_coherent(optical_recovered_state(tag, r, alpha, policy), alpha);
}

GaussianState ideal_encoded_state(std::complex<double> alpha, double r) {
    GaussianState ancilla = squeeze(vacuum(1), 0, -r);
    GaussianState state = coherent(alpha);
    for (int i = 0; i < 4; ++i) {
        state = tensor(state, ancilla);
    }
    return run(ideal_encoder(), state, AverageOutcome{}).state;
}

GaussianState ideal_recovered_state(ErasureTag tag, double r, std::complex<double> alpha) {
    GaussianState survivors = erase(ideal_encoded_state(alpha, r), tag);
    RunResult decoded = run(ideal_decoder(tag), survivors, AverageOutcome{});
    return keep_only(decoded, ideal_recovery_wire(tag));
}

double min_simulated_fidelity(double r) {
    double worst = 1;
    for (ErasureTag tag : {ErasureTag::E1, ErasureTag::E2, ErasureTag::E3, ErasureTag::E4}) {
        worst = std::min(worst, optical_recovery_fidelity(tag, r, 0.0));
    }
    return worst;
}

}  // namespace cvrep
