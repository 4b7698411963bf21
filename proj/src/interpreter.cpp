#include <algorithm>
#include <map>
#include <stdexcept>

#include "cvrep/circuit.hpp"
#include "overloaded.hpp"

namespace cvrep {

RunResult run(const Circuit &circuit, const GaussianState &state, const OutcomePolicy &policy) {
    circuit.validate();
    if (state.modes() != circuit.n_modes()) {
        throw std::invalid_argument("state has " + std::to_string(state.modes()) + " modes, circuit expects " +
                                    std::to_string(circuit.n_modes()));
    }
    RunResult out{state, circuit.wires, {}};
    auto pos = [&](int wire) { return out.position(wire); };
    auto drop = [&](int wire) { out.wires.erase(std::find(out.wires.begin(), out.wires.end(), wire)); };

    // When averaging, a measured mode stays in the state under a negative label
    // and feedforward becomes a coherent coupling from it; it is traced out at
    // the end.
    const bool averaging = std::holds_alternative<AverageOutcome>(policy);
    std::map<std::string, int> held;

    for (const auto &op : circuit.ops) {
        const GaussianState &s = out.state;
        std::visit(
            overloaded{
                [&](const Qnd &g) { out.state = qnd(s, pos(g.control), pos(g.target), g.gain); },
                [&](const BeamSplitterPM &g) { out.state = beam_splitter_pm(s, pos(g.a), pos(g.b)); },
                [&](const BeamSplitter &g) { out.state = beam_splitter(s, pos(g.a), pos(g.b), g.angle); },
                [&](const SqueezeFactor &g) { out.state = squeeze_by_factor(s, pos(g.mode), g.factor); },
                [&](const TwoModeSqueeze &g) { out.state = two_mode_squeeze(s, pos(g.a), pos(g.b), g.r); },
                [&](const PhaseShift &g) { out.state = phase_shift(s, pos(g.mode), g.phi); },
                [&](const Fourier &g) { out.state = fourier(s, pos(g.mode)); },
                [&](const InverseFourier &g) { out.state = inverse_fourier(s, pos(g.mode)); },
                [&](const Pi &g) { out.state = pi_gate(s, pos(g.mode)); },
                [&](const Swap &g) { out.state = swap_modes(s, pos(g.a), pos(g.b)); },
                [&](const Displace &g) { out.state = displace(s, pos(g.mode), g.alpha); },
                [&](const Measure &g) {
                    if (averaging) {
                        const int p = pos(g.mode);
                        const auto q = g.basis == Quadrature::x ? s.x_index(p) : s.p_index(p);
                        out.registers[g.reg] = {g.mode, g.basis, s.mean()[q], s.mean()[q], s.cov()(q, q)};
                        const int label = -static_cast<int>(held.size()) - 1;
                        held[g.reg] = label;
                        out.wires[p] = label;
                        return;
                    }
                    HomodyneResult res = homodyne(s, pos(g.mode), g.basis, policy);
                    res.record.mode = g.mode;
                    out.registers[g.reg] = res.record;
                    out.state = res.state;
                    drop(g.mode);
                },
                [&](const FeedforwardDisplace &g) {
                    if (averaging) {
                        const auto &rec = out.registers.at(g.reg);
                        out.state = deferred_feedforward(s, pos(held.at(g.reg)), rec.basis, pos(g.target), g.quad, g.gain);
                        return;
                    }
                    out.state = feedforward_displace(s, pos(g.target), g.quad, g.gain, out.registers.at(g.reg));
                },
                [&](const Discard &g) {
                    out.state = discard(s, {pos(g.mode)});
                    drop(g.mode);
                },
            },
            op);
    }
    if (!held.empty()) {
        std::vector<int> trace;
        for (const auto &[reg, label] : held) {
            trace.push_back(pos(label));
        }
        if (trace.size() == out.wires.size()) {
            out.state = GaussianState(VectorXd(0), MatrixXd(0, 0));
            out.wires.clear();
        } else {
            out.state = discard(out.state, trace);
            for (const auto &[reg, label] : held) {
                drop(label);
            }
        }
    }
    return out;
}

}  // namespace cvrep
