#include "cvrep/circuit.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <stdexcept>

#include "overloaded.hpp"

namespace cvrep {

std::vector<int> op_wires(const Op &op) {
    return std::visit(
        overloaded{
            [](const Qnd &g) { return std::vector<int>{g.control, g.target}; },
            [](const BeamSplitterPM &g) { return std::vector<int>{g.a, g.b}; },
            [](const BeamSplitter &g) { return std::vector<int>{g.a, g.b}; },
            [](const SqueezeFactor &g) { return std::vector<int>{g.mode}; },
            [](const TwoModeSqueeze &g) { return std::vector<int>{g.a, g.b}; },
            [](const PhaseShift &g) { return std::vector<int>{g.mode}; },
            [](const Fourier &g) { return std::vector<int>{g.mode}; },
            [](const InverseFourier &g) { return std::vector<int>{g.mode}; },
            [](const Pi &g) { return std::vector<int>{g.mode}; },
            [](const Swap &g) { return std::vector<int>{g.a, g.b}; },
            [](const Displace &g) { return std::vector<int>{g.mode}; },
            [](const Measure &g) { return std::vector<int>{g.mode}; },
            [](const FeedforwardDisplace &g) { return std::vector<int>{g.target}; },
            [](const Discard &g) { return std::vector<int>{g.mode}; },
        },
        op);
}

bool is_unitary(const Op &op) {
    return !std::holds_alternative<Measure>(op) && !std::holds_alternative<FeedforwardDisplace>(op) &&
           !std::holds_alternative<Discard>(op);
}

std::vector<std::string> Circuit::registers() const {
    std::vector<std::string> out;
    for (const auto &op : ops) {
        if (const auto *m = std::get_if<Measure>(&op)) {
            if (std::find(out.begin(), out.end(), m->reg) == out.end()) {
                out.push_back(m->reg);
            }
        }
    }
    return out;
}

std::vector<int> Circuit::output_wires() const {
    std::vector<int> live = wires;
    for (const auto &op : ops) {
        int removed = -1;
        if (const auto *m = std::get_if<Measure>(&op)) {
            removed = m->mode;
        } else if (const auto *d = std::get_if<Discard>(&op)) {
            removed = d->mode;
        }
        if (removed >= 0) {
            live.erase(std::remove(live.begin(), live.end(), removed), live.end());
        }
    }
    return live;
}

bool Circuit::is_unitary() const {
    return std::all_of(ops.begin(), ops.end(), [](const Op &op) { return cvrep::is_unitary(op); });
}

void Circuit::validate() const {
    std::set<int> live;
    for (int w : wires) {
        if (!live.insert(w).second) {
            throw std::invalid_argument("duplicate wire label " + std::to_string(w));
        }
    }
    std::set<std::string> written;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Op &op = ops[i];
        auto fail = [&](const std::string &why) {
            throw std::invalid_argument("op " + std::to_string(i + 1) + " (" + to_text(op) + "): " + why);
        };
        auto touched = op_wires(op);
        for (int w : touched) {
            if (!live.count(w)) {
                fail("wire " + std::to_string(w) + " is not live");
            }
        }
        if (touched.size() == 2 && touched[0] == touched[1]) {
            fail("two-mode op needs distinct wires");
        }
        if (const auto *m = std::get_if<Measure>(&op)) {
            live.erase(m->mode);
            written.insert(m->reg);
        } else if (const auto *d = std::get_if<Discard>(&op)) {
            live.erase(d->mode);
        } else if (const auto *f = std::get_if<FeedforwardDisplace>(&op)) {
            if (!written.count(f->reg)) {
                fail("register " + f->reg + " has not been written");
            }
        } else if (const auto *s = std::get_if<SqueezeFactor>(&op)) {
            if (s->factor == 0) {
                fail("squeezing factor must be nonzero");
            }
        }
    }
}

MatrixXd local_matrix(const Op &op) {
    MatrixXd ft(2, 2);
    ft << 0, -1, 1, 0;
    return std::visit(
        overloaded{
            [](const Qnd &g) { return gate_matrix::qnd(g.gain); },
            [](const BeamSplitterPM &) { return gate_matrix::beam_splitter_pm(); },
            [](const BeamSplitter &g) { return gate_matrix::beam_splitter(g.angle); },
            [](const SqueezeFactor &g) { return gate_matrix::squeeze_factor(g.factor); },
            [](const TwoModeSqueeze &g) { return gate_matrix::two_mode_squeeze(g.r); },
            [](const PhaseShift &g) { return gate_matrix::phase_shift(g.phi); },
            [&](const Fourier &) { return ft; },
            [&](const InverseFourier &) { return MatrixXd(ft.transpose()); },
            [](const Pi &) { return MatrixXd(-MatrixXd::Identity(2, 2)); },
            [](const Swap &) { return gate_matrix::swap(); },
            [](const Displace &) { return MatrixXd(MatrixXd::Identity(2, 2)); },
            [](const auto &) -> MatrixXd { throw std::invalid_argument("op has no symplectic matrix"); },
        },
        op);
}

SymplecticMap symplectic_of(const Circuit &circuit) {
    circuit.validate();
    const int n = circuit.n_modes();
    auto position = [&](int wire) {
        return static_cast<int>(std::find(circuit.wires.begin(), circuit.wires.end(), wire) - circuit.wires.begin());
    };
    SymplecticMap total = SymplecticMap::identity(n);
    for (const auto &op : circuit.ops) {
        if (!is_unitary(op)) {
            throw std::invalid_argument("symplectic_of needs a circuit without measurement, feedforward or discard");
        }
        std::vector<int> modes;
        for (int w : op_wires(op)) {
            modes.push_back(position(w));
        }
        SymplecticMap step = embed(n, modes, local_matrix(op));
        if (const auto *d = std::get_if<Displace>(&op)) {
            step.displacement[modes[0]] = std::numbers::sqrt2 * d->alpha.real();
            step.displacement[n + modes[0]] = std::numbers::sqrt2 * d->alpha.imag();
        }
        total = total.then(step);
    }
    return total;
}

MatrixXd point_action(const Circuit &circuit) {
    const int n = circuit.n_modes();
    return symplectic_of(circuit).matrix.topLeftCorner(n, n);
}

int RunResult::position(int wire) const {
    auto it = std::find(wires.begin(), wires.end(), wire);
    if (it == wires.end()) {
        throw std::out_of_range("wire " + std::to_string(wire) + " is not in the output");
    }
    return static_cast<int>(it - wires.begin());
}

}  // namespace cvrep
