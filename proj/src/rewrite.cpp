#include "cvrep/rewrite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvrep {

namespace {

[[noreturn]] void mismatch(const std::string &why) {
    throw std::invalid_argument("rewrite pattern mismatch: " + why);
}

template <class T>
const T &expect(const Op &op, const char *what) {
    const T *p = std::get_if<T>(&op);
    if (!p) {
        mismatch(std::string("expected ") + what + ", found " + to_text(op));
    }
    return *p;
}

std::vector<Op> replacement(RewriteRule rule, const std::vector<Op> &w) {
    constexpr double quarter_turn = std::numbers::pi / 4;
    constexpr double root2 = std::numbers::sqrt2;
    switch (rule) {
        case RewriteRule::r1: {
            const auto &g = expect<Qnd>(w[0], "QND");
            const auto &h = expect<Qnd>(w[1], "QND");
            if (h.control != g.target || h.target != g.control) {
                mismatch("rule 1 needs QND(W0->W1) then QND(W1->W0)");
            }
            const double k = 1 + g.gain * h.gain;
            if (std::abs(k) < 1e-12) {
                throw std::invalid_argument("rule 1 requires 1+ab != 0");
            }
            const int w0 = g.control;
            const int w1 = g.target;
            return {SqueezeFactor{w0, k}, Qnd{w1, w0, h.gain}, Qnd{w0, w1, g.gain}, SqueezeFactor{w1, 1 / k}};
        }
        case RewriteRule::r2: {
            const auto &s = expect<SqueezeFactor>(w[0], "SQZ");
            const auto &q = expect<Qnd>(w[1], "QND");
            if (q.control != s.mode) {
                mismatch("rule 2 needs the QND controlled on the squeezed wire");
            }
            return {Qnd{q.control, q.target, s.factor * q.gain}, s};
        }
        case RewriteRule::r3: {
            const auto &s = expect<SqueezeFactor>(w[0], "SQZ");
            const auto &q = expect<Qnd>(w[1], "QND");
            if (q.target != s.mode) {
                mismatch("rule 3 needs the QND targeting the squeezed wire");
            }
            return {Qnd{q.control, q.target, q.gain / s.factor}, s};
        }
        case RewriteRule::r4: {
            const auto &g = expect<Qnd>(w[0], "QND");
            const auto &h = expect<Qnd>(w[1], "QND");
            if (h.control != g.target || h.target == g.control || h.target == g.target) {
                mismatch("rule 4 needs QND(W1->W2) then QND(W2->W0)");
            }
            const int w0 = h.target;
            const int w1 = g.control;
            const int w2 = g.target;
            return {Qnd{w2, w0, h.gain}, Qnd{w1, w0, g.gain * h.gain}, Qnd{w1, w2, g.gain}};
        }
        case RewriteRule::r5: {
            const auto &g = expect<Qnd>(w[0], "QND");
            const auto &h = expect<Qnd>(w[1], "QND");
            if (h.target != g.control || h.control == g.target) {
                mismatch("rule 5 needs QND(W0->W1) then QND(W2->W0)");
            }
            const int w0 = g.control;
            const int w1 = g.target;
            const int w2 = h.control;
            return {Qnd{w2, w0, h.gain}, Qnd{w0, w1, g.gain}, Qnd{w2, w1, -g.gain * h.gain}};
        }
        case RewriteRule::r6: {
            const auto &q = expect<Qnd>(w[0], "QND");
            return {Fourier{q.control}, Fourier{q.target}, Qnd{q.target, q.control, -q.gain},
                    InverseFourier{q.control}, InverseFourier{q.target}};
        }
        case RewriteRule::r7: {
            const auto &b = expect<BeamSplitter>(w[0], "BS");
            if (std::abs(b.angle - quarter_turn) > 1e-12) {
                mismatch("rule 7 needs a pi/4 splitter");
            }
            return {Qnd{b.b, b.a, -1}, Qnd{b.a, b.b, 0.5}, SqueezeFactor{b.b, root2}, SqueezeFactor{b.a, 1 / root2}};
        }
        case RewriteRule::r8: {
            const auto &g = expect<Qnd>(w[0], "QND");
            const auto &h = expect<Qnd>(w[1], "QND");
            if (h.control != g.target || h.target != g.control || g.gain != 1 || h.gain != -1) {
                mismatch("rule 8 needs QND(W1->W0,1) then QND(W0->W1,-1)");
            }
            const int w0 = g.target;
            const int w1 = g.control;
            return {BeamSplitter{w0, w1, -quarter_turn}, SqueezeFactor{w0, root2}, SqueezeFactor{w1, root2},
                    Qnd{w0, w1, -1}, SqueezeFactor{w1, 0.5}};
        }
        case RewriteRule::measure_control: {
            const auto &q = expect<Qnd>(w[0], "QND");
            const auto &m = expect<Measure>(w[1], "MEAS");
            if (m.basis == Quadrature::x && m.mode == q.control) {
                return {m, FeedforwardDisplace{m.reg, q.target, Quadrature::x, q.gain}};
            }
            if (m.basis == Quadrature::p && m.mode == q.target) {
                return {m, FeedforwardDisplace{m.reg, q.control, Quadrature::p, -q.gain}};
            }
            mismatch("measure-control needs x on the control or p on the target");
        }
    }
    mismatch("unknown rule");
}

}  // namespace

int rule_window(RewriteRule rule) {
    switch (rule) {
        case RewriteRule::r6:
        case RewriteRule::r7:
            return 1;
        default:
            return 2;
    }
}

RewriteRule parse_rule(const std::string &name) {
    if (name == "measure-control") {
        return RewriteRule::measure_control;
    }
    if (name.size() == 1 && name[0] >= '1' && name[0] <= '8') {
        return static_cast<RewriteRule>(name[0] - '0');
    }
    throw std::invalid_argument("unknown rewrite rule '" + name + "'");
}

Circuit rewrite(const Circuit &circuit, RewriteRule rule, std::size_t position) {
    const auto len = static_cast<std::size_t>(rule_window(rule));
    if (position + len > circuit.ops.size()) {
        mismatch("window runs past the end of the circuit");
    }
    std::vector<Op> window(circuit.ops.begin() + static_cast<long>(position),
                           circuit.ops.begin() + static_cast<long>(position + len));
    std::vector<Op> repl = replacement(rule, window);
    Circuit out;
    out.wires = circuit.wires;
    out.ops.assign(circuit.ops.begin(), circuit.ops.begin() + static_cast<long>(position));
    out.ops.insert(out.ops.end(), repl.begin(), repl.end());
    out.ops.insert(out.ops.end(), circuit.ops.begin() + static_cast<long>(position + len), circuit.ops.end());
    out.validate();
    return out;
}

}  // namespace cvrep
