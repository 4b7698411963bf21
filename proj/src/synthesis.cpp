#include "cvrep/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cvrep/tolerances.hpp"

namespace cvrep {

namespace {

// Entries this small after elimination are treated as exact zeros.
constexpr double kClear = 1e-14;

bool is_integer(double v) {
    return std::abs(v - std::round(v)) < tol::pivot;
}

int default_pivot(const MatrixXd &m, int c) {
    const int n = static_cast<int>(m.rows());
    int unit = -1;
    int best_int = -1;
    int best = -1;
    for (int r = c; r < n; ++r) {
        double v = std::abs(m(r, c));
        if (v <= tol::pivot) {
            continue;
        }
        if (unit < 0 && std::abs(v - 1) < tol::pivot) {
            unit = r;
        }
        if (is_integer(v) && (best_int < 0 || v > std::abs(m(best_int, c)))) {
            best_int = r;
        }
        if (best < 0 || v > std::abs(m(best, c))) {
            best = r;
        }
    }
    if (unit >= 0) {
        return unit;
    }
    return best_int >= 0 ? best_int : best;
}

Circuit steps_to_circuit(const std::vector<RowStep> &steps, const std::vector<int> &wires) {
    Circuit circuit;
    circuit.wires = wires;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        switch (it->kind) {
            case RowStep::Kind::swap:
                circuit.ops.push_back(Swap{wires[it->row], wires[it->other]});
                break;
            case RowStep::Kind::scale:
                circuit.ops.push_back(SqueezeFactor{wires[it->row], 1.0 / it->value});
                break;
            case RowStep::Kind::add:
                circuit.ops.push_back(Qnd{wires[it->other], wires[it->row], -it->value});
                break;
        }
    }
    return circuit;
}

}  // namespace

std::vector<RowStep> row_reduce(const MatrixXd &a, const std::vector<int> &pivot_rows) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) {
        throw std::invalid_argument("point transform must be square");
    }
    if (n > 0 && std::abs(a.determinant()) <= tol::singular_det) {
        throw std::invalid_argument("point transform is singular");
    }
    MatrixXd m = a;
    std::vector<RowStep> steps;
    auto add = [&](int row, int other, double value) {
        m.row(row) += value * m.row(other);
        steps.push_back({RowStep::Kind::add, row, other, value});
    };

    for (int c = 0; c < n; ++c) {
        int p = c < static_cast<int>(pivot_rows.size()) && pivot_rows[c] >= 0 ? pivot_rows[c] : default_pivot(m, c);
        if (p < c || p >= n || std::abs(m(p, c)) <= tol::pivot) {
            throw std::invalid_argument("no usable pivot for column " + std::to_string(c + 1));
        }
        if (p != c) {
            m.row(c).swap(m.row(p));
            steps.push_back({RowStep::Kind::swap, c, p, 0});
        }
        double pivot = m(c, c);
        if (pivot != 1) {
            m.row(c) /= pivot;
            m(c, c) = 1;
            steps.push_back({RowStep::Kind::scale, c, c, 1.0 / pivot});
        }
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(m(r, c)) > kClear) {
                add(r, c, -m(r, c));
            }
            m(r, c) = 0;
        }
    }
    for (int c = n - 1; c > 0; --c) {
        for (int r = c - 1; r >= 0; --r) {
            if (std::abs(m(r, c)) > kClear) {
                add(r, c, -m(r, c));
            }
            m(r, c) = 0;
        }
    }
    return steps;
}

bool final_control_avoids(const Circuit &circuit, int wire) {
    int tracked = wire;
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        if (const auto *s = std::get_if<Swap>(&*it)) {
            if (s->a == tracked) {
                tracked = s->b;
            } else if (s->b == tracked) {
                tracked = s->a;
            }
        } else if (const auto *q = std::get_if<Qnd>(&*it)) {
            return q->control != tracked;
        }
    }
    return true;
}

Circuit synthesize(const MatrixXd &a, const SynthesisOptions &options) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> wires = options.wires;
    if (wires.empty()) {
        wires.resize(n);
        std::iota(wires.begin(), wires.end(), 1);
    }
    if (static_cast<int>(wires.size()) != n) {
        throw std::invalid_argument("wire list length differs from the matrix size");
    }
    Circuit circuit = steps_to_circuit(row_reduce(a, options.pivot_rows), wires);
    if (!options.forbidden_final_control || final_control_avoids(circuit, *options.forbidden_final_control)) {
        return circuit;
    }
    // Search pivot choices, column by column, for one that meets the constraint.
    std::vector<int> choice(n, 0);
    for (int c = 0; c < n; ++c) {
        choice[c] = c;
    }
    while (true) {
        try {
            Circuit trial = steps_to_circuit(row_reduce(a, choice), wires);
            if (final_control_avoids(trial, *options.forbidden_final_control)) {
                return trial;
            }
        } catch (const std::invalid_argument &) {
            // This pivot sequence hits a zero; try the next one.
        }
        int c = n - 1;
        while (c >= 0 && choice[c] == n - 1) {
            choice[c] = c;
            --c;
        }
        if (c < 0) {
            break;
        }
        choice[c]++;
    }
    throw std::runtime_error("no pivot order avoids a final QND controlled on the forbidden wire");
}

}  // namespace cvrep
