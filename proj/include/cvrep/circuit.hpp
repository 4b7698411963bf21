#ifndef CVREP_CIRCUIT_HPP
#define CVREP_CIRCUIT_HPP

#include <complex>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cvrep/gaussian.hpp"

namespace cvrep {

// Ops name modes by wire label (1-based, as in the mode tables), not by position.

struct Qnd {
    int control;
    int target;
    double gain;
};
struct BeamSplitterPM {
    int a;
    int b;
};
struct BeamSplitter {
    int a;
    int b;
    double angle;
};
struct SqueezeFactor {
    int mode;
    double factor;
};
struct TwoModeSqueeze {
    int a;
    int b;
    double r;
};
struct PhaseShift {
    int mode;
    double phi;
};
struct Fourier {
    int mode;
};
struct InverseFourier {
    int mode;
};
struct Pi {
    int mode;
};
struct Swap {
    int a;
    int b;
};
struct Displace {
    int mode;
    std::complex<double> alpha;
};
struct Measure {
    int mode;
    Quadrature basis;
    std::string reg;
};
struct FeedforwardDisplace {
    std::string reg;
    int target;
    Quadrature quad;
    double gain;
};
struct Discard {
    int mode;
};

using Op = std::variant<
    Qnd,
    BeamSplitterPM,
    BeamSplitter,
    SqueezeFactor,
    TwoModeSqueeze,
    PhaseShift,
    Fourier,
    InverseFourier,
    Pi,
    Swap,
    Displace,
    Measure,
    FeedforwardDisplace,
    Discard>;

/// Wires touched by an op, in operand order.
std::vector<int> op_wires(const Op &op);
bool is_unitary(const Op &op);

struct Circuit {
    /// Wire labels in the order they map onto state modes.
    std::vector<int> wires;
    std::vector<Op> ops;

    int n_modes() const {
        return static_cast<int>(wires.size());
    }
    /// Register names in order of first write.
    std::vector<std::string> registers() const;
    /// Wires alive after the last op, in state order.
    std::vector<int> output_wires() const;
    bool is_unitary() const;
    /// Throws std::invalid_argument naming the first offending op.
    void validate() const;
};

/// Composed map over `circuit.wires`. Throws if the circuit measures or discards.
SymplecticMap symplectic_of(const Circuit &circuit);
/// The x block of the composed map, i.e. the point transform x -> A x.
MatrixXd point_action(const Circuit &circuit);
/// Local symplectic matrix of a single unitary op over op_wires(op).
MatrixXd local_matrix(const Op &op);

struct RunResult {
    GaussianState state;
    /// Label of each remaining state mode.
    std::vector<int> wires;
    std::map<std::string, MeasurementRecord> registers;

    int position(int wire) const;
};

/// Runs the circuit on `state`, whose modes correspond to `circuit.wires`.
RunResult run(const Circuit &circuit, const GaussianState &state, const OutcomePolicy &policy);

/// Line format: a `MODES` header listing wire labels, then one op per line.
/// Numbers print in shortest round-trip form; the parser also accepts p/q.
std::string to_text(const Circuit &circuit);
std::string to_text(const Op &op);
Circuit parse_circuit(const std::string &text);

}  // namespace cvrep

#endif
