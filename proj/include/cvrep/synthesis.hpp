#ifndef CVREP_SYNTHESIS_HPP
#define CVREP_SYNTHESIS_HPP

#include <optional>
#include <vector>

#include "cvrep/circuit.hpp"

namespace cvrep {

/// One elementary row operation, rows 0-based.
struct RowStep {
    enum class Kind { swap, scale, add };
    Kind kind;
    int row;
    /// Other row for swap and add.
    int other;
    /// Scale factor, or the multiple of `other` added to `row`.
    double value;
};

/// Forward elimination with partial pivoting followed by back substitution.
/// `pivot_rows[c]`, when present and >= 0, picks the current row used as the pivot
/// for column c; otherwise the first +-1 entry wins, then the largest integer,
/// then the largest magnitude.
std::vector<RowStep> row_reduce(const MatrixXd &a, const std::vector<int> &pivot_rows = {});

struct SynthesisOptions {
    /// Wire labels for the rows of A; defaults to 1..n.
    std::vector<int> wires;
    std::vector<int> pivot_rows;
    /// Wire label whose output must not control the last QND gate.
    std::optional<int> forbidden_final_control;
};

/// Circuit of QND, squeeze and swap gates whose point action is A. Each row step
/// becomes its inverse gate and the list is read backwards.
Circuit synthesize(const MatrixXd &a, const SynthesisOptions &options = {});

/// True when the last QND gate is not controlled on whatever ends up on `wire`.
bool final_control_avoids(const Circuit &circuit, int wire);

}  // namespace cvrep

#endif
