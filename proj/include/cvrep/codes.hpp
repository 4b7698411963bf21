#ifndef CVREP_CODES_HPP
#define CVREP_CODES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvrep/gaussian.hpp"
#include "cvrep/linalg.hpp"

namespace cvrep {

/// Edges of the complete graph on N vertices, lexicographic. Vertices are 1-based.
struct EdgeBasis {
    int N = 0;
    std::vector<std::pair<int, int>> edges;

    int size() const {
        return static_cast<int>(edges.size());
    }
    /// Position of edge {j, k}; order of j and k does not matter.
    int index(int j, int k) const;
    /// Unit vector e_jk with the convention e_jk = -e_kj.
    VectorXd edge_vector(int j, int k) const;
};

EdgeBasis edge_basis(int N);

/// e_1j + e_jk + e_k1.
VectorXd triangle_vector(const EdgeBasis &basis, int j, int k);
/// Directed triangle e_ij + e_jk + e_ki through any three vertices.
VectorXd directed_triangle(const EdgeBasis &basis, int i, int j, int k);
/// Sum of e_jk over k != j.
VectorXd star_vector(const EdgeBasis &basis, int j);

/// CSS code: pure-X generators v.X and pure-P generators w.P.
struct StabilizerCode {
    int n_modes = 0;
    MatrixXd x_rows;
    MatrixXd p_rows;

    int generator_count() const {
        return static_cast<int>(x_rows.rows() + p_rows.rows());
    }
    /// [x_rows | 0 ; 0 | p_rows] over 2n columns.
    MatrixXd generator_matrix() const;
    /// Max |v.w| over all X/P row pairs.
    double max_cross_product() const;
};

StabilizerCode build_general_code(int N);
StabilizerCode build_five_mode_code();

double symplectic_product(const VectorXd &u, const VectorXd &v);

/// Erased modes are 0-based.
struct ErasurePattern {
    std::vector<int> erased;
    std::optional<int> recovery_vertex;
};

/// Edges not touching vertex r. For the five-mode code (N = 4, five modes) the
/// fixed patterns E1..E4 are used.
ErasurePattern erasure_for_vertex(const StabilizerCode &code, const EdgeBasis &basis, int r);
/// The fixed five-mode pattern E_r, r in 1..4.
ErasurePattern five_mode_erasure(int r);

struct CorrectabilityReport {
    bool correctable = false;
    /// Dimension of the erased-support symplectic complement.
    int undetectable_dim = 0;
    double condition = 1.0;
    bool ill_conditioned = false;
};

/// Every error supported on the erased modes that commutes with all generators
/// must lie in the stabilizer row space.
CorrectabilityReport analyze_correctable(const StabilizerCode &code, const ErasurePattern &pattern);
/// Throws std::runtime_error if a rank decision was ill conditioned.
bool check_correctable(const StabilizerCode &code, const ErasurePattern &pattern);

/// Variance of each generator (X rows first) in the given state.
VectorXd nullifier_variances(const StabilizerCode &code, const GaussianState &state);

/// Whitespace separated rows, X block then P block.
std::string format_matrix(const MatrixXd &m);

}  // namespace cvrep

#endif
