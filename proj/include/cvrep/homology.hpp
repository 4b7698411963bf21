#ifndef CVREP_HOMOLOGY_HPP
#define CVREP_HOMOLOGY_HPP

#include <vector>

#include "cvrep/codes.hpp"
#include "cvrep/linalg.hpp"

namespace cvrep {

/// Sorted (k+1)-subsets of 1..N in lexicographic order: the basis of C_k.
std::vector<std::vector<int>> simplices(int N, int k);

/// Boundary d_k : C_k -> C_{k-1}, with C_{-1} = R. d_0 is the all-ones row and
/// d e_{i1..ik} = sum_m (-1)^{m+1} e_{i1..(omit im)..ik}. Supports k in 0..2.
MatrixXi boundary_matrix(int N, int k);

struct ChainComplex {
    int N = 0;
    std::vector<MatrixXi> boundary;
};

ChainComplex chain_complex(int N);

/// R_k spans Im d_k^T and L_k spans Im d_{k+1}; columns are orthonormal.
struct SubspacePair {
    MatrixXd R;
    MatrixXd L;
};

/// Throws if the dimensions are not C(N-1, k) and C(N-1, k+1).
SubspacePair decompose(int N, int k);

/// (N-1) x N: row 0 all ones, row j has ones in columns 0 and j.
MatrixXi butterfly_matrix(int N);

/// X rows: an independent column basis of d_2 (greedy, in simplex order). P rows:
/// d_1^T q_j for the butterfly rows q_1..q_{N-2}. Note d_1^T e_j = -A_j, so each
/// P row is -w_j; row spaces coincide with the graph code.
StabilizerCode build_homological_code(int N);

/// Same P rows as above but from an arbitrary Q (rows are vectors in C_0).
StabilizerCode build_homological_code(int N, const MatrixXd &q_rows);

/// Certifies eps_X . C_P = 0 => eps_X in C_X and eps_P . C_X = 0 => eps_P in C_P for
/// errors vanishing on edges adjacent to r.
bool verify_correctability_homological(int N, int r);
bool verify_correctability_homological(const StabilizerCode &code, int N, int r);

/// Dimension of {eps_P off vertex-r edges : eps_P . C_X = 0}. Zero for the graph code.
int p_error_freedom(int N, int r);

}  // namespace cvrep

#endif
