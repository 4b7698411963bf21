#include "cvrep/homology.hpp"

#include <algorithm>
#include <stdexcept>

#include "cvrep/tolerances.hpp"

namespace cvrep {

namespace {

long long binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    long long out = 1;
    for (int i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

void combos(int N, int size, int start, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v <= N; ++v) {
        cur.push_back(v);
        combos(N, size, v + 1, cur, out);
        cur.pop_back();
    }
}

/// Errors vanishing on vertex-r edges, as columns over the edge basis.
MatrixXd off_vertex_support(const EdgeBasis &basis, int r) {
    std::vector<int> cols;
    for (int i = 0; i < basis.size(); ++i) {
        if (basis.edges[i].first != r && basis.edges[i].second != r) {
            cols.push_back(i);
        }
    }
    MatrixXd m = MatrixXd::Zero(basis.size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        m(cols[c], static_cast<Eigen::Index>(c)) = 1;
    }
    return m;
}

/// Every vector in the span of `support` orthogonal to `against` lies in `inside`.
bool implication_holds(const MatrixXd &support, const MatrixXd &against, const MatrixXd &inside) {
    MatrixXd candidates = support * null_space(against * support, tol::rank);
    if (candidates.cols() == 0) {
        return true;
    }
    return rank(stack_rows(inside, candidates.transpose()), tol::rank) == rank(inside, tol::rank);
}

}  // namespace

std::vector<std::vector<int>> simplices(int N, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    combos(N, k + 1, 1, cur, out);
    return out;
}

MatrixXi boundary_matrix(int N, int k) {
    if (N < 3) {
        throw std::invalid_argument("boundary matrices need N >= 3");
    }
    if (k < 0 || k > 2) {
        throw std::out_of_range("boundary matrices are provided for k = 0, 1, 2");
    }
    auto cols = simplices(N, k);
    if (k == 0) {
        return MatrixXi::Ones(1, N);
    }
    auto rows = simplices(N, k - 1);
    MatrixXi d = MatrixXi::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t m = 0; m < cols[c].size(); ++m) {
            std::vector<int> face = cols[c];
            face.erase(face.begin() + static_cast<long>(m));
            auto it = std::lower_bound(rows.begin(), rows.end(), face);
            int sign = m % 2 == 0 ? 1 : -1;
            d(it - rows.begin(), static_cast<Eigen::Index>(c)) += sign;
        }
    }
    return d;
}

ChainComplex chain_complex(int N) {
    ChainComplex cx;
    cx.N = N;
    for (int k = 0; k <= 2; ++k) {
        cx.boundary.push_back(boundary_matrix(N, k));
    }
    return cx;
}

SubspacePair decompose(int N, int k) {
    if (k < 0 || k > 1) {
        throw std::out_of_range("decompose supports k = 0, 1");
    }
    MatrixXd dk = boundary_matrix(N, k).cast<double>();
    MatrixXd dk1 = boundary_matrix(N, k + 1).cast<double>();
    SubspacePair pair;
    pair.R = row_space_basis(dk, tol::rank);
    pair.L = row_space_basis(dk1.transpose(), tol::rank);
    if (pair.R.cols() != binomial(N - 1, k) || pair.L.cols() != binomial(N - 1, k + 1)) {
        throw std::runtime_error("boundary ranks differ from the predicted subspace dimensions");
    }
    return pair;
}

MatrixXi butterfly_matrix(int N) {
    if (N < 4) {
        throw std::invalid_argument("butterfly matrix needs N >= 4");
    }
    MatrixXi m = MatrixXi::Zero(N - 1, N);
    m.row(0).setOnes();
    for (int j = 1; j <= N - 2; ++j) {
        m(j, 0) = 1;
        m(j, j) = 1;
    }
    return m;
}

StabilizerCode build_homological_code(int N, const MatrixXd &q_rows) {
    if (N < 4) {
        throw std::invalid_argument("homological code needs N >= 4");
    }
    MatrixXd d1 = boundary_matrix(N, 1).cast<double>();
    MatrixXd d2 = boundary_matrix(N, 2).cast<double>();
    // Greedy independent columns of d_2; in simplex order these are the
    // triangles through vertex 1.
    std::vector<Eigen::Index> picked;
    MatrixXd chosen(d2.rows(), 0);
    for (Eigen::Index c = 0; c < d2.cols(); ++c) {
        MatrixXd trial(d2.rows(), chosen.cols() + 1);
        trial << chosen, d2.col(c);
        if (rank(trial, tol::rank) == trial.cols()) {
            chosen = trial;
        }
    }
    StabilizerCode code;
    code.n_modes = static_cast<int>(d1.cols());
    code.x_rows = chosen.transpose();
    code.p_rows = q_rows * d1;
    return code;
}

StabilizerCode build_homological_code(int N) {
    MatrixXd q = butterfly_matrix(N).cast<double>().bottomRows(N - 2);
    return build_homological_code(N, q);
}

bool verify_correctability_homological(const StabilizerCode &code, int N, int r) {
    EdgeBasis basis = edge_basis(N);
    if (r < 1 || r > N) {
        throw std::out_of_range("recovery vertex out of range");
    }
    MatrixXd support = off_vertex_support(basis, r);
    return implication_holds(support, code.p_rows, code.x_rows) &&
           implication_holds(support, code.x_rows, code.p_rows);
}

bool verify_correctability_homological(int N, int r) {
    return verify_correctability_homological(build_homological_code(N), N, r);
}

int p_error_freedom(int N, int r) {
    StabilizerCode code = build_homological_code(N);
    MatrixXd support = off_vertex_support(edge_basis(N), r);
    return static_cast<int>(null_space(code.x_rows * support, tol::rank).cols());
}

}  // namespace cvrep
