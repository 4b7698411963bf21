#include "cvrep/codes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cvrep/tolerances.hpp"

namespace cvrep {

int EdgeBasis::index(int j, int k) const {
    if (j == k || j < 1 || k < 1 || j > N || k > N) {
        throw std::out_of_range("no edge between vertices " + std::to_string(j) + " and " + std::to_string(k));
    }
    if (j > k) {
        std::swap(j, k);
    }
    // Lexicographic position of (j, k) among pairs of 1..N.
    int before = (j - 1) * N - (j - 1) * j / 2;
    return before + (k - j - 1);
}

VectorXd EdgeBasis::edge_vector(int j, int k) const {
    VectorXd v = VectorXd::Zero(size());
    v[index(j, k)] = j < k ? 1.0 : -1.0;
    return v;
}

EdgeBasis edge_basis(int N) {
    if (N < 3) {
        throw std::invalid_argument("edge basis needs N >= 3");
    }
    EdgeBasis basis;
    basis.N = N;
    for (int j = 1; j <= N; ++j) {
        for (int k = j + 1; k <= N; ++k) {
            basis.edges.emplace_back(j, k);
        }
    }
    return basis;
}

VectorXd triangle_vector(const EdgeBasis &basis, int j, int k) {
    if (j < 2 || k > basis.N || j >= k) {
        throw std::out_of_range("triangle vector needs 2 <= j < k <= N");
    }
    return directed_triangle(basis, 1, j, k);
}

VectorXd directed_triangle(const EdgeBasis &basis, int i, int j, int k) {
    return basis.edge_vector(i, j) + basis.edge_vector(j, k) + basis.edge_vector(k, i);
}

VectorXd star_vector(const EdgeBasis &basis, int j) {
    if (j < 1 || j > basis.N) {
        throw std::out_of_range("star vector vertex out of range");
    }
    VectorXd v = VectorXd::Zero(basis.size());
    for (int k = 1; k <= basis.N; ++k) {
        if (k != j) {
            v += basis.edge_vector(j, k);
        }
    }
    return v;
}

MatrixXd StabilizerCode::generator_matrix() const {
    const auto nx = x_rows.rows();
    const auto np = p_rows.rows();
    MatrixXd g = MatrixXd::Zero(nx + np, 2 * n_modes);
    if (nx > 0) {
        g.topLeftCorner(nx, n_modes) = x_rows;
    }
    if (np > 0) {
        g.bottomRightCorner(np, n_modes) = p_rows;
    }
    return g;
}

double StabilizerCode::max_cross_product() const {
    if (x_rows.rows() == 0 || p_rows.rows() == 0) {
        return 0;
    }
    return (x_rows * p_rows.transpose()).cwiseAbs().maxCoeff();
}

StabilizerCode build_general_code(int N) {
    if (N < 4) {
        throw std::invalid_argument("general code needs N >= 4");
    }
    EdgeBasis basis = edge_basis(N);
    StabilizerCode code;
    code.n_modes = basis.size();
    code.x_rows.resize((N - 1) * (N - 2) / 2, basis.size());
    int row = 0;
    for (int j = 2; j <= N; ++j) {
        for (int k = j + 1; k <= N; ++k) {
            code.x_rows.row(row++) = triangle_vector(basis, j, k).transpose();
        }
    }
    code.p_rows.resize(N - 2, basis.size());
    VectorXd a1 = star_vector(basis, 1);
    for (int k = 2; k <= N - 1; ++k) {
        code.p_rows.row(k - 2) = (a1 + star_vector(basis, k)).transpose();
    }
    return code;
}

StabilizerCode build_five_mode_code() {
    StabilizerCode code;
    code.n_modes = 5;
    code.x_rows.resize(2, 5);
    code.x_rows << -1, -1, 1, 1, 0,
        0, 0, -1, 1, -2;
    code.p_rows.resize(2, 5);
    code.p_rows << 1, 1, 1, 1, 0,
        0, 0, -1, 1, 1;
    return code;
}

double symplectic_product(const VectorXd &u, const VectorXd &v) {
    if (u.size() != v.size() || u.size() % 2 != 0) {
        throw std::invalid_argument("symplectic product needs equal even-length vectors");
    }
    const auto n = u.size() / 2;
    return u.head(n).dot(v.tail(n)) - u.tail(n).dot(v.head(n));
}

ErasurePattern five_mode_erasure(int r) {
    switch (r) {
        case 1:
            return {{2, 3, 4}, 1};
        case 2:
            return {{1, 2}, 2};
        case 3:
            return {{1, 3}, 3};
        case 4:
            return {{0, 4}, 4};
        default:
            throw std::out_of_range("five-mode patterns are E1..E4");
    }
}

ErasurePattern erasure_for_vertex(const StabilizerCode &code, const EdgeBasis &basis, int r) {
    if (r < 1 || r > basis.N) {
        throw std::out_of_range("recovery vertex out of range");
    }
    if (code.n_modes == 5 && basis.N == 4) {
        return five_mode_erasure(r);
    }
    if (code.n_modes != basis.size()) {
        throw std::invalid_argument("code does not live on this edge basis");
    }
    ErasurePattern pattern;
    pattern.recovery_vertex = r;
    for (int i = 0; i < basis.size(); ++i) {
        auto [j, k] = basis.edges[i];
        if (j != r && k != r) {
            pattern.erased.push_back(i);
        }
    }
    return pattern;
}

CorrectabilityReport analyze_correctable(const StabilizerCode &code, const ErasurePattern &pattern) {
    const int n = code.n_modes;
    for (int m : pattern.erased) {
        if (m < 0 || m >= n) {
            throw std::out_of_range("erased mode out of range");
        }
    }
    const auto e = static_cast<int>(pattern.erased.size());
    // Columns embed the erased x and p coordinates into the full phase space.
    MatrixXd embed_cols = MatrixXd::Zero(2 * n, 2 * e);
    for (int i = 0; i < e; ++i) {
        embed_cols(pattern.erased[i], i) = 1;
        embed_cols(n + pattern.erased[i], e + i) = 1;
    }
    MatrixXd g = code.generator_matrix();
    MatrixXd commutes = g * omega(n) * embed_cols;
    MatrixXd k = embed_cols * null_space(commutes, tol::rank);

    CorrectabilityReport report;
    report.undetectable_dim = static_cast<int>(k.cols());
    RankInfo base = rank_info(g, tol::rank);
    RankInfo joint = rank_info(stack_rows(g, k.transpose()), tol::rank);
    report.condition = std::max(base.condition, joint.condition);
    report.ill_conditioned = report.condition > tol::max_condition;
    report.correctable = joint.rank == base.rank;
    return report;
}

bool check_correctable(const StabilizerCode &code, const ErasurePattern &pattern) {
    CorrectabilityReport report = analyze_correctable(code, pattern);
    if (report.ill_conditioned) {
        throw std::runtime_error("correctability rank test is ill conditioned");
    }
    return report.correctable;
}

VectorXd nullifier_variances(const StabilizerCode &code, const GaussianState &state) {
    if (state.modes() != code.n_modes) {
        throw std::invalid_argument("state and code mode counts differ");
    }
    MatrixXd g = code.generator_matrix();
    VectorXd out(g.rows());
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        VectorXd row = g.row(i).transpose();
        out[i] = row.dot(state.cov() * row);
    }
    return out;
}

std::string format_matrix(const MatrixXd &m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            char buf[32];
            double v = m(i, j) == 0 ? 0.0 : m(i, j);
            auto res = std::to_chars(buf, buf + sizeof buf, v);
            if (j > 0) {
                out << ' ';
            }
            out << std::string(buf, res.ptr);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cvrep
