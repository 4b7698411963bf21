#include "cvrep/linalg.hpp"

#include <algorithm>

namespace cvrep {

RankInfo rank_info(const MatrixXd &m, double tolerance) {
    RankInfo info;
    if (m.rows() == 0 || m.cols() == 0) {
        return info;
    }
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const auto &s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > tolerance) {
            info.rank++;
        }
    }
    if (info.rank > 0) {
        info.condition = s[0] / s[info.rank - 1];
    }
    return info;
}

int rank(const MatrixXd &m, double tolerance) {
    return rank_info(m, tolerance).rank;
}

MatrixXd null_space(const MatrixXd &m, double tolerance) {
    const auto n = m.cols();
    if (m.rows() == 0 || n == 0) {
        return MatrixXd::Identity(n, n);
    }
    Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s[r] > tolerance) {
        r++;
    }
    return svd.matrixV().rightCols(n - r);
}

MatrixXd row_space_basis(const MatrixXd &m, double tolerance) {
    const auto n = m.cols();
    if (m.rows() == 0 || n == 0) {
        return MatrixXd(n, 0);
    }
    Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s[r] > tolerance) {
        r++;
    }
    return svd.matrixV().leftCols(r);
}

double row_space_residual(const MatrixXd &rows, const MatrixXd &span, double tolerance) {
    MatrixXd basis = row_space_basis(span, tolerance);
    double worst = 0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        VectorXd v = rows.row(i).transpose();
        VectorXd residual = v - basis * (basis.transpose() * v);
        worst = std::max(worst, residual.norm());
    }
    return worst;
}

MatrixXd stack_rows(const MatrixXd &top, const MatrixXd &bottom) {
    MatrixXd out(top.rows() + bottom.rows(), std::max(top.cols(), bottom.cols()));
    if (top.rows() > 0) {
        out.topRows(top.rows()) = top;
    }
    if (bottom.rows() > 0) {
        out.bottomRows(bottom.rows()) = bottom;
    }
    return out;
}

MatrixXd omega(int n_modes) {
    MatrixXd w = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    w.topRightCorner(n_modes, n_modes).setIdentity();
    w.bottomLeftCorner(n_modes, n_modes) = -MatrixXd::Identity(n_modes, n_modes);
    return w;
}

}  // namespace cvrep
