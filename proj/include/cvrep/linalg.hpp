#ifndef CVREP_LINALG_HPP
#define CVREP_LINALG_HPP

#include <Eigen/Dense>

namespace cvrep {

using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXd;

struct RankInfo {
    int rank = 0;
    /// Ratio of the largest singular value to the smallest one counted in the rank.
    double condition = 1.0;
};

RankInfo rank_info(const MatrixXd &m, double tolerance);
int rank(const MatrixXd &m, double tolerance);

/// Columns form an orthonormal basis of {v : m v = 0}.
MatrixXd null_space(const MatrixXd &m, double tolerance);

/// Columns form an orthonormal basis of the span of the rows of m.
MatrixXd row_space_basis(const MatrixXd &m, double tolerance);

/// Largest residual when projecting each row of `rows` onto the row space of `span`.
double row_space_residual(const MatrixXd &rows, const MatrixXd &span, double tolerance);

MatrixXd stack_rows(const MatrixXd &top, const MatrixXd &bottom);

/// Canonical symplectic form over n modes, ordering [x1..xn, p1..pn].
MatrixXd omega(int n_modes);

}  // namespace cvrep

#endif
