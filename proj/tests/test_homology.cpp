#include "cvrep/homology.hpp"
#include "cvrep/tolerances.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cvrep;

namespace {

int choose(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    long long c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return static_cast<int>(c);
}

bool same_row_space(const MatrixXd &a, const MatrixXd &b) {
    return rank(a, tol::rank) == rank(b, tol::rank) && row_space_residual(a, b, tol::rank) <= 1e-10 &&
           row_space_residual(b, a, tol::rank) <= 1e-10;
}

}  // namespace

TEST_CASE("simplices are lexicographic subsets") {
    auto edges = simplices(4, 1);
    std::vector<std::vector<int>> expected{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    CHECK(edges == expected);
    CHECK(simplices(5, 2).size() == 10);
    CHECK(simplices(5, 0).size() == 5);
}

TEST_CASE("boundary matrices for a triangle") {
    // d e_12 = e_2 - e_1, d e_123 = e_23 - e_13 + e_12.
    MatrixXi d1 = boundary_matrix(3, 1);
    MatrixXi e1(3, 3);
    e1 << -1, -1, 0,
        1, 0, -1,
        0, 1, 1;
    CHECK(d1 == e1);
    MatrixXi d2 = boundary_matrix(3, 2);
    MatrixXi e2(3, 1);
    e2 << 1, -1, 1;
    CHECK(d2 == e2);
    CHECK(boundary_matrix(3, 0) == MatrixXi::Ones(1, 3));
    CHECK_THROWS_AS(boundary_matrix(3, 3), std::out_of_range);
    CHECK_THROWS_AS(boundary_matrix(2, 1), std::invalid_argument);
}

TEST_CASE("boundary of a boundary vanishes exactly") {
    for (int N = 3; N <= 8; ++N) {
        ChainComplex c = chain_complex(N);
        REQUIRE(c.boundary.size() == 3);
        CHECK(c.boundary[0].cols() == N);
        CHECK(c.boundary[1].rows() == N);
        CHECK(c.boundary[1].cols() == choose(N, 2));
        CHECK(c.boundary[2].cols() == choose(N, 3));
        CHECK((c.boundary[0] * c.boundary[1]).isZero());
        CHECK((c.boundary[1] * c.boundary[2]).isZero());
    }
}

TEST_CASE("decomposition of chain spaces") {
    for (int N = 4; N <= 7; ++N) {
        for (int k : {0, 1}) {
            SubspacePair s = decompose(N, k);
            CHECK(s.R.cols() == choose(N - 1, k));
            CHECK(s.L.cols() == choose(N - 1, k + 1));
            CHECK(s.R.rows() == choose(N, k + 1));
            CHECK(oracle::max_abs(s.R.transpose() * s.L) <= 1e-12);
            CHECK(oracle::max_abs(s.R.transpose() * s.R - MatrixXd::Identity(s.R.cols(), s.R.cols())) <= 1e-12);
            MatrixXd both(s.R.rows(), s.R.cols() + s.L.cols());
            both << s.R, s.L;
            CHECK(rank(both, tol::rank) == choose(N, k + 1));
        }
    }
    CHECK_THROWS_AS(decompose(5, 2), std::out_of_range);
}

TEST_CASE("butterfly matrix has every column-deleted minor invertible") {
    for (int N = 4; N <= 9; ++N) {
        MatrixXi b = butterfly_matrix(N);
        REQUIRE(b.rows() == N - 1);
        REQUIRE(b.cols() == N);
        CHECK(b.row(0) == Eigen::RowVectorXi::Ones(N));
        for (int drop = 0; drop < N; ++drop) {
            MatrixXd minor(N - 1, N - 1);
            int c = 0;
            for (int j = 0; j < N; ++j) {
                if (j != drop) {
                    minor.col(c++) = b.col(j).cast<double>();
                }
            }
            CHECK(oracle::exact_rank(oracle::to_rational(minor)) == static_cast<std::size_t>(N - 1));
            CHECK(std::abs(minor.determinant()) >= 0.5);
        }
    }
}

TEST_CASE("homological code equals the graph code as row spaces") {
    for (int N = 4; N <= 7; ++N) {
        StabilizerCode g = build_general_code(N);
        StabilizerCode h = build_homological_code(N);
        CHECK(h.n_modes == g.n_modes);
        CHECK(h.x_rows.rows() == g.x_rows.rows());
        CHECK(h.p_rows.rows() == g.p_rows.rows());
        CHECK(same_row_space(g.x_rows, h.x_rows));
        CHECK(same_row_space(g.p_rows, h.p_rows));
        // The sign convention makes each P row the negated graph row.
        CHECK(oracle::max_abs(h.p_rows + g.p_rows) == 0);
    }
}

TEST_CASE("homological correctability for every vertex") {
    for (int N = 4; N <= 7; ++N) {
        for (int r = 1; r <= N; ++r) {
            CHECK(verify_correctability_homological(N, r));
            CHECK(p_error_freedom(N, r) == 0);
        }
    }
    CHECK_THROWS_AS(verify_correctability_homological(4, 5), std::out_of_range);
}

TEST_CASE("a smaller Q subspace loses correctability") {
    for (int N = 4; N <= 6; ++N) {
        MatrixXd q = butterfly_matrix(N).cast<double>().bottomRows(N - 3);
        StabilizerCode shrunk = build_homological_code(N, q);
        CHECK(shrunk.p_rows.rows() == N - 3);
        bool all = true;
        for (int r = 1; r <= N; ++r) {
            all = all && verify_correctability_homological(shrunk, N, r);
        }
        CHECK_FALSE(all);
        // The full butterfly rows reproduce the default construction.
        StabilizerCode full = build_homological_code(N, butterfly_matrix(N).cast<double>().bottomRows(N - 2));
        CHECK(oracle::max_abs(full.p_rows - build_homological_code(N).p_rows) == 0);
    }
}
