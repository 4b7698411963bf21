// Independent reference computations used by the tests. None of these call the
// library routine they are meant to check.
#ifndef CVREP_TESTS_ORACLES_HPP
#define CVREP_TESTS_ORACLES_HPP

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "cvrep/gaussian.hpp"

namespace oracle {

using cvrep::MatrixXd;
using cvrep::VectorXd;

/// Exact rational with 64-bit parts; enough for the small integer codes tested.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) {
        if (den == 0) {
            throw std::domain_error("zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    bool is_zero() const {
        return num == 0;
    }
    friend Rational operator+(Rational a, Rational b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(Rational a, Rational b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(Rational a, Rational b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend Rational operator/(Rational a, Rational b) {
        return {a.num * b.den, a.den * b.num};
    }
};

using RMatrix = std::vector<std::vector<Rational>>;

inline RMatrix to_rational(const MatrixXd &m) {
    RMatrix out(m.rows(), std::vector<Rational>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double v = m(i, j);
            if (v != std::round(v)) {
                throw std::invalid_argument("rational oracle expects integer input");
            }
            out[i][j] = Rational(static_cast<long long>(v));
        }
    }
    return out;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RMatrix &m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) {
        return pivots;
    }
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[p], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (auto &v : m[r]) {
            v = v * inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && !m[i][c].is_zero()) {
                Rational f = m[i][c];
                for (std::size_t j = 0; j < cols; ++j) {
                    m[i][j] = m[i][j] - f * m[r][j];
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t exact_rank(RMatrix m) {
    return rref(m).size();
}

/// Basis of the right null space, one vector per free column.
inline RMatrix exact_null_space(RMatrix m, std::size_t cols) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    RMatrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> v(cols, Rational(0));
        v[f] = Rational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            v[pivots[k]] = Rational(0) - m[k][f];
        }
        basis.push_back(v);
    }
    return basis;
}

/// Rows are the symplectic products of each generator with the erased-support
/// error coordinates (ex, ep): omega(g, e) = gx.ep - gp.ex.
inline RMatrix erased_constraints(const RMatrix &g, int n_modes, const std::vector<int> &erased) {
    const std::size_t e = erased.size();
    RMatrix constraints;
    for (const auto &row : g) {
        std::vector<Rational> c(2 * e);
        for (std::size_t i = 0; i < e; ++i) {
            c[i] = Rational(0) - row[n_modes + erased[i]];
            c[e + i] = row[erased[i]];
        }
        constraints.push_back(c);
    }
    return constraints;
}

inline std::size_t undetectable_dim_exact(const MatrixXd &generators, int n_modes, const std::vector<int> &erased) {
    RMatrix g = to_rational(generators);
    return 2 * erased.size() - exact_rank(erased_constraints(g, n_modes, erased));
}

/// Erasure correctability by explicit enumeration of a basis of the
/// erased-support errors that commute with every generator, in exact arithmetic.
inline bool correctable_exact(const MatrixXd &generators, int n_modes, const std::vector<int> &erased) {
    RMatrix g = to_rational(generators);
    const std::size_t e = erased.size();
    RMatrix undetectable = exact_null_space(erased_constraints(g, n_modes, erased), 2 * e);
    const std::size_t base = exact_rank(g);
    for (const auto &u : undetectable) {
        RMatrix joint = g;
        std::vector<Rational> full(2 * n_modes, Rational(0));
        for (std::size_t i = 0; i < e; ++i) {
            full[erased[i]] = u[i];
            full[n_modes + erased[i]] = u[e + i];
        }
        joint.push_back(full);
        if (exact_rank(joint) != base) {
            return false;
        }
    }
    return true;
}

/// Tr(rho sigma) = 2 pi * integral of W_rho W_sigma, on a square grid.
inline double wigner_overlap(const cvrep::GaussianState &a, const cvrep::GaussianState &b, double half_width,
                             int points) {
    auto wigner = [](const cvrep::GaussianState &s) {
        Eigen::Matrix2d v = s.cov();
        Eigen::Matrix2d inv = v.inverse();
        double norm = 1 / (2 * std::numbers::pi * std::sqrt(v.determinant()));
        Eigen::Vector2d mu = s.mean();
        return [inv, norm, mu](double x, double p) {
            Eigen::Vector2d d(x - mu[0], p - mu[1]);
            return norm * std::exp(-0.5 * d.dot(inv * d));
        };
    };
    auto wa = wigner(a);
    auto wb = wigner(b);
    const double h = 2 * half_width / (points - 1);
    double sum = 0;
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
            double x = -half_width + i * h;
            double p = -half_width + j * h;
            sum += wa(x, p) * wb(x, p);
        }
    }
    return 2 * std::numbers::pi * sum * h * h;
}

/// Gaussian conditioning by explicit partition and inversion: measured
/// quadrature index q, returns (mean, cov) of the other coordinates.
inline std::pair<VectorXd, MatrixXd> condition_brute(const VectorXd &mean, const MatrixXd &cov, Eigen::Index q,
                                                     double outcome, const std::vector<Eigen::Index> &keep) {
    const auto k = static_cast<Eigen::Index>(keep.size());
    MatrixXd a(k, k);
    MatrixXd b(k, 1);
    MatrixXd c(1, 1);
    VectorXd mu(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        mu[i] = mean[keep[i]];
        b(i, 0) = cov(keep[i], q);
        for (Eigen::Index j = 0; j < k; ++j) {
            a(i, j) = cov(keep[i], keep[j]);
        }
    }
    c(0, 0) = cov(q, q);
    MatrixXd cinv = c.inverse();
    VectorXd m = mu + b * cinv * VectorXd::Constant(1, outcome - mean[q]);
    MatrixXd s = a - b * cinv * b.transpose();
    return {m, s};
}

/// Random Gaussian state: thermal noise, a random gate network and a displacement.
inline cvrep::GaussianState random_state(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_real_distribution<double> thermal(0.5, 1.5);
    VectorXd mean(2 * n);
    MatrixXd cov = MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        double v = thermal(rng);
        cov(i, i) = v;
        cov(n + i, n + i) = v;
    }
    for (int i = 0; i < 2 * n; ++i) {
        mean[i] = 2 * u(rng);
    }
    cvrep::GaussianState s(mean, cov);
    for (int k = 0; k < 3 * n; ++k) {
        int a = static_cast<int>(rng() % n);
        s = cvrep::squeeze(s, a, 0.6 * u(rng));
        s = cvrep::phase_shift(s, a, 3 * u(rng));
        if (n > 1) {
            int b = static_cast<int>((a + 1 + rng() % (n - 1)) % n);
            s = cvrep::beam_splitter(s, a, b, 3 * u(rng));
        }
    }
    return s;
}

inline double max_abs(const MatrixXd &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace oracle

#endif
