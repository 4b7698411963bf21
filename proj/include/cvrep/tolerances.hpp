#ifndef CVREP_TOLERANCES_HPP
#define CVREP_TOLERANCES_HPP

namespace cvrep::tol {

// Every numeric threshold the library decides on lives here.
inline constexpr double symmetry = 1e-12;
inline constexpr double uncertainty = 1e-9;
inline constexpr double symplectic = 1e-10;
inline constexpr double degenerate_variance = 1e-14;
inline constexpr double rank = 1e-10;
inline constexpr double max_condition = 1e8;
inline constexpr double orthogonality = 1e-12;
inline constexpr double pivot = 1e-12;
inline constexpr double singular_det = 1e-12;
inline constexpr double lightcone = 1e-9;

}  // namespace cvrep::tol

#endif
