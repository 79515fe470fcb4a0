#ifndef RNET_NUMERICS_HPP
#define RNET_NUMERICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rnet/matrix.hpp"

namespace rnet {

// Relative threshold below which an LU pivot column counts as zero.
inline constexpr double kLuZeroPivot = 1e-13;
// Relative pivot threshold for numerical rank in lstsq.
inline constexpr double kLstsqRankTol = 1e-10;

// Determinant by LU with partial pivoting. Returns exactly 0 when every
// candidate pivot is below kLuZeroPivot * max_abs(m). The 0x0 determinant
// is 1.
double lu_det(const Matrix& m);

// Solves m * X = b for symmetric positive definite m by Cholesky.
// Throws NotPositiveDefinite on a non-positive (or negligible) pivot.
Matrix solve_spd(const Matrix& m, const Matrix& b);

struct LstsqResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  std::size_t rank = 0;
};

// Least squares by Householder QR with column pivoting. Throws
// RankDeficient (0-based free columns) when the numerical rank falls
// below cols().
LstsqResult lstsq(const Matrix& m, std::span<const double> b);

// Exact rank over the rationals by fraction-free (Bareiss) elimination in
// arbitrary-precision integers.
std::size_t integer_rank(const IntMatrix& m);

// Columns j for which some exact null vector of m has a nonzero j-th
// component, i.e. the unknowns the system does not determine. 0-based,
// ascending. Empty iff the columns are independent.
std::vector<std::size_t> undetermined_columns(const IntMatrix& m);

}  // namespace rnet

#endif  // RNET_NUMERICS_HPP
