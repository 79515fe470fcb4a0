#include "rnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "rnet/error.hpp"

namespace rnet {

namespace mp = boost::multiprecision;

double lu_det(const Matrix& m) {
  if (!m.square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  Matrix a = m;
  const double tol = kLuZeroPivot * m.max_abs();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= tol) return 0.0;
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    const double pivot = a(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

Matrix solve_spd(const Matrix& m, const Matrix& b) {
  if (!m.square() || m.rows() != b.rows())
    throw InputError("solve_spd: shape mismatch");
  const std::size_t n = m.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
  // Exactly singular Laplacian blocks leave a roundoff-sized positive pivot.
  const double tol = 64.0 * static_cast<double>(n) *
                     std::numeric_limits<double>::epsilon() * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > tol)) {
      throw NotPositiveDefinite("non-positive pivot " + format_real(d) +
                                " at row " + std::to_string(j + 1));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }

  Matrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

LstsqResult lstsq(const Matrix& m, std::span<const double> b) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows < cols) throw InputError("lstsq needs rows >= cols");
  if (b.size() != rows) throw InputError("lstsq: rhs length mismatch");

  Matrix a = m;
  std::vector<double> qtb(b.begin(), b.end());
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> diag(cols, 0.0);

  for (std::size_t k = 0; k < cols; ++k) {
    // Pivot on the largest remaining column norm; recomputed rather than
    // downdated since the systems here are small.
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += a(i, j) * a(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, best));
      std::swap(perm[k], perm[best]);
    }
    const double norm = std::sqrt(best_norm);
    if (norm == 0.0) {
      diag[k] = 0.0;
      continue;
    }
    const double alpha = a(k, k) > 0 ? -norm : norm;
    std::vector<double> v(rows - k);
    for (std::size_t i = k; i < rows; ++i) v[i - k] = a(i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double vi : v) vnorm2 += vi * vi;
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < rows; ++i) s += v[i - k] * a(i, j);
        s = 2.0 * s / vnorm2;
        for (std::size_t i = k; i < rows; ++i) a(i, j) -= s * v[i - k];
      }
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += v[i - k] * qtb[i];
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < rows; ++i) qtb[i] -= s * v[i - k];
    }
    diag[k] = a(k, k);
  }

  std::size_t rank = 0;
  const double lead = cols ? std::abs(diag[0]) : 0.0;
  while (rank < cols && std::abs(diag[rank]) > kLstsqRankTol * lead && lead > 0.0) ++rank;
  if (rank < cols) {
    std::vector<int> free_cols;
    for (std::size_t k = rank; k < cols; ++k) free_cols.push_back(static_cast<int>(perm[k]));
    std::sort(free_cols.begin(), free_cols.end());
    throw RankDeficient("numerical rank " + std::to_string(rank) + " < " +
                            std::to_string(cols) + " columns",
                        rank, std::move(free_cols));
  }

  LstsqResult out;
  out.rank = rank;
  std::vector<double> xp(cols, 0.0);
  for (std::size_t i = cols; i-- > 0;) {
    double s = qtb[i];
    for (std::size_t j = i + 1; j < cols; ++j) s -= a(i, j) * xp[j];
    xp[i] = s / a(i, i);
  }
  out.x.assign(cols, 0.0);
  for (std::size_t k = 0; k < cols; ++k) out.x[perm[k]] = xp[k];
  double r2 = 0.0;
  for (std::size_t i = cols; i < rows; ++i) r2 += qtb[i] * qtb[i];
  out.residual_norm = std::sqrt(r2);
  return out;
}

std::size_t integer_rank(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mp::cpp_int> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> mp::cpp_int& { return a[i * cols + j]; };

  std::size_t rank = 0;
  mp::cpp_int prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(at(p, j), at(rank, j));
    const mp::cpp_int pivot = at(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Exact: every intermediate entry is a minor of the input.
        at(i, j) = (pivot * at(i, j) - at(i, c) * at(rank, j)) / prev;
      }
      at(i, c) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> undetermined_columns(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mp::cpp_rational> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> mp::cpp_rational& { return a[i * cols + j]; };

  // Reduced row echelon form over Q.
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
    const mp::cpp_rational inv = 1 / at(r, c);
    for (std::size_t j = c; j < cols; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const mp::cpp_rational f = at(i, c);
      for (std::size_t j = c; j < cols; ++j) at(i, j) -= f * at(r, j);
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }

  std::vector<bool> undetermined(cols, false);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    undetermined[f] = true;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (at(i, f) != 0) undetermined[pivot_col[i]] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cols; ++j)
    if (undetermined[j]) out.push_back(j);
  return out;
}

}  // namespace rnet
