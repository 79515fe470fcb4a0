#include "rnet/forward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rnet/error.hpp"
#include "rnet/numerics.hpp"

namespace rnet {

namespace {

std::vector<std::size_t> to_indices(std::span<const Vertex> labels) {
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (Vertex v : labels) idx.push_back(static_cast<std::size_t>(v - 1));
  return idx;
}

void check_ascending(const std::vector<Vertex>& s, int n_boundary, const char* name) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n_boundary) {
      throw InputError(std::string(name) + " contains " + std::to_string(s[i]) +
                       ", outside boundary range 1.." + std::to_string(n_boundary));
    }
    if (i > 0 && s[i] <= s[i - 1]) {
      throw InputError(std::string(name) + " must be strictly ascending");
    }
  }
}

}  // namespace

DtNMap::DtNMap(Matrix entries) : entries_(std::move(entries)) {
  if (!entries_.square()) throw InputError("DtN map must be square");
}

DtNMap::InvariantReport DtNMap::invariants() const {
  InvariantReport r;
  const double scale = entries_.max_abs();
  if (scale == 0.0) return r;
  const std::size_t n = entries_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += entries_(i, j);
      r.asymmetry = std::max(r.asymmetry, std::abs(entries_(i, j) - entries_(j, i)) / scale);
      if (i != j) r.positive_offdiag = std::max(r.positive_offdiag, entries_(i, j) / scale);
    }
    r.row_sum = std::max(r.row_sum, std::abs(sum) / scale);
  }
  return r;
}

BoundaryPair::BoundaryPair(std::vector<Vertex> p, std::vector<Vertex> q, int n_boundary)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size()) {
    throw InputError("row set has " + std::to_string(p_.size()) + " entries, column set " +
                     std::to_string(q_.size()));
  }
  check_ascending(p_, n_boundary, "row set");
  check_ascending(q_, n_boundary, "column set");
}

DtNMap dtn(const Network& net) {
  const KirchhoffMatrix k = kirchhoff(net);
  if (net.n_interior() == 0) return DtNMap(k.entries());
  const Matrix b = k.b_block();
  Matrix x;
  try {
    x = solve_spd(k.c_block(), b.transpose());
  } catch (const NotPositiveDefinite& e) {
    throw InteriorNotGrounded(std::string("interior block is singular: ") + e.what());
  }
  Matrix lam = k.a_block() - b * x;
  // The exact Schur complement is symmetric with zero row sums. Average the
  // off-diagonal pairs and rebuild the diagonal from them; this also avoids
  // the cancellation in A_ii - (B C^-1 B^T)_ii.
  for (std::size_t i = 0; i < lam.rows(); ++i)
    for (std::size_t j = i + 1; j < lam.cols(); ++j) {
      const double s = 0.5 * (lam(i, j) + lam(j, i));
      lam(i, j) = s;
      lam(j, i) = s;
    }
  for (std::size_t i = 0; i < lam.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < lam.cols(); ++j)
      if (j != i) s += lam(i, j);
    lam(i, i) = -s;
  }
  return DtNMap(std::move(lam));
}

std::vector<double> harmonic_extension(const Network& net, std::span<const double> u_boundary) {
  if (u_boundary.size() != static_cast<std::size_t>(net.n_boundary())) {
    throw InputError("boundary vector has length " + std::to_string(u_boundary.size()) +
                     ", expected " + std::to_string(net.n_boundary()));
  }
  std::vector<double> u(u_boundary.begin(), u_boundary.end());
  if (net.n_interior() == 0) return u;
  const KirchhoffMatrix k = kirchhoff(net);
  // C u_int = -B^T u_bdry
  const std::vector<double> rhs_pos = k.b_block().transpose() * u_boundary;
  Matrix rhs(rhs_pos.size(), 1);
  for (std::size_t i = 0; i < rhs_pos.size(); ++i) rhs(i, 0) = -rhs_pos[i];
  Matrix interior;
  try {
    interior = solve_spd(k.c_block(), rhs);
  } catch (const NotPositiveDefinite& e) {
    throw InteriorNotGrounded(std::string("interior block is singular: ") + e.what());
  }
  for (std::size_t i = 0; i < interior.rows(); ++i) u.push_back(interior(i, 0));
  return u;
}

double dtn_subdet(const DtNMap& lam, const BoundaryPair& pair) {
  for (Vertex v : pair.p())
    if (v > lam.n_boundary()) throw InputError("pair exceeds DtN dimension");
  for (Vertex v : pair.q())
    if (v > lam.n_boundary()) throw InputError("pair exceeds DtN dimension");
  const auto rows = to_indices(pair.p());
  const auto cols = to_indices(pair.q());
  return lu_det(lam.entries().select(rows, cols));
}

double kirchhoff_subdet(const KirchhoffMatrix& k, std::span<const Vertex> rows,
                        std::span<const Vertex> cols) {
  if (rows.size() != cols.size()) throw InputError("determinant of a non-square selection");
  std::vector<Vertex> r(rows.begin(), rows.end()), c(cols.begin(), cols.end());
  std::sort(r.begin(), r.end());
  std::sort(c.begin(), c.end());
  const auto n = static_cast<Vertex>(k.n());
  for (Vertex v : r)
    if (v < 1 || v > n) throw InputError("row label out of range");
  for (Vertex v : c)
    if (v < 1 || v > n) throw InputError("column label out of range");
  return lu_det(k.entries().select(to_indices(r), to_indices(c)));
}

std::vector<Vertex> with_interior(const Network& net, std::span<const Vertex> boundary_set) {
  std::vector<Vertex> out(boundary_set.begin(), boundary_set.end());
  for (Vertex v : net.interior()) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

double relative_discrepancy(double value, double reference) {
  if (value == reference) return 0.0;
  if (reference == 0.0) return 1.0;
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

double schur_identity_check(const Network& net, const BoundaryPair& pair) {
  const KirchhoffMatrix k = kirchhoff(net);
  const auto interior = net.interior();
  const double det_c = kirchhoff_subdet(k, interior, interior);
  const double lhs = dtn_subdet(dtn(net), pair) * det_c;
  const double rhs = kirchhoff_subdet(k, with_interior(net, pair.p()), with_interior(net, pair.q()));
  return relative_discrepancy(lhs, rhs);
}

}  // namespace rnet
