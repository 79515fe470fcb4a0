#include "rnet/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rnet/numerics.hpp"

namespace rnet {

namespace {

// Calls fn for every k-subset of 1..n in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<Vertex> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 1);
  if (k > n) return;
  while (true) {
    fn(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<std::int64_t> coefficient_row(const Network& net, const RowDescription& row) {
  const std::size_t m = net.n_edges();
  std::vector<std::int64_t> c(m + (net.n_interior() > 0 ? 1 : 0), 0);
  for (EdgeId e : row.edges) c[static_cast<std::size_t>(e - 1)] += 1;
  if (net.n_interior() > 0) c[m] = -1;
  return c;
}

IntMatrix coefficient_matrix(const Network& net, std::span<const RowDescription> rows) {
  IntMatrix out(0, net.n_edges() + (net.n_interior() > 0 ? 1 : 0));
  for (const RowDescription& r : rows) out.append_row(coefficient_row(net, r));
  return out;
}

std::vector<RowDescription> enumerate_admissible_pairs(const Network& net, int max_pair_size,
                                                       bool stop_at_full_rank) {
  const int nb = net.n_boundary();
  if (max_pair_size < 0 || max_pair_size > nb) {
    throw InputError("max pair size " + std::to_string(max_pair_size) + " outside 0.." +
                     std::to_string(nb));
  }
  const std::size_t unknowns = net.n_edges() + (net.n_interior() > 0 ? 1 : 0);
  std::vector<RowDescription> rows;
  // Rows that raised the rank so far; the full-rank test only needs these.
  IntMatrix basis(0, unknowns);
  std::size_t rank = 0;
  bool done = stop_at_full_rank && unknowns == 0;

  for (int k = 1; k <= max_pair_size && !done; ++k) {
    for_each_subset(nb, k, [&](const std::vector<Vertex>& p) {
      if (done) return;
      for_each_subset(nb, k, [&](const std::vector<Vertex>& q) {
        if (done || q < p) return;
        auto row = is_log_linear_admissible(net, BoundaryPair(p, q, nb));
        if (!row) return;
        if (stop_at_full_rank) {
          IntMatrix trial = basis;
          trial.append_row(coefficient_row(net, *row));
          if (integer_rank(trial) > rank) {
            basis = std::move(trial);
            ++rank;
          }
          done = rank == unknowns;
        }
        rows.push_back(std::move(*row));
      });
    });
  }
  return rows;
}

LogLinearSystem build_system(const Network& net, std::span<const RowDescription> rows,
                             const DtNMap& lam) {
  if (lam.n_boundary() != net.n_boundary()) {
    throw InputError("DtN map is " + std::to_string(lam.n_boundary()) + "x" +
                     std::to_string(lam.n_boundary()) + ", network has " +
                     std::to_string(net.n_boundary()) + " boundary vertices");
  }
  LogLinearSystem sys;
  sys.n_edges = net.n_edges();
  sys.has_logdet_column = net.n_interior() > 0;
  sys.coeffs = IntMatrix(0, sys.unknowns());
  for (const RowDescription& row : rows) {
    const double d = dtn_subdet(lam, row.pair);
    const double logd = std::log(std::abs(d));
    if (d == 0.0 || !std::isfinite(logd)) {
      sys.dropped.push_back({row.pair, "determinant vanishes"});
      continue;
    }
    if ((d > 0 ? 1 : -1) != row.sign) {
      sys.dropped.push_back({row.pair, "determinant sign contradicts the path sign"});
      continue;
    }
    sys.coeffs.append_row(coefficient_row(net, row));
    sys.rhs.push_back(logd);
    sys.provenance.push_back({row.pair, std::nullopt});
  }
  if (!rows.empty() && sys.rhs.empty()) {
    throw AllRowsDegenerate("all " + std::to_string(rows.size()) +
                            " admissible rows were dropped");
  }
  return sys;
}

std::size_t system_rank(const LogLinearSystem& sys) { return integer_rank(sys.coeffs); }

SystemSolution solve_system(const LogLinearSystem& sys) {
  const std::size_t unknowns = sys.unknowns();
  const std::size_t rank = system_rank(sys);
  if (rank < unknowns) {
    std::vector<int> unresolved;
    if (sys.row_count() == 0) {
      for (std::size_t e = 0; e < sys.n_edges; ++e) unresolved.push_back(static_cast<int>(e + 1));
    } else {
      for (std::size_t c : undetermined_columns(sys.coeffs))
        if (c < sys.n_edges) unresolved.push_back(static_cast<int>(c + 1));
    }
    throw RankDeficient("exact rank " + std::to_string(rank) + " < " + std::to_string(unknowns) +
                            " unknowns",
                        rank, std::move(unresolved));
  }
  SystemSolution sol;
  if (unknowns == 0) return sol;

  Matrix m(sys.row_count(), unknowns);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) m(i, j) = static_cast<double>(sys.coeffs(i, j));
  const LstsqResult ls = lstsq(m, sys.rhs);
  sol.log_gammas.assign(ls.x.begin(), ls.x.begin() + static_cast<std::ptrdiff_t>(sys.n_edges));
  if (sys.has_logdet_column) sol.log_det_interior = ls.x.back();
  sol.residual_norm = ls.residual_norm;
  sol.inconsistent = ls.residual_norm > kInconsistentResidual * norm2(sys.rhs);
  return sol;
}

LinearRow difference_rows(const LogLinearSystem& sys, std::size_t i, std::size_t j) {
  if (i >= sys.row_count() || j >= sys.row_count()) throw InputError("row index out of range");
  LinearRow out;
  out.coeffs.resize(sys.unknowns());
  for (std::size_t c = 0; c < out.coeffs.size(); ++c) {
    out.coeffs[c] = sys.coeffs(i, c) - sys.coeffs(j, c);
    if (out.coeffs[c] < -1 || out.coeffs[c] > 1) {
      throw NotSparseDifference("rows " + std::to_string(i) + " and " + std::to_string(j) +
                                " differ by " + std::to_string(out.coeffs[c]) + " in column " +
                                std::to_string(c + 1));
    }
  }
  out.rhs = sys.rhs[i] - sys.rhs[j];
  out.provenance = {sys.provenance[i].pair, std::make_pair(i, j)};
  return out;
}

void append_row(LogLinearSystem& sys, const LinearRow& row) {
  sys.coeffs.append_row(row.coeffs);
  sys.rhs.push_back(row.rhs);
  sys.provenance.push_back(row.provenance);
}

RecoveryReport recover(const Network& topology, const DtNMap& lam, int max_pair_size,
                       bool stop_at_full_rank) {
  if (lam.n_boundary() != topology.n_boundary()) {
    throw InputError("DtN map is " + std::to_string(lam.n_boundary()) + "x" +
                     std::to_string(lam.n_boundary()) + ", topology has " +
                     std::to_string(topology.n_boundary()) + " boundary vertices");
  }
  const std::vector<double> ones(topology.n_edges(), 1.0);
  const Network unit = topology.with_gammas(ones);

  const auto rows = enumerate_admissible_pairs(unit, max_pair_size, stop_at_full_rank);
  const LogLinearSystem sys = build_system(unit, rows, lam);

  RecoveryReport report;
  report.unknowns = sys.unknowns();
  report.rows = sys.row_count();
  for (const DroppedRow& d : sys.dropped) {
    std::string pair = "(";
    for (Vertex v : d.pair.p()) pair += std::to_string(v) + ",";
    pair.back() = ';';
    for (Vertex v : d.pair.q()) pair += std::to_string(v) + ",";
    pair.back() = ')';
    report.warnings.push_back("dropped row " + pair + ": " + d.reason);
  }

  const SystemSolution sol = solve_system(sys);
  report.rank = report.unknowns;
  report.residual_norm = sol.residual_norm;
  report.logdet_kii = sol.log_det_interior;
  if (sol.inconsistent) {
    report.warnings.push_back("inconsistent data: residual " + format_real(sol.residual_norm));
  }
  for (double lg : sol.log_gammas) report.recovered_gammas.push_back(std::exp(lg));

  const double scale = lam.entries().max_abs();
  try {
    const DtNMap again = dtn(topology.with_gammas(report.recovered_gammas));
    report.roundtrip_error = (again.entries() - lam.entries()).max_abs();
  } catch (const Error& e) {
    report.roundtrip_error = std::numeric_limits<double>::infinity();
    report.warnings.push_back(std::string("forward map of recovered conductivities failed: ") +
                              e.what());
  }
  if (!(report.roundtrip_error <= kRoundTripTol * scale)) {
    throw RoundTripFailure("round-trip error " + format_real(report.roundtrip_error) +
                               " exceeds " + format_real(kRoundTripTol) + " * max|Lambda|",
                           std::move(report));
  }
  return report;
}

}  // namespace rnet
