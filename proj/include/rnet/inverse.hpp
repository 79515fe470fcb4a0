#ifndef RNET_INVERSE_HPP
#define RNET_INVERSE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rnet/error.hpp"
#include "rnet/forward.hpp"
#include "rnet/matrix.hpp"
#include "rnet/network.hpp"
#include "rnet/paths.hpp"

namespace rnet {

// Where a system row came from: an admissible pair, or the difference of
// two earlier rows.
struct RowProvenance {
  BoundaryPair pair;
  std::optional<std::pair<std::size_t, std::size_t>> difference_of;
};

struct DroppedRow {
  BoundaryPair pair;
  std::string reason;
};

// Integer system over (log gamma_1, ..., log gamma_m, log det K(I,I)) with
// right-hand sides ln|det Lambda(P,Q)|. The log det column is omitted when
// the network has no interior vertices.
struct LogLinearSystem {
  IntMatrix coeffs;
  std::vector<double> rhs;
  std::vector<RowProvenance> provenance;
  std::vector<DroppedRow> dropped;
  std::size_t n_edges = 0;
  bool has_logdet_column = false;

  std::size_t unknowns() const { return n_edges + (has_logdet_column ? 1 : 0); }
  std::size_t row_count() const { return rhs.size(); }
};

struct LinearRow {
  std::vector<std::int64_t> coeffs;
  double rhs = 0.0;
  RowProvenance provenance;
};

struct SystemSolution {
  std::vector<double> log_gammas;
  double log_det_interior = 0.0;
  double residual_norm = 0.0;
  bool inconsistent = false;  // residual above 1e-6 * |rhs|
};

struct RecoveryReport {
  std::vector<double> recovered_gammas;
  double logdet_kii = 0.0;
  double residual_norm = 0.0;
  std::size_t rank = 0;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::vector<EdgeId> unresolved_edges;
  double roundtrip_error = 0.0;
  std::vector<std::string> warnings;
};

class RoundTripFailure : public Error {
 public:
  RoundTripFailure(const std::string& what, RecoveryReport report)
      : Error(ErrorKind::kRoundTrip, what), report_(std::move(report)) {}
  const RecoveryReport& report() const noexcept { return report_; }

 private:
  RecoveryReport report_;
};

inline constexpr double kInconsistentResidual = 1e-6;
inline constexpr double kRoundTripTol = 1e-6;

// Admissible pairs with |P| = 1..max_pair_size, in order of size, then P,
// then Q lexicographically, keeping P <= Q only. With stop_at_full_rank the
// scan ends once the collected rows reach full exact rank.
std::vector<RowDescription> enumerate_admissible_pairs(const Network& net, int max_pair_size,
                                                       bool stop_at_full_rank);

std::vector<std::int64_t> coefficient_row(const Network& net, const RowDescription& row);
IntMatrix coefficient_matrix(const Network& net, std::span<const RowDescription> rows);

// Evaluates each row against lam. Rows whose determinant vanishes or whose
// sign contradicts the predicted sign are dropped and recorded. Throws
// AllRowsDegenerate if rows were given and none survived.
LogLinearSystem build_system(const Network& net, std::span<const RowDescription> rows,
                             const DtNMap& lam);

std::size_t system_rank(const LogLinearSystem& sys);

// Least-squares solve. Throws RankDeficient carrying the edge ids left
// undetermined by the exact null space.
SystemSolution solve_system(const LogLinearSystem& sys);

// Row i minus row j. Throws NotSparseDifference when a coefficient leaves
// {-1, 0, 1}.
LinearRow difference_rows(const LogLinearSystem& sys, std::size_t i, std::size_t j);
void append_row(LogLinearSystem& sys, const LinearRow& row);

// Recovers conductivities on `topology` (its gammas are ignored) from lam.
// Throws RankDeficient or RoundTripFailure.
RecoveryReport recover(const Network& topology, const DtNMap& lam, int max_pair_size,
                       bool stop_at_full_rank);

}  // namespace rnet

#endif  // RNET_INVERSE_HPP
