#ifndef RNET_PATHS_HPP
#define RNET_PATHS_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rnet/forward.hpp"
#include "rnet/network.hpp"

namespace rnet {

inline constexpr std::size_t kDefaultSystemCap = 1'000'000;

// A family of pairwise vertex-disjoint simple paths joining P\Q to Q\P
// through I u (P n Q). paths[k] starts at the k-th smallest element of P\Q.
struct PathSystem {
  std::vector<std::vector<Vertex>> paths;
  // (start, end) of each path, in path order.
  std::vector<std::pair<Vertex, Vertex>> endpoint_map;
  // Vertices of I u (P n Q) on no path, ascending.
  std::vector<Vertex> residual;

  friend bool operator==(const PathSystem&, const PathSystem&) = default;
  friend auto operator<=>(const PathSystem&, const PathSystem&) = default;
};

struct PathTerm {
  PathSystem system;
  int sign = 1;
  std::vector<EdgeId> monomial;  // edges traversed, ascending
  double edge_product = 1.0;
  double residual_det = 1.0;     // det K(residual, residual)
  double value() const { return sign * edge_product * residual_det; }
};

struct Expansion {
  std::vector<PathTerm> terms;
  double total = 0.0;
  double reference = 0.0;    // det K(P u I, Q u I) by LU
  double discrepancy = 0.0;  // |total - reference| / max(|reference|, sum |term|)
};

// Relative tolerance for the expansion self-check.
inline constexpr double kExpansionTol = 1e-9;

// All vertex-disjoint path systems for the pair, by depth-first search in
// ascending neighbor order. Returns one empty system when P = Q. Throws
// EnumerationLimit past `cap` systems.
std::vector<PathSystem> enumerate_path_systems(const Network& net, const BoundaryPair& pair,
                                               std::size_t cap = kDefaultSystemCap);

// Sign of the expansion term: sign of the row-to-column bijection (path
// steps, identity on the residual) with both index sets ascending, times
// (-1)^(number of path edges) for the -gamma off-diagonal entries.
int term_sign(const Network& net, const PathSystem& system, const BoundaryPair& pair);

// Path expansion of det K(P u I, Q u I) with its LU reference, unchecked.
Expansion expand_terms(const Network& net, const BoundaryPair& pair,
                       std::size_t cap = kDefaultSystemCap);

// expand_terms plus the self-check. Throws ExpansionMismatch when the
// sum disagrees with the LU determinant beyond kExpansionTol.
Expansion expand_det(const Network& net, const BoundaryPair& pair,
                     std::size_t cap = kDefaultSystemCap);

// One equation of the log-linear system.
struct RowDescription {
  BoundaryPair pair;
  std::vector<EdgeId> edges;  // path edges plus pendant edges of the residual, ascending
  int sign = 1;               // predicted sign of det Lambda(P,Q)

  friend bool operator==(const RowDescription&, const RowDescription&) = default;
};

// A pair yields an equation when its path system is unique, covers every
// interior vertex, and leaves only pendant boundary vertices (degree 1,
// neighbor not itself left over) in the residual. Depends on topology only.
std::optional<RowDescription> is_log_linear_admissible(const Network& net,
                                                       const BoundaryPair& pair);

}  // namespace rnet

#endif  // RNET_PATHS_HPP
