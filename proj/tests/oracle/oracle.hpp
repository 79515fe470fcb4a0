#ifndef RNET_TESTS_ORACLE_HPP
#define RNET_TESTS_ORACLE_HPP

// Brute-force reference implementations for the test suites. Nothing here
// calls the determinant, elimination, or path-walking code under test.

#include <cstdint>
#include <vector>

#include "rnet/forward.hpp"
#include "rnet/matrix.hpp"
#include "rnet/network.hpp"
#include "rnet/paths.hpp"

namespace rnet::oracle {

// Sum over all n! permutations in lexicographic order. n <= 8.
double perm_det(const Matrix& m);

// Path systems found by filtering edge subsets: every subset of the usable
// edges whose degree pattern and connectivity form a disjoint path family
// with the right endpoints. Sorted canonically. At most 14 vertices.
std::vector<PathSystem> exhaustive_path_systems(const Network& net, const BoundaryPair& pair);

struct RandomNetSpec {
  int min_boundary = 3;
  int max_boundary = 6;
  int min_interior = 1;
  int max_interior = 4;
  double edge_probability = 0.45;
  double gamma_lo = 0.1;
  double gamma_hi = 10.0;
  std::uint64_t seed = 1;
};

// Deterministic for a given seed; conductivities log-uniform on
// [gamma_lo, gamma_hi]. Resamples topologies that violate Network
// invariants, up to a bounded number of attempts.
Network random_network(const RandomNetSpec& spec);

// Random pair with |P| = |Q| drawn from the boundary of `net`.
BoundaryPair random_pair(const Network& net, std::uint64_t seed);

}  // namespace rnet::oracle

#endif  // RNET_TESTS_ORACLE_HPP
