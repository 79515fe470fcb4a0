#ifndef RNET_NETWORK_HPP
#define RNET_NETWORK_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rnet/matrix.hpp"

namespace rnet {

// 1-based vertex label. Boundary vertices are 1..n_boundary, interior
// vertices follow.
using Vertex = int;
// 1-based edge id; the position of the edge in the input.
using EdgeId = int;

struct Edge {
  EdgeId id = 0;
  Vertex u = 0;
  Vertex v = 0;
  double gamma = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Endpoints and conductivity of one edge, before ids are assigned.
struct EdgeSpec {
  Vertex u = 0;
  Vertex v = 0;
  double gamma = 0.0;
};

// Resistor network with positive edge conductivities. Immutable; the
// constructor enforces positivity, no self-loops, no parallel edges, and
// that every interior vertex is connected to the boundary.
class Network {
 public:
  Network(int n_boundary, int n_interior, std::span<const EdgeSpec> edges);

  int n_boundary() const noexcept { return n_boundary_; }
  int n_interior() const noexcept { return n_interior_; }
  int n_vertices() const noexcept { return n_boundary_ + n_interior_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id - 1)); }

  bool is_boundary(Vertex v) const noexcept { return v >= 1 && v <= n_boundary_; }
  bool is_interior(Vertex v) const noexcept {
    return v > n_boundary_ && v <= n_vertices();
  }
  // Interior labels n_boundary+1..n_vertices, ascending.
  std::vector<Vertex> interior() const;

  // Incident (neighbor, edge id) pairs sorted by neighbor label.
  struct Incidence {
    Vertex neighbor;
    EdgeId edge;
  };
  std::span<const Incidence> neighbors(Vertex v) const {
    return adjacency_.at(static_cast<std::size_t>(v - 1));
  }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  // Edge id joining u and v, or 0.
  EdgeId edge_between(Vertex u, Vertex v) const;

  std::vector<double> gammas() const;
  // Same topology with new conductivities, in edge-id order.
  Network with_gammas(std::span<const double> gammas) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.n_boundary_ == b.n_boundary_ && a.n_interior_ == b.n_interior_ &&
           a.edges_ == b.edges_;
  }

 private:
  int n_boundary_ = 0;
  int n_interior_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

// Weighted Laplacian with the boundary/interior block split
//   K = [[A, B], [B^T, C]].
class KirchhoffMatrix {
 public:
  KirchhoffMatrix(Matrix entries, int n_boundary)
      : entries_(std::move(entries)), n_boundary_(n_boundary) {}

  std::size_t n() const noexcept { return entries_.rows(); }
  int n_boundary() const noexcept { return n_boundary_; }
  const Matrix& entries() const noexcept { return entries_; }
  // 1-based access.
  double at(Vertex i, Vertex j) const {
    return entries_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }

  Matrix a_block() const;
  Matrix b_block() const;
  Matrix c_block() const;

 private:
  Matrix entries_;
  int n_boundary_;
};

KirchhoffMatrix kirchhoff(const Network& net);

// The 8-boundary, 4-interior lattice: a 4-cycle 9-10-11-12 with two boundary
// leaves on each interior vertex. gammas[e-1] is the conductivity of edge e.
Network lattice_fixture(std::span<const double> gammas);
Network lattice_fixture(const std::array<double, 12>& gammas);

// Line-based text format:
//   # comment
//   boundary <n>
//   interior <n>
//   edge <u> <v> <gamma>
std::string serialize_network(const Network& net);
Network parse_network(std::string_view text);

}  // namespace rnet

#endif  // RNET_NETWORK_HPP
