#include "rnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "rnet/error.hpp"

namespace rnet {

namespace {

using Locator = std::function<std::string(std::size_t)>;

// Shared by the constructor and the parser so that parse diagnostics can
// name input lines while programmatic construction names edge positions.
void check_network(int n_boundary, int n_interior, std::span<const EdgeSpec> edges,
                   const Locator& where_edge, const std::string& where_interior) {
  if (n_boundary < 1) throw InputError(where_interior + ": need at least one boundary vertex");
  if (n_interior < 0) throw InputError(where_interior + ": negative interior count");
  const int n = n_boundary + n_interior;

  std::map<std::pair<Vertex, Vertex>, std::size_t> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const EdgeSpec& e = edges[k];
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
      throw InputError(where_edge(k) + ": vertex out of range 1.." + std::to_string(n));
    }
    if (e.u == e.v) {
      throw InputError(where_edge(k) + ": self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.gamma > 0.0) || !std::isfinite(e.gamma)) {
      throw InputError(where_edge(k) + ": conductivity must be positive and finite, got " +
                       format_real(e.gamma));
    }
    const auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = seen.emplace(key, k);
    if (!inserted) {
      throw InputError(where_edge(k) + ": parallel edge {" + std::to_string(key.first) + "," +
                       std::to_string(key.second) + "} duplicates " + where_edge(it->second));
    }
  }

  // Every interior vertex must reach the boundary.
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  for (int v = 0; v <= n; ++v) parent[static_cast<std::size_t>(v)] = v;
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const EdgeSpec& e : edges) parent[static_cast<std::size_t>(find(e.u))] = find(e.v);
  std::vector<bool> grounded(static_cast<std::size_t>(n) + 1, false);
  for (int b = 1; b <= n_boundary; ++b) grounded[static_cast<std::size_t>(find(b))] = true;
  for (int v = n_boundary + 1; v <= n; ++v) {
    if (grounded[static_cast<std::size_t>(find(v))]) continue;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].u == v || edges[k].v == v) {
        throw InputError(where_edge(k) + ": interior-only component containing vertex " +
                         std::to_string(v) + " has no boundary vertex");
      }
    }
    throw InputError(where_interior + ": interior vertex " + std::to_string(v) +
                     " is isolated");
  }
}

}  // namespace

Network::Network(int n_boundary, int n_interior, std::span<const EdgeSpec> edges)
    : n_boundary_(n_boundary), n_interior_(n_interior) {
  check_network(
      n_boundary, n_interior, edges,
      [](std::size_t k) { return "edge " + std::to_string(k + 1); }, "network");
  adjacency_.resize(static_cast<std::size_t>(n_vertices()));
  edges_.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const EdgeId id = static_cast<EdgeId>(k + 1);
    edges_.push_back({id, edges[k].u, edges[k].v, edges[k].gamma});
    adjacency_[static_cast<std::size_t>(edges[k].u - 1)].push_back({edges[k].v, id});
    adjacency_[static_cast<std::size_t>(edges[k].v - 1)].push_back({edges[k].u, id});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
}

std::vector<Vertex> Network::interior() const {
  std::vector<Vertex> out;
  for (Vertex v = n_boundary_ + 1; v <= n_vertices(); ++v) out.push_back(v);
  return out;
}

EdgeId Network::edge_between(Vertex u, Vertex v) const {
  if (u < 1 || u > n_vertices()) return 0;
  for (const Incidence& inc : neighbors(u))
    if (inc.neighbor == v) return inc.edge;
  return 0;
}

std::vector<double> Network::gammas() const {
  std::vector<double> g;
  g.reserve(edges_.size());
  for (const Edge& e : edges_) g.push_back(e.gamma);
  return g;
}

Network Network::with_gammas(std::span<const double> gammas) const {
  if (gammas.size() != edges_.size()) {
    throw InputError("expected " + std::to_string(edges_.size()) + " conductivities, got " +
                     std::to_string(gammas.size()));
  }
  std::vector<EdgeSpec> specs;
  specs.reserve(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k)
    specs.push_back({edges_[k].u, edges_[k].v, gammas[k]});
  return Network(n_boundary_, n_interior_, specs);
}

Matrix KirchhoffMatrix::a_block() const {
  Matrix a(static_cast<std::size_t>(n_boundary_), static_cast<std::size_t>(n_boundary_));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entries_(i, j);
  return a;
}

Matrix KirchhoffMatrix::b_block() const {
  const auto nb = static_cast<std::size_t>(n_boundary_);
  Matrix b(nb, n() - nb);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = entries_(i, nb + j);
  return b;
}

Matrix KirchhoffMatrix::c_block() const {
  const auto nb = static_cast<std::size_t>(n_boundary_);
  Matrix c(n() - nb, n() - nb);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = entries_(nb + i, nb + j);
  return c;
}

KirchhoffMatrix kirchhoff(const Network& net) {
  const auto n = static_cast<std::size_t>(net.n_vertices());
  Matrix k(n, n);
  for (const Edge& e : net.edges()) {
    const auto u = static_cast<std::size_t>(e.u - 1);
    const auto v = static_cast<std::size_t>(e.v - 1);
    k(u, v) = -e.gamma;
    k(v, u) = -e.gamma;
  }
  // Diagonal as the negated off-diagonal row sum, so rows sum to exactly 0
  // in the order they are accumulated.
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += k(i, j);
    k(i, i) = -s;
  }
  return KirchhoffMatrix(std::move(k), net.n_boundary());
}

Network lattice_fixture(std::span<const double> gammas) {
  if (gammas.size() != 12) throw InputError("lattice fixture takes 12 conductivities");
  static constexpr std::array<std::pair<Vertex, Vertex>, 12> kEdges = {{
      {1, 9}, {9, 12}, {6, 12}, {2, 10}, {10, 11}, {5, 11},
      {8, 9}, {9, 10}, {3, 10}, {7, 12}, {11, 12}, {4, 11},
  }};
  std::vector<EdgeSpec> specs;
  for (std::size_t k = 0; k < kEdges.size(); ++k)
    specs.push_back({kEdges[k].first, kEdges[k].second, gammas[k]});
  return Network(8, 4, specs);
}

Network lattice_fixture(const std::array<double, 12>& gammas) {
  return lattice_fixture(std::span<const double>(gammas));
}

std::string serialize_network(const Network& net) {
  std::string out = "boundary " + std::to_string(net.n_boundary()) + "\n";
  out += "interior " + std::to_string(net.n_interior()) + "\n";
  for (const Edge& e : net.edges()) {
    out += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " " +
           format_real(e.gamma) + "\n";
  }
  return out;
}

Network parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int n_boundary = -1, n_interior = -1;
  std::size_t interior_line = 0;
  std::vector<EdgeSpec> edges;
  std::vector<std::size_t> edge_lines;

  auto fail = [&](const std::string& msg) -> void {
    throw InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  auto read_count = [&](std::istringstream& ls, const char* key) {
    long long v = -1;
    std::string extra;
    if (!(ls >> v) || (ls >> extra) || v < 0 || v > 1'000'000) {
      fail(std::string("malformed '") + key + "' line, expected '" + key + " <count>'");
    }
    return static_cast<int>(v);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "boundary") {
      if (n_boundary >= 0) fail("duplicate 'boundary' line");
      n_boundary = read_count(ls, "boundary");
    } else if (key == "interior") {
      if (n_boundary < 0) fail("'interior' must follow 'boundary'");
      if (n_interior >= 0) fail("duplicate 'interior' line");
      n_interior = read_count(ls, "interior");
      interior_line = line_no;
    } else if (key == "edge") {
      if (n_interior < 0) fail("'edge' before 'boundary' and 'interior'");
      long long u = 0, v = 0;
      std::string g, extra;
      if (!(ls >> u >> v >> g) || (ls >> extra)) fail("malformed edge, expected 'edge <u> <v> <gamma>'");
      if (std::max(std::llabs(u), std::llabs(v)) > 1'000'000) fail("vertex label out of range");
      double gamma = 0.0;
      std::size_t used = 0;
      try {
        gamma = std::stod(g, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != g.size()) fail("malformed conductivity '" + g + "'");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), gamma});
      edge_lines.push_back(line_no);
    } else {
      fail("unknown keyword '" + key + "'");
    }
  }
  if (n_boundary < 0) throw InputError("missing 'boundary' line");
  if (n_interior < 0) throw InputError("missing 'interior' line");

  const std::string where_interior = "line " + std::to_string(interior_line);
  check_network(
      n_boundary, n_interior, edges,
      [&](std::size_t k) { return "line " + std::to_string(edge_lines[k]); }, where_interior);
  return Network(n_boundary, n_interior, edges);
}

}  // namespace rnet
