#include "rnet/paths.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>

#include "rnet/error.hpp"

namespace rnet {

namespace {

std::vector<Vertex> set_minus(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> set_and(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Depth-first router. Paths are routed one start at a time in ascending
// start order; each path walks unused intermediate vertices until it steps
// onto an unused target. Dead states (no completion) are memoized on
// (path index, current vertex, used set).
class Router {
 public:
  Router(const Network& net, const BoundaryPair& pair, std::size_t limit, bool throw_on_limit)
      : net_(net),
        limit_(limit),
        throw_on_limit_(throw_on_limit),
        is_target_(static_cast<std::size_t>(net.n_vertices()) + 1, false),
        is_allowed_(static_cast<std::size_t>(net.n_vertices()) + 1, false),
        used_(static_cast<std::size_t>(net.n_vertices()) + 1, false) {
    starts_ = set_minus(pair.p(), pair.q());
    for (Vertex t : set_minus(pair.q(), pair.p())) is_target_[idx(t)] = true;
    for (Vertex s : set_and(pair.p(), pair.q())) is_allowed_[idx(s)] = true;
    for (Vertex v : net.interior()) is_allowed_[idx(v)] = true;
    for (Vertex s : starts_) used_[idx(s)] = true;
  }

  std::vector<PathSystem> run() {
    route(0);
    return std::move(out_);
  }

 private:
  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

  std::string key(std::size_t k, Vertex at) const {
    std::string s;
    s.reserve(used_.size() + 8);
    s += std::to_string(k);
    s += ':';
    s += std::to_string(at);
    s += ':';
    for (bool u : used_) s += u ? '1' : '0';
    return s;
  }

  // Every remaining start must still see an unused target.
  bool targets_reachable(std::size_t k) const {
    for (std::size_t j = k; j < starts_.size(); ++j) {
      std::vector<bool> seen(used_.size(), false);
      std::deque<Vertex> queue{starts_[j]};
      seen[idx(starts_[j])] = true;
      bool hit = false;
      while (!queue.empty() && !hit) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const auto& inc : net_.neighbors(v)) {
          const Vertex w = inc.neighbor;
          if (used_[idx(w)] || seen[idx(w)]) continue;
          if (is_target_[idx(w)]) {
            hit = true;
            break;
          }
          if (is_allowed_[idx(w)]) {
            seen[idx(w)] = true;
            queue.push_back(w);
          }
        }
      }
      if (!hit) return false;
    }
    return true;
  }

  bool route(std::size_t k) {
    if (stopped_) return true;
    if (k == starts_.size()) {
      emit();
      return true;
    }
    const std::string state = key(k, 0);
    if (dead_.contains(state)) return false;
    bool found = false;
    if (targets_reachable(k)) {
      current_.push_back({starts_[k]});
      found = extend(k, starts_[k]);
      current_.pop_back();
    }
    if (!found) dead_.insert(state);
    return found;
  }

  bool extend(std::size_t k, Vertex v) {
    const std::string state = key(k, v);
    if (dead_.contains(state)) return false;
    bool found = false;
    for (const auto& inc : net_.neighbors(v)) {
      if (stopped_) return true;
      const Vertex w = inc.neighbor;
      if (used_[idx(w)]) continue;
      if (is_target_[idx(w)]) {
        used_[idx(w)] = true;
        current_.back().push_back(w);
        found |= route(k + 1);
        current_.back().pop_back();
        used_[idx(w)] = false;
      } else if (is_allowed_[idx(w)]) {
        used_[idx(w)] = true;
        current_.back().push_back(w);
        found |= extend(k, w);
        current_.back().pop_back();
        used_[idx(w)] = false;
      }
    }
    if (!found) dead_.insert(state);
    return found;
  }

  void emit() {
    if (out_.size() == limit_) {
      if (throw_on_limit_) {
        throw EnumerationLimit("more than " + std::to_string(limit_) +
                               " disjoint path systems for one pair");
      }
      stopped_ = true;
      return;
    }
    PathSystem sys;
    sys.paths = current_;
    for (const auto& path : current_) sys.endpoint_map.emplace_back(path.front(), path.back());
    for (Vertex v = 1; v <= net_.n_vertices(); ++v)
      if (is_allowed_[idx(v)] && !used_[idx(v)]) sys.residual.push_back(v);
    out_.push_back(std::move(sys));
    if (!throw_on_limit_ && out_.size() == limit_) stopped_ = true;
  }

  const Network& net_;
  std::size_t limit_;
  bool throw_on_limit_;
  bool stopped_ = false;
  std::vector<Vertex> starts_;
  std::vector<bool> is_target_;
  std::vector<bool> is_allowed_;
  std::vector<bool> used_;
  std::vector<std::vector<Vertex>> current_;
  std::unordered_set<std::string> dead_;
  std::vector<PathSystem> out_;
};

std::vector<EdgeId> path_edges(const Network& net, const PathSystem& system) {
  std::vector<EdgeId> edges;
  for (const auto& path : system.paths)
    for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.push_back(net.edge_between(path[i], path[i + 1]));
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

std::vector<PathSystem> enumerate_path_systems(const Network& net, const BoundaryPair& pair,
                                               std::size_t cap) {
  return Router(net, pair, cap, true).run();
}

int term_sign(const Network& net, const PathSystem& system, const BoundaryPair& pair) {
  const std::vector<Vertex> rows = with_interior(net, pair.p());
  const std::vector<Vertex> cols = with_interior(net, pair.q());
  std::vector<int> row_rank(static_cast<std::size_t>(net.n_vertices()) + 1, -1);
  std::vector<int> col_rank(row_rank.size(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_rank[static_cast<std::size_t>(rows[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < cols.size(); ++i) col_rank[static_cast<std::size_t>(cols[i])] = static_cast<int>(i);

  std::vector<int> perm(rows.size(), -1);
  std::size_t edge_count = 0;
  auto assign = [&](Vertex from, Vertex to) {
    const int r = row_rank[static_cast<std::size_t>(from)];
    const int c = col_rank[static_cast<std::size_t>(to)];
    if (r < 0 || c < 0 || perm[static_cast<std::size_t>(r)] >= 0) {
      throw InputError("path system does not match the boundary pair");
    }
    perm[static_cast<std::size_t>(r)] = c;
  };
  for (const auto& path : system.paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) assign(path[i], path[i + 1]);
    edge_count += path.size() - 1;
  }
  for (Vertex s : system.residual) assign(s, s);

  std::vector<bool> visited(perm.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] < 0) throw InputError("path system leaves a row unassigned");
    if (visited[i]) continue;
    ++cycles;
    for (std::size_t j = i; !visited[j]; j = static_cast<std::size_t>(perm[j])) visited[j] = true;
  }
  const bool odd_perm = (perm.size() - cycles) % 2 == 1;
  const bool odd_edges = edge_count % 2 == 1;
  return odd_perm != odd_edges ? -1 : 1;
}

Expansion expand_terms(const Network& net, const BoundaryPair& pair, std::size_t cap) {
  const KirchhoffMatrix k = kirchhoff(net);
  Expansion ex;
  double magnitude = 0.0;
  for (PathSystem& sys : enumerate_path_systems(net, pair, cap)) {
    PathTerm term;
    term.sign = term_sign(net, sys, pair);
    term.monomial = path_edges(net, sys);
    for (EdgeId e : term.monomial) term.edge_product *= net.edge(e).gamma;
    term.residual_det = kirchhoff_subdet(k, sys.residual, sys.residual);
    term.system = std::move(sys);
    ex.total += term.value();
    magnitude += std::abs(term.value());
    ex.terms.push_back(std::move(term));
  }
  ex.reference = kirchhoff_subdet(k, with_interior(net, pair.p()), with_interior(net, pair.q()));
  const double scale = std::max(std::abs(ex.reference), magnitude);
  ex.discrepancy = ex.total == ex.reference ? 0.0
                   : scale == 0.0           ? 1.0
                                            : std::abs(ex.total - ex.reference) / scale;
  return ex;
}

Expansion expand_det(const Network& net, const BoundaryPair& pair, std::size_t cap) {
  Expansion ex = expand_terms(net, pair, cap);
  if (!(ex.discrepancy <= kExpansionTol)) {
    throw ExpansionMismatch("path expansion " + format_real(ex.total) +
                            " disagrees with det K(P u I, Q u I) = " + format_real(ex.reference) +
                            " (relative " + format_real(ex.discrepancy) + ")");
  }
  return ex;
}

std::optional<RowDescription> is_log_linear_admissible(const Network& net,
                                                       const BoundaryPair& pair) {
  // Two systems already disqualify the pair.
  std::vector<PathSystem> systems = Router(net, pair, 2, false).run();
  if (systems.size() != 1) return std::nullopt;
  const PathSystem& sys = systems.front();

  RowDescription row;
  row.pair = pair;
  row.edges = path_edges(net, sys);
  for (Vertex s : sys.residual) {
    if (net.is_interior(s) || net.degree(s) != 1) return std::nullopt;
    const auto& only = net.neighbors(s).front();
    if (std::binary_search(sys.residual.begin(), sys.residual.end(), only.neighbor)) {
      return std::nullopt;
    }
    row.edges.push_back(only.edge);
  }
  std::sort(row.edges.begin(), row.edges.end());
  row.sign = term_sign(net, sys, pair);
  return row;
}

}  // namespace rnet
