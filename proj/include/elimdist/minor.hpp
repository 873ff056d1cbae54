#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elimdist/canonical.hpp"
#include "elimdist/graph.hpp"

namespace elimdist {

// Default node budget for exact minor searches.
constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

// Thrown when a search exceeds its node budget, so callers never mistake an
// aborted search for a negative answer.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t budget)
      : std::runtime_error("search budget of " + std::to_string(budget) +
                           " nodes exhausted") {}
};

// Witness for H <= G (or a depth-r minor when `radius` is set): branch_sets[h]
// is the connected set of G-vertices modelling H-vertex h; centers[h], when
// present, reaches every branch-set vertex within `radius` steps inside the set.
struct MinorMap {
  std::vector<VertexSet> branch_sets;
  std::optional<std::vector<int>> centers;
  std::optional<int> radius;
};

namespace detail {

struct BudgetCounter {
  std::uint64_t limit;
  std::uint64_t used = 0;

  void tick() {
    if (++used > limit) throw BudgetExhausted(limit);
  }
};

inline bool connected_in(const Graph& g, VertexSet s) {
  if (s == 0) return false;
  VertexSet comp = vertex_bit(first_vertex(s));
  for (;;) {
    VertexSet grown = comp;
    for_each_vertex(comp, [&](int v) { grown |= g.neighbours(v) & s; });
    if (grown == comp) return comp == s;
    comp = grown;
  }
}

// Smallest valid centre of s under the in-set radius bound, or nullopt.
inline std::optional<int> centre_within_radius(const Graph& g, VertexSet s, int radius) {
  std::optional<int> found;
  for_each_vertex(s, [&](int c) {
    if (found) return;
    std::vector<int> dist = g.bfs_from(c, s);
    bool ok = true;
    for_each_vertex(s, [&](int v) {
      int d = dist[static_cast<std::size_t>(v)];
      if (d < 0 || d > radius) ok = false;
    });
    if (ok) found = c;
  });
  return found;
}

struct MinorSearch {
  const Graph& h;
  const Graph& g;
  std::optional<int> radius;
  BudgetCounter budget;

  std::vector<int> order;             // H-vertices, decreasing degree
  std::vector<VertexSet> assigned;    // branch set per position in `order`
  std::vector<int> centres;           // centre per position (radius mode)

  bool adjacency_ok(VertexSet s, std::size_t level) const {
    int hv = order[level];
    for (std::size_t j = 0; j < level; ++j) {
      if (!h.has_edge(order[j], hv)) continue;
      VertexSet reach = 0;
      for_each_vertex(assigned[j], [&](int v) { reach |= g.neighbours(v); });
      if ((reach & s) == 0) return false;
    }
    return true;
  }

  bool extend(std::size_t level, VertexSet free) {
    if (level == order.size()) return true;
    int needed_after = static_cast<int>(order.size() - level - 1);
    int h_degree = h.degree(order[level]);
    // Candidate branch sets: connected subsets of the free vertices, smallest
    // first so cheap witnesses are found early.
    std::vector<VertexSet> candidates;
    for (VertexSet s = free; s != 0; s = (s - 1) & free) candidates.push_back(s);
    std::sort(candidates.begin(), candidates.end(), [](VertexSet a, VertexSet b) {
      int pa = set_size(a), pb = set_size(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (VertexSet s : candidates) {
      budget.tick();
      if (set_size(free & ~s) < needed_after) continue;
      if (!connected_in(g, s)) continue;
      int boundary = 0;
      for_each_vertex(s, [&](int v) { boundary += set_size(g.neighbours(v) & ~s); });
      if (boundary < h_degree) continue;
      if (!adjacency_ok(s, level)) continue;
      if (radius) {
        std::optional<int> centre = centre_within_radius(g, s, *radius);
        if (!centre) continue;
        centres[level] = *centre;
      }
      assigned[level] = s;
      if (extend(level + 1, free & ~s)) return true;
    }
    return false;
  }

  std::optional<MinorMap> run() {
    int hn = h.vertex_count();
    if (hn > g.vertex_count()) return std::nullopt;
    if (h.edge_count() > g.edge_count()) return std::nullopt;
    order.resize(static_cast<std::size_t>(hn));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int da = h.degree(a), db = h.degree(b);
      return da != db ? da > db : a < b;
    });
    assigned.assign(order.size(), 0);
    centres.assign(order.size(), -1);
    if (!extend(0, g.vertices())) return std::nullopt;
    MinorMap map;
    map.branch_sets.assign(static_cast<std::size_t>(hn), 0);
    map.radius = radius;
    if (radius) map.centers = std::vector<int>(static_cast<std::size_t>(hn), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      map.branch_sets[static_cast<std::size_t>(order[i])] = assigned[i];
      if (radius) (*map.centers)[static_cast<std::size_t>(order[i])] = centres[i];
    }
    return map;
  }
};

}  // namespace detail

// Checks every MinorMap invariant: disjoint connected branch sets covering
// H's edges, and the in-set radius bound when one is attached.
inline bool is_valid_minor_map(const Graph& h, const Graph& g, const MinorMap& map) {
  if (map.branch_sets.size() != static_cast<std::size_t>(h.vertex_count())) return false;
  VertexSet used = 0;
  for (VertexSet s : map.branch_sets) {
    if (s == 0 || (s & ~g.vertices()) != 0) return false;
    if ((s & used) != 0) return false;
    used |= s;
    if (!detail::connected_in(g, s)) return false;
  }
  for (auto [u, v] : h.edges()) {
    VertexSet reach = 0;
    for_each_vertex(map.branch_sets[static_cast<std::size_t>(u)],
                    [&](int w) { reach |= g.neighbours(w); });
    if ((reach & map.branch_sets[static_cast<std::size_t>(v)]) == 0) return false;
  }
  if (map.radius) {
    if (!map.centers || map.centers->size() != map.branch_sets.size()) return false;
    for (std::size_t i = 0; i < map.branch_sets.size(); ++i) {
      int c = (*map.centers)[i];
      VertexSet s = map.branch_sets[i];
      if (c < 0 || (s & vertex_bit(c)) == 0) return false;
      std::vector<int> dist = g.bfs_from(c, s);
      bool ok = true;
      for_each_vertex(s, [&](int v) {
        int d = dist[static_cast<std::size_t>(v)];
        if (d < 0 || d > *map.radius) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

// Exact test for H <= G with a witness; throws BudgetExhausted when the node
// budget runs out. Colours are ignored: the minor relation is on plain graphs.
inline std::optional<MinorMap> find_minor(const Graph& h, const Graph& g,
                                          std::uint64_t node_budget = kDefaultNodeBudget) {
  detail::MinorSearch search{h, g, std::nullopt, {node_budget}, {}, {}, {}};
  return search.run();
}

// Exact test for H <=_r G: branch sets must admit a centre within distance
// `radius` of every branch-set vertex, measured inside the branch set.
inline std::optional<MinorMap> find_depth_minor(const Graph& h, const Graph& g, int radius,
                                                std::uint64_t node_budget = kDefaultNodeBudget) {
  if (radius < 0) throw std::out_of_range("negative radius");
  detail::MinorSearch search{h, g, radius, {node_budget}, {}, {}, {}};
  return search.run();
}

// Finite antichain of pairwise non-isomorphic nonempty graphs, kept in
// canonical-code order.
struct ObstructionSet {
  std::vector<Graph> members;

  static ObstructionSet from_graphs(std::vector<Graph> graphs,
                                    std::uint64_t node_budget = kDefaultNodeBudget) {
    ObstructionSet set;
    std::map<CanonicalCode, Graph> by_code;
    for (Graph& g : graphs) {
      if (g.vertex_count() == 0)
        throw std::invalid_argument("obstruction sets cannot contain the null graph");
      by_code.emplace(canonical_form(g), std::move(g));
    }
    if (by_code.size() != graphs.size())
      throw std::invalid_argument("obstruction set members must be pairwise non-isomorphic");
    for (auto& [code, g] : by_code) set.members.push_back(std::move(g));
    for (std::size_t i = 0; i < set.members.size(); ++i)
      for (std::size_t j = 0; j < set.members.size(); ++j)
        if (i != j && find_minor(set.members[i], set.members[j], node_budget))
          throw std::invalid_argument("obstruction set is not an antichain under the minor relation");
    return set;
  }
};

// Membership of G in the minor-closed class characterised by M: true iff no
// member of M is a minor of G. The empty set characterises all graphs.
inline bool excludes(const Graph& g, const ObstructionSet& m,
                     std::uint64_t node_budget = kDefaultNodeBudget) {
  for (const Graph& h : m.members)
    if (find_minor(h, g, node_budget)) return false;
  return true;
}

// All isomorphism-distinct results of one vertex deletion, one edge deletion,
// or one edge contraction, in canonical-code order.
inline std::vector<Graph> one_step_minors(const Graph& g) {
  std::map<CanonicalCode, Graph> out;
  auto keep = [&](Graph&& h) {
    CanonicalCode code = canonical_form(h);
    if (!out.contains(code)) out.emplace(std::move(code), std::move(h));
  };
  for (int v = 0; v < g.vertex_count(); ++v) keep(g.without_vertex(v));
  for (auto [u, v] : g.edges()) {
    keep(g.without_edge(u, v));
    keep(g.contract_edge(u, v));
  }
  std::vector<Graph> list;
  list.reserve(out.size());
  for (auto& [code, h] : out) list.push_back(std::move(h));
  return list;
}

// Deduplicates by isomorphism, then keeps only graphs with no other retained
// graph as a minor. Proper minors strictly decrease n+m, so scanning in
// increasing n+m order against already-kept graphs finds the antichain.
inline ObstructionSet minor_minimal_filter(const std::vector<Graph>& graphs,
                                           std::uint64_t node_budget = kDefaultNodeBudget) {
  std::map<CanonicalCode, Graph> unique;
  for (const Graph& g : graphs) {
    if (g.vertex_count() == 0)
      throw std::invalid_argument("minor_minimal_filter: the null graph is a minor of everything");
    unique.emplace(canonical_form(g), g);
  }
  std::vector<Graph> pool;
  pool.reserve(unique.size());
  for (auto& [code, g] : unique) pool.push_back(std::move(g));
  std::stable_sort(pool.begin(), pool.end(), [](const Graph& a, const Graph& b) {
    return a.vertex_count() + a.edge_count() < b.vertex_count() + b.edge_count();
  });
  std::vector<Graph> kept;
  for (const Graph& g : pool) {
    bool minimal = true;
    for (const Graph& k : kept)
      if (find_minor(k, g, node_budget)) {
        minimal = false;
        break;
      }
    if (minimal) kept.push_back(g);
  }
  std::map<CanonicalCode, Graph> ordered;
  for (Graph& g : kept) ordered.emplace(canonical_form(g), std::move(g));
  ObstructionSet set;
  for (auto& [code, g] : ordered) set.members.push_back(std::move(g));
  return set;
}

// Largest m <= cap with K_m a depth-`radius` minor of G. Clique depth-minors
// are monotone in m, so the scan stops at the first failure.
inline int max_clique_depth_minor(const Graph& g, int radius, int cap,
                                  std::uint64_t node_budget = kDefaultNodeBudget) {
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
  int best = 0;
  for (int m = 1; m <= std::min(cap, g.vertex_count()); ++m) {
    if (!find_depth_minor(Graph::complete(m), g, radius, node_budget)) break;
    best = m;
  }
  return best;
}

}  // namespace elimdist
