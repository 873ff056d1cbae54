#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elimdist/graph.hpp"

// Independent reference implementations used for cross-validation. These are
// deliberately naive: plain permutation search, plain subset enumeration,
// direct recursion on definitions. They share no code paths with the
// algorithms they check.
namespace elimdist::oracle {

// Does a colour- and adjacency-preserving bijection exist? Brute force over
// all n! vertex bijections.
inline bool isomorphic_by_permutation(const Graph& a, const Graph& b) {
  int n = a.vertex_count();
  if (n != b.vertex_count() || a.colour_count() != b.colour_count()) return false;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      if (a.colour(u) != b.colour(perm[static_cast<std::size_t>(u)])) ok = false;
      for (int v = u + 1; v < n && ok; ++v)
        if (a.has_edge(u, v) != b.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)])) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0;
}

// The least adjacency bit string over all relabellings; a permutation-search
// isomorphism-class key.
inline std::string min_relabelled_signature(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::string> best;
  do {
    std::string sig;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        sig.push_back(g.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]) ? '1' : '0');
    if (!best || sig < *best) best = std::move(sig);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best.value_or("");
}

// Number of isomorphism classes on n vertices: every edge subset, deduplicated
// by the permutation-search signature.
inline long count_graphs_by_edge_subsets(int n, bool connected_only = false) {
  int pairs = n * (n - 1) / 2;
  std::set<std::string> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (mask & (std::uint64_t{1} << bit++)) g.add_edge(u, v);
    if (connected_only && !g.connected()) continue;
    seen.insert(min_relabelled_signature(g));
  }
  return static_cast<long>(seen.size());
}

// Tree-depth straight from the defining recursion, no memoisation or caps.
inline int tree_depth_by_definition(const Graph& g) {
  if (g.vertex_count() == 0) return 0;
  std::vector<VertexSet> comps = g.component_masks();
  if (comps.size() > 1) {
    int worst = 0;
    for (VertexSet c : comps)
      worst = std::max(worst, tree_depth_by_definition(g.induced_subgraph(c)));
    return worst;
  }
  int best = g.vertex_count();
  for (int v = 0; v < g.vertex_count(); ++v)
    best = std::min(best, tree_depth_by_definition(g.without_vertex(v)));
  return 1 + best;
}

// Minimum vertex cover size by subset enumeration.
inline int vertex_cover_number(const Graph& g) {
  int n = g.vertex_count();
  for (int size = 0; size <= n; ++size) {
    VertexSet last = g.vertices();
    for (VertexSet s = 0;; ++s) {
      if (set_size(s) == size) {
        bool covers = true;
        for (auto [u, v] : g.edges())
          if ((s & vertex_bit(u)) == 0 && (s & vertex_bit(v)) == 0) {
            covers = false;
            break;
          }
        if (covers) return size;
      }
      if (s == last) break;
    }
  }
  return n;
}

// r-independent set by plain subset enumeration.
inline std::optional<std::vector<int>> distance_independent_set_by_enumeration(const Graph& g,
                                                                               int k, int r) {
  int n = g.vertex_count();
  std::vector<std::vector<int>> dist;
  for (int v = 0; v < n; ++v) dist.push_back(g.bfs_from(v, g.vertices()));
  VertexSet last = g.vertices();
  for (VertexSet s = 0;; ++s) {
    if (set_size(s) == k) {
      std::vector<int> vs = set_to_vertices(s);
      bool ok = true;
      for (std::size_t i = 0; i < vs.size() && ok; ++i)
        for (std::size_t j = i + 1; j < vs.size() && ok; ++j) {
          int d = dist[static_cast<std::size_t>(vs[i])][static_cast<std::size_t>(vs[j])];
          if (d >= 0 && d < r) ok = false;
        }
      if (ok) return vs;
    }
    if (s == last) break;
  }
  if (k == 0) return std::vector<int>{};
  return std::nullopt;
}

// Is H isomorphic to a (not necessarily induced) subgraph of G? Injection
// search over ordered vertex choices.
inline bool subgraph_embeddable(const Graph& h, const Graph& g) {
  int hn = h.vertex_count(), gn = g.vertex_count();
  if (hn > gn) return false;
  std::vector<int> image(static_cast<std::size_t>(hn), -1);
  std::vector<bool> used(static_cast<std::size_t>(gn), false);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == hn) return true;
    for (int cand = 0; cand < gn; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (h.has_edge(j, i) && !g.has_edge(image[static_cast<std::size_t>(j)], cand)) ok = false;
      if (!ok) continue;
      image[static_cast<std::size_t>(i)] = cand;
      used[static_cast<std::size_t>(cand)] = true;
      if (self(self, i + 1)) return true;
      used[static_cast<std::size_t>(cand)] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

// Minor / depth-minor containment by exhaustive assignment of G-vertices to
// branch sets (0 = unused), entirely independent of the incremental search.
inline bool minor_by_assignment(const Graph& h, const Graph& g,
                                std::optional<int> radius = std::nullopt) {
  int hn = h.vertex_count(), gn = g.vertex_count();
  if (hn == 0) return true;
  if (hn > gn) return false;
  std::vector<int> owner(static_cast<std::size_t>(gn), 0);
  auto connected_and_within_radius = [&](VertexSet s) {
    if (s == 0) return false;
    VertexSet comp = vertex_bit(first_vertex(s));
    for (;;) {
      VertexSet grown = comp;
      for_each_vertex(comp, [&](int v) { grown |= g.neighbours(v) & s; });
      if (grown == comp) break;
      comp = grown;
    }
    if (comp != s) return false;
    if (!radius) return true;
    bool some_centre = false;
    for_each_vertex(s, [&](int c) {
      if (some_centre) return;
      std::vector<int> dist = g.bfs_from(c, s);
      bool ok = true;
      for_each_vertex(s, [&](int v) {
        if (dist[static_cast<std::size_t>(v)] < 0 || dist[static_cast<std::size_t>(v)] > *radius) ok = false;
      });
      if (ok) some_centre = true;
    });
    return some_centre;
  };
  auto valid = [&]() {
    std::vector<VertexSet> sets(static_cast<std::size_t>(hn + 1), 0);
    for (int v = 0; v < gn; ++v) sets[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])] |= vertex_bit(v);
    for (int i = 1; i <= hn; ++i)
      if (!connected_and_within_radius(sets[static_cast<std::size_t>(i)])) return false;
    for (auto [a, b] : h.edges()) {
      bool linked = false;
      for_each_vertex(sets[static_cast<std::size_t>(a + 1)], [&](int u) {
        if ((g.neighbours(u) & sets[static_cast<std::size_t>(b + 1)]) != 0) linked = true;
      });
      if (!linked) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == gn) return valid();
    for (int o = 0; o <= hn; ++o) {
      owner[static_cast<std::size_t>(v)] = o;
      if (self(self, v + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace elimdist::oracle
