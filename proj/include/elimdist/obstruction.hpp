#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elimdist/canonical.hpp"
#include "elimdist/enumerate.hpp"
#include "elimdist/graph.hpp"
#include "elimdist/graph_io.hpp"
#include "elimdist/minor.hpp"

namespace elimdist {

// The class tower C_0 = C, C_{i+1} = disjoint-union closure of apex(C_i),
// with C given by its excluded minors.
struct CkSpec {
  ObstructionSet base;
  int k = 0;
};

namespace detail {

// All labelled trees on m nodes, as edge lists, decoded from Prüfer
// sequences. m = 1 yields the single empty tree.
inline std::vector<std::vector<std::pair<int, int>>> labelled_trees(int m) {
  if (m == 1) return {{}};
  std::vector<std::vector<std::pair<int, int>>> trees;
  std::vector<int> seq(static_cast<std::size_t>(m - 2), 0);
  for (;;) {
    std::vector<int> degree(static_cast<std::size_t>(m), 1);
    for (int s : seq) ++degree[static_cast<std::size_t>(s)];
    std::vector<std::pair<int, int>> edges;
    std::vector<int> work = seq;
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (int s : work) {
      int leaf = -1;
      for (int v = 0; v < m; ++v)
        if (degree[static_cast<std::size_t>(v)] == 1 && !used[static_cast<std::size_t>(v)]) {
          leaf = v;
          break;
        }
      edges.emplace_back(leaf, s);
      used[static_cast<std::size_t>(leaf)] = true;
      --degree[static_cast<std::size_t>(s)];
    }
    int a = -1, b = -1;
    for (int v = 0; v < m; ++v)
      if (!used[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] == 1) {
        if (a < 0)
          a = v;
        else
          b = v;
      }
    edges.emplace_back(a, b);
    trees.push_back(std::move(edges));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[static_cast<std::size_t>(i)] == m - 1) seq[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++seq[static_cast<std::size_t>(i)];
  }
  return trees;
}

}  // namespace detail

// All isomorphism-distinct minimal connected supergraphs of G on the same
// vertex set preserving each component induced: a labelled tree over the
// components, each tree edge realised by one cross-component vertex pair.
// Every result has exactly e + m - 1 edges.
inline std::vector<Graph> connection_closure(const Graph& g) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("connection closure of the null graph is undefined");
  std::vector<VertexSet> comps = g.component_masks();
  int m = static_cast<int>(comps.size());
  if (m == 1) return {g};
  std::vector<std::vector<int>> comp_vertices;
  comp_vertices.reserve(comps.size());
  for (VertexSet c : comps) comp_vertices.push_back(set_to_vertices(c));

  std::map<CanonicalCode, Graph> out;
  int expected_edges = g.edge_count() + m - 1;
  for (const auto& tree : detail::labelled_trees(m)) {
    std::vector<std::pair<int, int>> chosen(tree.size());
    auto realise = [&](auto&& self, std::size_t edge_index) -> void {
      if (edge_index == tree.size()) {
        Graph h = g;
        for (auto [u, v] : chosen) h.add_edge(u, v);
        if (h.edge_count() != expected_edges)
          throw std::logic_error("connection closure produced a wrong edge count");
        CanonicalCode code = canonical_form(h);
        if (!out.contains(code)) out.emplace(std::move(code), std::move(h));
        return;
      }
      auto [ci, cj] = tree[edge_index];
      for (int u : comp_vertices[static_cast<std::size_t>(ci)])
        for (int v : comp_vertices[static_cast<std::size_t>(cj)]) {
          chosen[edge_index] = {u, v};
          self(self, edge_index + 1);
        }
    };
    realise(realise, 0);
  }
  std::vector<Graph> list;
  list.reserve(out.size());
  for (auto& [code, h] : out) list.push_back(std::move(h));
  return list;
}

// M(union-closure of C) for the class C with obstruction set M: union of the
// connection closures of all members, then minor-minimal filtering.
inline ObstructionSet union_closure_obstructions(const ObstructionSet& m,
                                                 std::uint64_t node_budget = kDefaultNodeBudget) {
  std::map<CanonicalCode, Graph> gathered;
  for (const Graph& member : m.members)
    for (Graph& h : connection_closure(member)) {
      CanonicalCode code = canonical_form(h);
      if (!gathered.contains(code)) gathered.emplace(std::move(code), std::move(h));
    }
  std::vector<Graph> pool;
  pool.reserve(gathered.size());
  for (auto& [code, h] : gathered) pool.push_back(std::move(h));
  return minor_minimal_filter(pool, node_budget);
}

// A minor-closed class is union-closed iff every excluded minor is connected.
inline bool is_union_closed(const ObstructionSet& m) {
  for (const Graph& h : m.members)
    if (!h.connected()) return false;
  return true;
}

// Membership in apex(C): some vertex whose deletion lands in C. The null
// graph is a member with a vacuous witness, so that C is contained in
// apex(C) even when there is no vertex to delete.
struct ApexResult {
  bool member = false;
  std::optional<int> apex;
};

inline ApexResult apex_membership(const Graph& g, const ObstructionSet& m,
                                  std::uint64_t node_budget = kDefaultNodeBudget) {
  if (g.vertex_count() == 0) return {true, std::nullopt};
  for (int v = 0; v < g.vertex_count(); ++v)
    if (excludes(g.without_vertex(v), m, node_budget)) return {true, v};
  return {false, std::nullopt};
}

// Direct recursion on the iterated apex/union definition: G is in C_0 iff it
// excludes the base set; G is in C_{i+1} iff every connected component has a
// vertex whose deletion lands in C_i. The null graph is in C_k for every k.
inline bool ck_membership(const Graph& g, const CkSpec& spec,
                          std::uint64_t node_budget = kDefaultNodeBudget) {
  if (spec.k < 0) throw std::out_of_range("negative tower level");
  if (spec.k == 0) return excludes(g, spec.base, node_budget);
  for (VertexSet comp : g.component_masks()) {
    Graph sub = g.induced_subgraph(comp);
    bool has_apex = false;
    for (int v = 0; v < sub.vertex_count() && !has_apex; ++v)
      has_apex = ck_membership(sub.without_vertex(v), CkSpec{spec.base, spec.k - 1}, node_budget);
    if (!has_apex) return false;
  }
  return true;
}

// An obstruction set known to be complete only up to a vertex-count bound.
struct PartialObstructionSet {
  ObstructionSet set;
  std::optional<int> partial_up_to;
};

// All minor-minimal non-members with at most n_max vertices, for a
// membership predicate that is minor-closed on the probed range. Minimality
// of H is certified by every one-step minor (single vertex deletion, edge
// deletion, or edge contraction) being a member, which suffices for
// minor-closed membership. A sampled closedness check guards against
// predicates that are not minor-closed.
inline PartialObstructionSet enumerate_obstructions(
    const std::function<bool(const Graph&)>& membership, int n_max, int sanity_check_up_to = 4) {
  if (n_max < 1) throw std::out_of_range("n_max must be at least 1");
  if (!membership(Graph(0)))
    throw std::invalid_argument(
        "membership rejects the null graph, so it cannot be minor-closed and nonempty");
  for (const Graph& g : enumerate_graphs_up_to(std::min(n_max, sanity_check_up_to))) {
    if (!membership(g)) continue;
    for (const Graph& h : one_step_minors(g))
      if (!membership(h))
        throw std::invalid_argument("membership is not minor-closed: " + write_graph6(g) +
                                    " is a member but its minor " + write_graph6(h) + " is not");
  }
  std::vector<Graph> found;
  for (int n = 1; n <= n_max; ++n)
    for (const Graph& h : enumerate_graphs(n)) {
      if (membership(h)) continue;
      bool minimal = true;
      for (const Graph& m : one_step_minors(h))
        if (!membership(m)) {
          minimal = false;
          break;
        }
      if (minimal) found.push_back(h);
    }
  ObstructionSet set;
  std::map<CanonicalCode, Graph> ordered;
  for (Graph& h : found) ordered.emplace(canonical_form(h), std::move(h));
  for (auto& [code, h] : ordered) set.members.push_back(std::move(h));
  return {std::move(set), n_max};
}

// M(C_k) for the tower over spec.base, alternating a bounded apex
// enumeration with the exact disjoint-union step, k times. The apex stages
// make the result partial up to n_max.
inline PartialObstructionSet ck_obstructions(const CkSpec& spec, int n_max,
                                             std::uint64_t node_budget = kDefaultNodeBudget) {
  if (spec.k < 0) throw std::out_of_range("negative tower level");
  if (spec.k == 0) return {spec.base, std::nullopt};
  ObstructionSet current = spec.base;
  for (int i = 1; i <= spec.k; ++i) {
    PartialObstructionSet apex_set = enumerate_obstructions(
        [&](const Graph& g) { return apex_membership(g, current, node_budget).member; }, n_max);
    current = union_closure_obstructions(apex_set.set, node_budget);
  }
  return {std::move(current), n_max};
}

}  // namespace elimdist
