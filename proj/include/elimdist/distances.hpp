#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elimdist/canonical.hpp"
#include "elimdist/class_spec.hpp"
#include "elimdist/graph.hpp"

namespace elimdist {

// Elimination witness: one node per vertex deleted from a connected
// subgraph, children covering the components that deletion leaves behind.
// Components already inside the class get no node.
struct ElimTreeNode {
  int vertex;
  std::vector<ElimTreeNode> children;
};
using ElimForest = std::vector<ElimTreeNode>;

inline int elimination_forest_depth(const ElimForest& forest) {
  int depth = 0;
  for (const ElimTreeNode& node : forest)
    depth = std::max(depth, 1 + elimination_forest_depth(node.children));
  return depth;
}

struct DistanceResult {
  std::optional<int> value;  // nullopt means the value exceeds the cap
  std::optional<ElimForest> elimination;
  std::optional<std::vector<int>> deleted;

  bool exceeds_cap() const { return !value.has_value(); }
};

namespace detail {

// Memoised branch-and-bound over induced subgraphs, keyed by canonical form.
// An entry is either exact, or a lower bound recorded when a branch was cut
// off by its cap (the value is known to exceed `lower`).
class EliminationSolver {
 public:
  EliminationSolver(const Graph& g, const ClassSpec& cls, std::uint64_t node_budget)
      : g_(g), cls_(cls), node_budget_(node_budget) {}

  std::optional<int> solve(VertexSet mask, int cap) {
    if (cap < 0) return std::nullopt;
    std::string key = canonical_form(g_.induced_subgraph(mask)).as_key();
    {
      Entry e = memo_[key];
      if (e.exact >= 0) return e.exact <= cap ? std::optional<int>(e.exact) : std::nullopt;
      if (e.lower >= cap) return std::nullopt;
    }
    std::optional<int> value = compute(mask, cap);
    Entry& slot = memo_[key];
    if (value) {
      slot.exact = *value;
    } else {
      slot.lower = std::max(slot.lower, cap);
    }
    return value;
  }

  ElimForest witness(VertexSet mask, int value) {
    ElimForest forest;
    for (VertexSet comp : g_.component_masks(mask)) {
      if (cls_.contains(g_.induced_subgraph(comp), node_budget_)) continue;
      std::optional<int> comp_value = solve(comp, value);
      if (!comp_value) throw std::logic_error("witness replay disagrees with solver");
      ElimTreeNode node{-1, {}};
      for (int v : deletion_order(comp)) {
        std::optional<int> rest = solve(comp & ~vertex_bit(v), *comp_value - 1);
        if (rest && *rest == *comp_value - 1) {
          node.vertex = v;
          node.children = witness(comp & ~vertex_bit(v), *comp_value - 1);
          break;
        }
      }
      if (node.vertex < 0) throw std::logic_error("witness replay disagrees with solver");
      forest.push_back(std::move(node));
    }
    return forest;
  }

 private:
  struct Entry {
    int exact = -1;
    int lower = -1;
  };

  std::vector<int> deletion_order(VertexSet mask) const {
    std::vector<int> order = set_to_vertices(mask);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int da = set_size(g_.neighbours(a) & mask), db = set_size(g_.neighbours(b) & mask);
      return da != db ? da > db : a < b;
    });
    return order;
  }

  std::optional<int> compute(VertexSet mask, int cap) {
    if (cls_.contains(g_.induced_subgraph(mask), node_budget_)) return 0;
    if (mask == 0)
      throw std::invalid_argument(
          "elimination distance undefined: the class does not contain the null graph");
    std::vector<VertexSet> comps = g_.component_masks(mask);
    if (comps.size() > 1) {
      int worst = 0;
      for (VertexSet comp : comps) {
        std::optional<int> v = solve(comp, cap);
        if (!v) return std::nullopt;
        worst = std::max(worst, *v);
      }
      return worst;
    }
    if (cap == 0) return std::nullopt;
    int best = INT_MAX;
    for (int v : deletion_order(mask)) {
      int child_cap = std::min(cap, best == INT_MAX ? cap : best - 1) - 1;
      if (child_cap < 0) break;
      std::optional<int> rest = solve(mask & ~vertex_bit(v), child_cap);
      if (rest) best = std::min(best, *rest + 1);
    }
    if (best == INT_MAX) return std::nullopt;
    return best;
  }

  const Graph& g_;
  const ClassSpec& cls_;
  std::uint64_t node_budget_;
  std::unordered_map<std::string, Entry> memo_;
};

}  // namespace detail

// Exact elimination distance of G to the class, if at most `cap` (default:
// the vertex count, which always suffices when the class holds the null
// graph). The recursion mirrors the defining three cases: members are at
// distance 0, connected non-members delete one vertex, disconnected graphs
// take the worst component.
inline DistanceResult elimination_distance(const Graph& g, const ClassSpec& cls, int cap = -1,
                                           std::uint64_t node_budget = kDefaultNodeBudget) {
  if (!cls.contains(Graph(0), node_budget))
    throw std::invalid_argument(
        "elimination distance requires a class containing the null graph");
  if (cap < 0) cap = g.vertex_count();
  detail::EliminationSolver solver(g, cls, node_budget);
  std::optional<int> value = solver.solve(g.vertices(), cap);
  DistanceResult result;
  result.value = value;
  if (value) result.elimination = solver.witness(g.vertices(), *value);
  return result;
}

// Tree-depth: elimination distance to the class holding only the null graph.
inline DistanceResult tree_depth(const Graph& g, int cap = -1,
                                 std::uint64_t node_budget = kDefaultNodeBudget) {
  static const ClassSpec empty = ClassSpec::oracle(
      [](const Graph& h) { return h.vertex_count() == 0; }, "empty");
  return elimination_distance(g, empty, cap, node_budget);
}

// Minimum number of vertex deletions reaching the class, if at most `cap`;
// subsets are searched in increasing size, then mask order, so the returned
// witness is deterministic.
inline DistanceResult deletion_distance(const Graph& g, const ClassSpec& cls, int cap = -1,
                                        std::uint64_t node_budget = kDefaultNodeBudget) {
  if (cap < 0) cap = g.vertex_count();
  cap = std::min(cap, g.vertex_count());
  VertexSet last = g.vertices();
  for (int size = 0; size <= cap; ++size) {
    for (VertexSet s = 0;; ++s) {
      if (set_size(s) == size &&
          cls.contains(g.induced_subgraph(g.vertices() & ~s), node_budget)) {
        DistanceResult result;
        result.value = size;
        result.deleted = set_to_vertices(s);
        return result;
      }
      if (s == last) break;
    }
  }
  return {};
}

struct EditBudget {
  int vertex_deletions = 0;
  int edge_deletions = 0;
  int edge_additions = 0;
};

// Edit plan in original vertex labels; edge edits apply after the deletions.
struct EditPlan {
  std::vector<int> delete_vertices;
  std::vector<std::pair<int, int>> delete_edges;
  std::vector<std::pair<int, int>> add_edges;
};

inline Graph apply_edit_plan(const Graph& g, const EditPlan& plan) {
  VertexSet keep = g.vertices();
  for (int v : plan.delete_vertices) keep &= ~vertex_bit(v);
  std::vector<int> old_of = set_to_vertices(keep);
  std::vector<int> new_of(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < old_of.size(); ++i) new_of[static_cast<std::size_t>(old_of[i])] = static_cast<int>(i);
  Graph out = g.induced_subgraph(keep);
  for (auto [u, v] : plan.delete_edges) out.remove_edge(new_of[static_cast<std::size_t>(u)], new_of[static_cast<std::size_t>(v)]);
  for (auto [u, v] : plan.add_edges) out.add_edge(new_of[static_cast<std::size_t>(u)], new_of[static_cast<std::size_t>(v)]);
  return out;
}

// Exhaustive search for an edit plan within the componentwise budget that
// reaches a member of the class, or nullopt when none exists.
inline std::optional<EditPlan> edit_distance(const Graph& g, const ClassSpec& cls,
                                             const EditBudget& budget,
                                             std::uint64_t node_budget = kDefaultNodeBudget) {
  int n = g.vertex_count();
  std::vector<VertexSet> vertex_subsets;
  for (VertexSet s = 0;; ++s) {
    if (set_size(s) <= budget.vertex_deletions) vertex_subsets.push_back(s);
    if (n == 0 || s == full_set(n)) break;
  }
  std::stable_sort(vertex_subsets.begin(), vertex_subsets.end(),
                   [](VertexSet a, VertexSet b) { return set_size(a) < set_size(b); });

  auto subsets_up_to = [](std::size_t pool, int cap) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      out.push_back(current);
      if (static_cast<int>(current.size()) == cap) return;
      for (std::size_t i = start; i < pool; ++i) {
        current.push_back(i);
        self(self, i + 1);
        current.pop_back();
      }
    };
    rec(rec, 0);
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
  };

  for (VertexSet deleted : vertex_subsets) {
    VertexSet keep = g.vertices() & ~deleted;
    std::vector<std::pair<int, int>> present, absent;
    std::vector<int> kept = set_to_vertices(keep);
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = a + 1; b < kept.size(); ++b)
        (g.has_edge(kept[a], kept[b]) ? present : absent).emplace_back(kept[a], kept[b]);
    for (const auto& del_idx : subsets_up_to(present.size(), budget.edge_deletions)) {
      for (const auto& add_idx : subsets_up_to(absent.size(), budget.edge_additions)) {
        EditPlan plan;
        plan.delete_vertices = set_to_vertices(deleted);
        for (std::size_t i : del_idx) plan.delete_edges.push_back(present[i]);
        for (std::size_t i : add_idx) plan.add_edges.push_back(absent[i]);
        if (cls.contains(apply_edit_plan(g, plan), node_budget)) return plan;
      }
    }
  }
  return std::nullopt;
}

// Scalar wrapper: any split of `total` across the three edit categories.
inline std::optional<EditPlan> edit_distance_total(const Graph& g, const ClassSpec& cls,
                                                   int total,
                                                   std::uint64_t node_budget = kDefaultNodeBudget) {
  if (total < 0) throw std::out_of_range("negative edit budget");
  return edit_distance(g, cls, EditBudget{total, total, total}, node_budget);
}

// A set of k vertices with pairwise distance at least r, or nullopt. Distinct
// components count as infinitely far apart. Deterministic: the search tries
// vertices in index order, so the lexicographically least witness is found.
inline std::optional<std::vector<int>> distance_independent_set(const Graph& g, int k, int r) {
  if (k < 0 || r < 0) throw std::out_of_range("negative parameter");
  int n = g.vertex_count();
  std::vector<std::vector<int>> dist;
  dist.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) dist.push_back(g.bfs_from(v, g.vertices()));
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int v = start; v < n; ++v) {
      bool ok = true;
      for (int u : chosen) {
        int d = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        if (d >= 0 && d < r) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(v);
      if (self(self, v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return chosen;
}

// Witness replay: deleting the set must land in the class.
inline bool replay_deletion(const Graph& g, const ClassSpec& cls, const std::vector<int>& deleted,
                            std::uint64_t node_budget = kDefaultNodeBudget) {
  VertexSet keep = g.vertices();
  for (int v : deleted) {
    if (v < 0 || v >= g.vertex_count() || (keep & vertex_bit(v)) == 0) return false;
    keep &= ~vertex_bit(v);
  }
  return cls.contains(g.induced_subgraph(keep), node_budget);
}

namespace detail {

inline bool replay_elimination_mask(const Graph& g, const ClassSpec& cls, VertexSet mask,
                                    const ElimForest& forest, std::uint64_t node_budget) {
  std::vector<VertexSet> comps = g.component_masks(mask);
  std::vector<bool> claimed(comps.size(), false);
  for (const ElimTreeNode& node : forest) {
    bool placed = false;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if ((comps[i] & vertex_bit(node.vertex)) == 0) continue;
      if (claimed[i]) return false;
      claimed[i] = true;
      placed = true;
      if (!replay_elimination_mask(g, cls, comps[i] & ~vertex_bit(node.vertex), node.children,
                                   node_budget))
        return false;
      break;
    }
    if (!placed) return false;
  }
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!claimed[i] && !cls.contains(g.induced_subgraph(comps[i]), node_budget)) return false;
  return true;
}

}  // namespace detail

// Witness replay: every leaf of the elimination forest must reach a member.
inline bool replay_elimination(const Graph& g, const ClassSpec& cls, const ElimForest& forest,
                               std::uint64_t node_budget = kDefaultNodeBudget) {
  return detail::replay_elimination_mask(g, cls, g.vertices(), forest, node_budget);
}

}  // namespace elimdist
