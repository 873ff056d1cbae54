#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "elimdist/distances.hpp"
#include "elimdist/enumerate.hpp"
#include "elimdist/eval.hpp"
#include "elimdist/fo_builders.hpp"
#include "elimdist/graph_io.hpp"
#include "elimdist/obstruction.hpp"
#include "elimdist/oracles.hpp"

// Named oracle-equivalence and property suites over the small-graph corpus.
// Each suite checks one law exhaustively at its default bounds and reports
// the first counterexample on failure.
namespace elimdist::suites {

struct SuiteParams {
  int n_max = -1;  // -1 picks the suite's default bound
  int k_max = -1;
  int r_max = -1;
  std::uint64_t seed = 0;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct SuiteResult {
  std::string name{};
  bool pass = true;
  long checked = 0;
  std::string counterexample{};  // graph6 of the first failure, with context
  std::string detail{};
};

namespace detail {

inline void fail(SuiteResult& result, const Graph& g, const std::string& context) {
  if (!result.pass) return;
  result.pass = false;
  result.counterexample = write_graph6(g) + (context.empty() ? "" : " (" + context + ")");
}

inline int bound(int requested, int fallback) { return requested < 0 ? fallback : requested; }

}  // namespace detail

// Tree-depth equals elimination distance to the class of empty graphs.
inline SuiteResult suite_td_elim(const SuiteParams& p) {
  SuiteResult result{.name = "td-elim"};
  int n_max = detail::bound(p.n_max, 7);
  ClassSpec empty = ClassSpec::empty_graphs();
  long pool = 0;
  for (int n = 0; n <= n_max; ++n)
    for (const Graph& g : enumerate_graphs(n)) {
      ++pool;
      DistanceResult td = tree_depth(g, -1, p.node_budget);
      DistanceResult ed = elimination_distance(g, empty, -1, p.node_budget);
      ++result.checked;
      if (td.value != ed.value)
        detail::fail(result, g,
                     "tree_depth=" + std::to_string(td.value.value_or(-1)) +
                         " elimination=" + std::to_string(ed.value.value_or(-1)));
    }
  if (n_max == 7 && pool != 1253) {
    result.pass = false;
    result.detail = "expected 1253 graphs up to 7 vertices, enumerated " + std::to_string(pool);
  } else {
    result.detail = std::to_string(pool) + " graphs compared";
  }
  return result;
}

// Tower membership C_k coincides with elimination distance at most k, for
// the forest and edgeless bases.
inline SuiteResult suite_char_ck(const SuiteParams& p) {
  SuiteResult result{.name = "char-ck"};
  int n_max = detail::bound(p.n_max, 6);
  int k_max = detail::bound(p.k_max, 2);
  std::vector<ObstructionSet> bases;
  bases.push_back(ObstructionSet::from_graphs({Graph::complete(3)}, p.node_budget));
  bases.push_back(ObstructionSet::from_graphs({Graph::complete(2)}, p.node_budget));
  for (const ObstructionSet& base : bases) {
    ClassSpec cls = ClassSpec::excluded_minors(base);
    std::string base_name = base.members[0].vertex_count() == 3 ? "K3" : "K2";
    for (const Graph& g : enumerate_graphs_up_to(n_max)) {
      int ed = *elimination_distance(g, cls, -1, p.node_budget).value;
      for (int k = 0; k <= k_max; ++k) {
        ++result.checked;
        bool in_tower = ck_membership(g, {base, k}, p.node_budget);
        if (in_tower != (ed <= k))
          detail::fail(result, g,
                       "base=" + base_name + " k=" + std::to_string(k) +
                           " ed=" + std::to_string(ed));
      }
    }
  }
  result.detail = std::to_string(result.checked) + " membership comparisons";
  return result;
}

// treedepth_formula(k) holds exactly on the graphs of tree-depth at most k.
inline SuiteResult suite_td_formula(const SuiteParams& p) {
  SuiteResult result{.name = "td-formula"};
  int n_max = detail::bound(p.n_max, 6);
  int k_max = detail::bound(p.k_max, 3);
  for (int k = 0; k <= k_max; ++k) {
    fo::FormulaPtr phi = fo::treedepth_formula(k);
    for (const Graph& g : enumerate_graphs_up_to(n_max)) {
      ++result.checked;
      bool by_formula = fo::evaluate(phi, g);
      bool by_solver = *tree_depth(g, -1, p.node_budget).value <= k;
      if (by_formula != by_solver)
        detail::fail(result, g, "k=" + std::to_string(k));
    }
  }
  result.detail = std::to_string(result.checked) + " formula evaluations";
  return result;
}

// deletion_formula(edgeless, k) holds iff the vertex cover number is at most k.
inline SuiteResult suite_del_formula(const SuiteParams& p) {
  SuiteResult result{.name = "del-formula"};
  int n_max = detail::bound(p.n_max, 6);
  int k_max = detail::bound(p.k_max, 3);
  fo::FormulaPtr edgeless =
      fo::forall("u", fo::forall("v", fo::negation(fo::edge("u", "v"))));
  for (int k = 0; k <= k_max; ++k) {
    fo::FormulaPtr phi = fo::deletion_formula(edgeless, k);
    for (const Graph& g : enumerate_graphs_up_to(n_max)) {
      ++result.checked;
      bool by_formula = fo::evaluate(phi, g);
      bool by_cover = oracle::vertex_cover_number(g) <= k;
      if (by_formula != by_cover)
        detail::fail(result, g, "k=" + std::to_string(k));
    }
  }
  result.detail = std::to_string(result.checked) + " formula evaluations";
  return result;
}

// union_closure_obstructions({2K_1}) = {K_2}, and the closed sets
// characterise componentwise membership.
inline SuiteResult suite_union_closure(const SuiteParams& p) {
  SuiteResult result{.name = "union-closure"};
  int n_max = detail::bound(p.n_max, 6);
  ObstructionSet two_k1 = ObstructionSet::from_graphs({Graph::empty(2)}, p.node_budget);
  ObstructionSet pinned = union_closure_obstructions(two_k1, p.node_budget);
  ++result.checked;
  if (pinned.members.size() != 1 || !is_isomorphic(pinned.members[0], Graph::complete(2))) {
    result.pass = false;
    result.detail = "union closure of {2K_1} is not {K_2}";
    return result;
  }
  std::vector<ObstructionSet> bases;
  bases.push_back(std::move(two_k1));
  bases.push_back(ObstructionSet::from_graphs(
      {Graph::disjoint_union(Graph::complete(3), Graph::complete(1))}, p.node_budget));
  for (const ObstructionSet& m : bases) {
    ObstructionSet closed = union_closure_obstructions(m, p.node_budget);
    for (const Graph& g : enumerate_graphs_up_to(n_max)) {
      ++result.checked;
      bool whole = excludes(g, closed, p.node_budget);
      bool componentwise = true;
      for (VertexSet comp : g.component_masks())
        componentwise =
            componentwise && excludes(g.induced_subgraph(comp), m, p.node_budget);
      if (whole != componentwise) detail::fail(result, g, "");
    }
  }
  result.detail = std::to_string(result.checked) + " membership comparisons";
  return result;
}

// Every connection-closure member has exactly e + m - 1 edges.
inline SuiteResult suite_conn_closure(const SuiteParams& p) {
  SuiteResult result{.name = "conn-closure"};
  int n_max = detail::bound(p.n_max, 6);
  for (int n = 1; n <= n_max; ++n)
    for (const Graph& g : enumerate_graphs(n)) {
      int m = static_cast<int>(g.component_masks().size());
      for (const Graph& h : connection_closure(g)) {
        ++result.checked;
        if (h.edge_count() != g.edge_count() + m - 1 || !h.connected())
          detail::fail(result, g, "closure member " + write_graph6(h));
      }
    }
  result.detail = std::to_string(result.checked) + " closure members inspected";
  return result;
}

// Bounded enumeration against the tree-depth <= 2 oracle finds {K_3, P_4},
// and that pair really characterises tree-depth <= 2 on larger graphs.
inline SuiteResult suite_enum_obstructions(const SuiteParams& p) {
  SuiteResult result{.name = "enum-obstructions"};
  int n_max = detail::bound(p.n_max, 5);
  auto td2 = [&](const Graph& g) { return *tree_depth(g, -1, p.node_budget).value <= 2; };
  PartialObstructionSet found = enumerate_obstructions(td2, n_max);
  ++result.checked;
  if (found.set.members.size() != 2 ||
      !is_isomorphic(found.set.members[0], Graph::complete(3)) ||
      !is_isomorphic(found.set.members[1], Graph::path(4))) {
    result.pass = false;
    result.detail = "enumerated obstructions differ from {K_3, P_4}";
    return result;
  }
  ObstructionSet ground =
      ObstructionSet::from_graphs({Graph::complete(3), Graph::path(4)}, p.node_budget);
  for (const Graph& g : enumerate_graphs_up_to(std::max(n_max, 6))) {
    ++result.checked;
    if (td2(g) != excludes(g, ground, p.node_budget))
      detail::fail(result, g, "ground truth mismatch");
  }
  result.detail = std::to_string(result.checked) + " checks";
  return result;
}

// If K_m is not a depth-r minor of G minus S, then K_{m+|S|} is not a
// depth-r minor of G.
inline SuiteResult suite_depth_minor_deletion(const SuiteParams& p) {
  SuiteResult result{.name = "depth-minor-deletion"};
  int n_max = detail::bound(p.n_max, 6);
  int r_max = detail::bound(p.r_max, 2);
  int s_max = 2, m_max = detail::bound(p.k_max, 3);
  for (const Graph& g : enumerate_graphs_up_to(n_max)) {
    VertexSet last = g.vertices();
    for (VertexSet s = 0;; ++s) {
      int size = set_size(s);
      if (size <= s_max) {
        Graph rest = g.induced_subgraph(g.vertices() & ~s);
        for (int r = 0; r <= r_max; ++r)
          for (int m = 1; m <= m_max; ++m) {
            ++result.checked;
            bool small_there =
                find_depth_minor(Graph::complete(m), rest, r, p.node_budget).has_value();
            if (small_there) continue;
            bool big_here =
                find_depth_minor(Graph::complete(m + size), g, r, p.node_budget).has_value();
            if (big_here)
              detail::fail(result, g,
                           "S=" + std::to_string(s) + " r=" + std::to_string(r) +
                               " m=" + std::to_string(m));
          }
      }
      if (s == last) break;
    }
  }
  result.detail = std::to_string(result.checked) + " stability checks";
  return result;
}

// Relativised evaluation equals evaluation on the induced subgraph, over a
// pool of sentences and unary guards.
inline SuiteResult suite_relativisation(const SuiteParams& p) {
  SuiteResult result{.name = "relativisation"};
  int n_max = detail::bound(p.n_max, 5);
  using namespace fo;
  std::vector<FormulaPtr> sentences = {
      forall("u", forall("v", negation(edge("u", "v")))),
      exists("u", exists("v", edge("u", "v"))),
      exists("a", forall("b", disjunction(equal("a", "b"), edge("a", "b")))),
      forall("a", exists("b", edge("a", "b"))),
      exists("a", exists("b", conjunction(negation(equal("a", "b")), negation(edge("a", "b"))))),
      forall("u", forall("v", dist("u", "v", 2))),
      exists("u", exists("v", conjunction(dist("u", "v", 2), negation(edge("u", "v"))))),
      forall("u", forall("v", implication(dist("u", "v", 3), dist("u", "v", 2)))),
      negation(exists("v", equal("v", "v"))),
      exists("a", exists("b", exists("c", conjunction(edge("a", "b"),
                                                      conjunction(edge("b", "c"), edge("a", "c")))))),
      treedepth_formula(1),
  };
  std::vector<FormulaPtr> guards = {
      exists("y", edge("x", "y")),
      negation(exists("y", edge("x", "y"))),
      equal("x", "x"),
      exists("y", exists("z", conjunction(negation(equal("y", "z")),
                                          conjunction(edge("x", "y"), edge("x", "z"))))),
  };
  for (const FormulaPtr& phi : sentences)
    for (const FormulaPtr& psi : guards) {
      FormulaPtr rel = relativise(phi, psi, "x");
      for (const Graph& g : enumerate_graphs_up_to(n_max)) {
        VertexSet keep = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
          if (evaluate(psi, g, {{"x", v}})) keep |= vertex_bit(v);
        ++result.checked;
        if (evaluate(rel, g) != evaluate(phi, g.induced_subgraph(keep)))
          detail::fail(result, g, "sentence/guard pair");
      }
    }
  result.detail = std::to_string(result.checked) + " relativised evaluations";
  return result;
}

// The distance-independent-set solver agrees with subset enumeration.
inline SuiteResult suite_dis(const SuiteParams& p) {
  SuiteResult result{.name = "dis"};
  int n_max = detail::bound(p.n_max, 6);
  int k_max = detail::bound(p.k_max, 3);
  int r_max = detail::bound(p.r_max, 4);
  for (const Graph& g : enumerate_graphs_up_to(n_max))
    for (int k = 0; k <= k_max; ++k)
      for (int r = 0; r <= r_max; ++r) {
        ++result.checked;
        auto solved = distance_independent_set(g, k, r);
        auto enumerated = oracle::distance_independent_set_by_enumeration(g, k, r);
        if (solved.has_value() != enumerated.has_value()) {
          detail::fail(result, g, "k=" + std::to_string(k) + " r=" + std::to_string(r));
          continue;
        }
        if (solved) {
          bool valid = static_cast<int>(solved->size()) == k;
          for (std::size_t i = 0; i < solved->size() && valid; ++i)
            for (std::size_t j = i + 1; j < solved->size() && valid; ++j) {
              auto d = g.bfs_distance((*solved)[i], (*solved)[j]);
              if (d && *d < r) valid = false;
            }
          if (!valid)
            detail::fail(result, g, "invalid witness k=" + std::to_string(k) +
                                        " r=" + std::to_string(r));
        }
      }
  result.detail = std::to_string(result.checked) + " solver comparisons";
  return result;
}

// Seeded sampling of the minor-relation laws: reflexivity, transitivity,
// radius monotonicity and saturation, subgraphs as depth-0 minors.
inline SuiteResult suite_minor_props(const SuiteParams& p) {
  SuiteResult result{.name = "minor-props"};
  int n_max = detail::bound(p.n_max, 5);
  std::vector<Graph> pool = enumerate_graphs_up_to(n_max);
  std::mt19937 rng(static_cast<std::mt19937::result_type>(p.seed));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (const Graph& g : pool) {
    ++result.checked;
    if (!find_minor(g, g, p.node_budget)) detail::fail(result, g, "reflexivity");
  }
  for (int trial = 0; trial < 200; ++trial) {
    const Graph& a = pool[pick(rng)];
    const Graph& b = pool[pick(rng)];
    const Graph& c = pool[pick(rng)];
    ++result.checked;
    if (find_minor(a, b, p.node_budget) && find_minor(b, c, p.node_budget) &&
        !find_minor(a, c, p.node_budget))
      detail::fail(result, c, "transitivity");
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Graph& h = pool[pick(rng)];
    const Graph& g = pool[pick(rng)];
    for (int r = 0; r <= 2; ++r) {
      ++result.checked;
      if (find_depth_minor(h, g, r, p.node_budget) &&
          !find_depth_minor(h, g, r + 1, p.node_budget))
        detail::fail(result, g, "radius monotonicity");
    }
    ++result.checked;
    if (find_depth_minor(h, g, g.vertex_count(), p.node_budget).has_value() !=
        find_minor(h, g, p.node_budget).has_value())
      detail::fail(result, g, "saturation");
    ++result.checked;
    if (find_depth_minor(h, g, 0, p.node_budget).has_value() !=
        oracle::subgraph_embeddable(h, g))
      detail::fail(result, g, "depth-0 vs subgraph");
  }
  result.detail = std::to_string(result.checked) + " sampled checks";
  return result;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "td-elim",      "char-ck",           "td-formula",          "del-formula",
      "union-closure", "conn-closure",     "enum-obstructions",   "depth-minor-deletion",
      "relativisation", "dis",             "minor-props",
  };
  return names;
}

inline SuiteResult run_suite(const std::string& name, const SuiteParams& p) {
  if (name == "td-elim") return suite_td_elim(p);
  if (name == "char-ck") return suite_char_ck(p);
  if (name == "td-formula") return suite_td_formula(p);
  if (name == "del-formula") return suite_del_formula(p);
  if (name == "union-closure") return suite_union_closure(p);
  if (name == "conn-closure") return suite_conn_closure(p);
  if (name == "enum-obstructions") return suite_enum_obstructions(p);
  if (name == "depth-minor-deletion") return suite_depth_minor_deletion(p);
  if (name == "relativisation") return suite_relativisation(p);
  if (name == "dis") return suite_dis(p);
  if (name == "minor-props") return suite_minor_props(p);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace elimdist::suites
