#include <catch2/catch.hpp>

#include "elimdist/distances.hpp"
#include "elimdist/enumerate.hpp"
#include "elimdist/eval.hpp"
#include "elimdist/fo_builders.hpp"
#include "elimdist/formula.hpp"
#include "elimdist/oracles.hpp"

using namespace elimdist;
using namespace elimdist::fo;

namespace {

FormulaPtr edgeless_sentence() {
  return forall("u", forall("v", negation(edge("u", "v"))));
}

FormulaPtr some_edge_sentence() { return exists("u", exists("v", edge("u", "v"))); }

// Subgraph induced by the vertices satisfying the unary guard.
Graph induced_by_guard(const Graph& g, const FormulaPtr& psi, const std::string& x) {
  VertexSet keep = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (evaluate(psi, g, {{x, v}})) keep |= vertex_bit(v);
  return g.induced_subgraph(keep);
}

}  // namespace

TEST_CASE("formula text round trips") {
  std::vector<std::string> texts = {
      "(E x y)",
      "(= x y)",
      "(C 1 x)",
      "(dist u v 4)",
      "(dist u v 4 :guard (z (not (= z w))))",
      "(not (exists v (= v v)))",
      "(and (E x y) (or (= x y) (not (E y x))))",
      "(implies (E x y) (E y x))",
      "(forall x (exists y (E x y)))",
  };
  for (const std::string& text : texts) CHECK(to_text(parse_formula(text)) == text);
  FormulaPtr td2 = treedepth_formula(2);
  CHECK(structurally_equal(parse_formula(to_text(td2)), td2));
  CHECK(to_text(parse_formula(to_text(td2))) == to_text(td2));
}

TEST_CASE("formula parser reports malformed input") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("(E x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(frobnicate x y)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(E x y) junk"), ParseError);
  CHECK_THROWS_AS(parse_formula("(dist u v -1)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(exists 3 (= x x))"), ParseError);
}

TEST_CASE("n-ary and/or fold to the right") {
  CHECK(to_text(parse_formula("(and (= x x) (= y y) (= z z))")) ==
        "(and (= x x) (and (= y y) (= z z)))");
}

TEST_CASE("free variables and sentences") {
  CHECK(free_variables(parse_formula("(exists v (E v w))")) == std::set<std::string>{"w"});
  CHECK(free_variables(parse_formula("(dist u v 2 :guard (z (not (= z w))))")) ==
        std::set<std::string>{"u", "v", "w"});
  CHECK(is_sentence(edgeless_sentence()));
  CHECK_FALSE(is_sentence(parse_formula("(E x y)")));
}

TEST_CASE("quantifier rank counts nesting and ignores dist atoms") {
  CHECK(quantifier_rank(parse_formula("(E x y)")) == 0);
  CHECK(quantifier_rank(parse_formula("(exists x (exists y (E x y)))")) == 2);
  CHECK(quantifier_rank(parse_formula("(or (exists x (E x y)) (exists z (E z y)))")) == 1);
  CHECK(quantifier_rank(parse_formula("(dist u v 9 :guard (z (exists q (E z q))))")) == 0);
}

TEST_CASE("evaluation of the basic examples") {
  FormulaPtr phi0 = negation(exists("v", equal("v", "v")));
  CHECK(evaluate(phi0, Graph(0)));
  CHECK_FALSE(evaluate(phi0, Graph::complete(1)));
  CHECK(evaluate(exists("v", equal("v", "v")), Graph::complete(1)));
  CHECK(evaluate(edgeless_sentence(), Graph::empty(3)));
  CHECK_FALSE(evaluate(edgeless_sentence(), Graph::complete(2)));
}

TEST_CASE("evaluation of distance atoms") {
  Graph p3 = Graph::path(3);
  CHECK(evaluate(dist("u", "v", 2), p3, {{"u", 0}, {"v", 2}}));
  CHECK_FALSE(evaluate(dist("u", "v", 1), p3, {{"u", 0}, {"v", 2}}));
  CHECK(evaluate(dist("u", "v", 0), p3, {{"u", 1}, {"v", 1}}));
  FormulaPtr guarded = dist("u", "v", 2, Guard{"z", negation(equal("z", "w"))});
  CHECK_FALSE(evaluate(guarded, p3, {{"u", 0}, {"v", 2}, {"w", 1}}));
  CHECK(evaluate(guarded, p3, {{"u", 0}, {"v", 2}, {"w", 0}}) == false);  // endpoint excluded
  CHECK(evaluate(guarded, Graph::complete(3), {{"u", 0}, {"v", 2}, {"w", 1}}));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(evaluate(edge("x", "y"), Graph::complete(2), {{"x", 0}}),
                  std::invalid_argument);
  Graph g(2, 1);
  g.set_colour(0, 0);
  CHECK(evaluate(colour(0, "x"), g, {{"x", 0}}));
  CHECK_FALSE(evaluate(colour(0, "x"), g, {{"x", 1}}));
  CHECK_THROWS_AS(evaluate(colour(1, "x"), g, {{"x", 0}}), std::out_of_range);
}

TEST_CASE("evaluation is isomorphism invariant") {
  std::vector<FormulaPtr> sentences = {
      edgeless_sentence(), some_edge_sentence(), treedepth_formula(1),
      exists("x", forall("y", disjunction(equal("x", "y"), edge("x", "y")))),
      forall("u", forall("v", dist("u", "v", 2)))};
  for (const FormulaPtr& phi : sentences)
    for (const Graph& g : enumerate_graphs(4)) {
      Graph relabelled(g.vertex_count());
      int n = g.vertex_count();
      for (auto [u, v] : g.edges()) relabelled.add_edge(n - 1 - u, n - 1 - v);
      CHECK(evaluate(phi, g) == evaluate(phi, relabelled));
    }
}

TEST_CASE("relativisation on the worked example") {
  FormulaPtr phi = exists("v", equal("v", "v"));
  FormulaPtr psi = negation(equal("x", "w"));
  FormulaPtr rel = relativise(phi, psi, "x");
  CHECK(to_text(rel) == "(exists v (and (not (= v w)) (= v v)))");
  CHECK_FALSE(evaluate(rel, Graph::complete(1), {{"w", 0}}));
  CHECK(evaluate(rel, Graph::complete(2), {{"w", 0}}));
  CHECK_THROWS_AS(relativise(phi, equal("a", "b"), "x"), std::invalid_argument);
}

TEST_CASE("relativising by a tautology changes nothing") {
  FormulaPtr top = equal("x", "x");
  std::vector<FormulaPtr> sentences = {edgeless_sentence(), some_edge_sentence(),
                                       forall("u", forall("v", dist("u", "v", 2)))};
  for (const FormulaPtr& phi : sentences)
    for (const Graph& g : enumerate_graphs_up_to(4))
      CHECK(evaluate(relativise(phi, top, "x"), g) == evaluate(phi, g));
}

TEST_CASE("relativised distance atoms measure inside the restriction") {
  FormulaPtr phi = dist("u", "v", 2);
  FormulaPtr rel = relativise(phi, negation(equal("x", "w")), "x");
  Graph p3 = Graph::path(3);
  CHECK_FALSE(evaluate(rel, p3, {{"u", 0}, {"v", 2}, {"w", 1}}));
  CHECK(evaluate(rel, p3, {{"u", 0}, {"v", 1}, {"w", 2}}));
}

TEST_CASE("relativisation equals evaluation on the induced subgraph") {
  std::vector<FormulaPtr> sentences = {
      edgeless_sentence(),
      some_edge_sentence(),
      exists("a", forall("b", disjunction(equal("a", "b"), edge("a", "b")))),
      forall("u", forall("v", dist("u", "v", 2))),
      exists("u", exists("v", conjunction(dist("u", "v", 2), negation(edge("u", "v"))))),
      treedepth_formula(1),
  };
  std::vector<FormulaPtr> guards = {
      exists("y", edge("x", "y")),
      negation(exists("y", edge("x", "y"))),
      equal("x", "x"),
  };
  for (const FormulaPtr& phi : sentences)
    for (const FormulaPtr& psi : guards)
      for (const Graph& g : enumerate_graphs_up_to(4))
        CHECK(evaluate(relativise(phi, psi, "x"), g) ==
              evaluate(phi, induced_by_guard(g, psi, "x")));
}

TEST_CASE("nested relativisation stays faithful to induced subgraphs") {
  // First relativise to non-isolated vertices, then evaluate the result
  // restricted away from each single vertex; compare against doing both
  // restrictions on the graph itself.
  FormulaPtr phi = forall("u", forall("v", dist("u", "v", 2)));
  FormulaPtr psi1 = exists("y", edge("x", "y"));
  FormulaPtr rel1 = relativise(phi, psi1, "x");
  FormulaPtr rel2 = relativise(rel1, negation(equal("x", "w")), "x");
  for (const Graph& g : enumerate_graphs_up_to(4)) {
    for (int w = 0; w < g.vertex_count(); ++w) {
      Graph minus = g.without_vertex(w);
      Graph expected = induced_by_guard(minus, psi1, "x");
      CHECK(evaluate(rel2, g, {{"w", w}}) == evaluate(phi, expected));
    }
  }
}

TEST_CASE("distance expansion base cases") {
  CHECK(to_text(expand_distance_atoms(dist("u", "v", 1))) == "(or (= u v) (E u v))");
  CHECK(to_text(expand_distance_atoms(dist("u", "v", 0))) == "(= u v)");
  CHECK(quantifier_rank(expand_distance_atoms(dist("u", "v", 4))) == 2);
  CHECK(quantifier_rank(expand_distance_atoms(dist("u", "v", 3))) == 2);
}

TEST_CASE("distance expansion agrees with the atom semantics") {
  std::vector<FormulaPtr> pool = {
      dist("u", "v", 1),
      dist("u", "v", 2),
      dist("u", "v", 3),
      dist("u", "v", 4),
      dist("u", "v", 2, Guard{"z", negation(equal("z", "w"))}),
      conjunction(dist("u", "v", 2), negation(edge("u", "v"))),
  };
  for (const FormulaPtr& phi : pool) {
    FormulaPtr expanded = expand_distance_atoms(phi);
    std::set<std::string> free = free_variables(phi);
    CHECK(free_variables(expanded) == free);
    for (const Graph& g : enumerate_graphs_up_to(4)) {
      int n = g.vertex_count();
      if (n == 0) continue;  // free variables need vertices to range over
      std::vector<std::string> vars(free.begin(), free.end());
      std::vector<int> values(vars.size(), 0);
      for (;;) {
        Assignment env;
        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = values[i];
        CHECK(evaluate(phi, g, env) == evaluate(expanded, g, env));
        std::size_t i = 0;
        while (i < values.size() && ++values[i] == n) values[i++] = 0;
        if (i == values.size()) break;
      }
    }
  }
}

TEST_CASE("tree depth formulas match the solver") {
  for (int k = 0; k <= 2; ++k) {
    FormulaPtr phi = treedepth_formula(k);
    for (const Graph& g : enumerate_graphs_up_to(5))
      CHECK(evaluate(phi, g) == (*tree_depth(g).value <= k));
  }
}

TEST_CASE("tree depth formula pinned cases") {
  CHECK(evaluate(treedepth_formula(0), Graph(0)));
  CHECK_FALSE(evaluate(treedepth_formula(0), Graph::complete(1)));
  CHECK(evaluate(treedepth_formula(2), Graph::path(3)));
  CHECK_FALSE(evaluate(treedepth_formula(2), Graph::path(4)));
}

TEST_CASE("deletion formulas express bounded vertex deletion") {
  FormulaPtr edgeless = edgeless_sentence();
  CHECK(structurally_equal(deletion_formula(edgeless, 0), edgeless));
  FormulaPtr one = deletion_formula(edgeless, 1);
  CHECK(evaluate(one, Graph::star(3)));
  CHECK_FALSE(evaluate(one, Graph::complete(3)));
  CHECK_THROWS_AS(deletion_formula(edge("x", "y"), 1), std::invalid_argument);
}

TEST_CASE("deletion formulas agree with the deletion distance solver") {
  ClassSpec cls = ClassSpec::edgeless();
  for (int k = 0; k <= 2; ++k) {
    FormulaPtr phi = deletion_formula(edgeless_sentence(), k);
    for (const Graph& g : enumerate_graphs_up_to(5))
      CHECK(evaluate(phi, g) == (*deletion_distance(g, cls).value <= k));
  }
}

TEST_CASE("edge edit formulas on the worked examples") {
  FormulaPtr edgeless = edgeless_sentence();
  CHECK(structurally_equal(edge_edit_formula(edgeless, 0, 0), edgeless));
  CHECK(evaluate(edge_edit_formula(edgeless, 0, 1), Graph::complete(2)));
  CHECK_FALSE(evaluate(edge_edit_formula(edgeless, 0, 1), Graph::complete(3)));
  CHECK(evaluate(edge_edit_formula(some_edge_sentence(), 1, 0), Graph::empty(2)));
  CHECK_FALSE(evaluate(edge_edit_formula(some_edge_sentence(), 1, 0), Graph::complete(1)));
}

TEST_CASE("edge edit budgets are upper bounds") {
  FormulaPtr edgeless = edgeless_sentence();
  CHECK(evaluate(edge_edit_formula(edgeless, 1, 0), Graph::complete(1)));
  CHECK(evaluate(edge_edit_formula(edgeless, 1, 1), Graph(0)));
  CHECK(evaluate(edge_edit_formula(edgeless, 2, 2), Graph::empty(3)));
}

TEST_CASE("edge edit formulas agree with the exhaustive searcher") {
  // Each edit pair adds two quantified variables, so evaluation is
  // exponential in the budget; the full grid runs on tiny graphs and the
  // heaviest corner is spot checked.
  std::vector<std::pair<FormulaPtr, ClassSpec>> classes;
  classes.emplace_back(edgeless_sentence(), ClassSpec::edgeless());
  classes.emplace_back(some_edge_sentence(),
                       ClassSpec::fo_sentence(some_edge_sentence(), "has-edge"));
  for (auto& [phi, cls] : classes)
    for (int additions = 0; additions <= 2; ++additions)
      for (int deletions = 0; deletions <= 2; ++deletions) {
        FormulaPtr edited = edge_edit_formula(phi, additions, deletions);
        bool small_budget = additions + deletions <= 2;
        for (const Graph& g : enumerate_graphs_up_to(small_budget ? 4 : 3)) {
          bool reachable = edit_distance(g, cls, {0, deletions, additions}).has_value();
          CHECK(evaluate(edited, g) == reachable);
        }
      }
  FormulaPtr heavy = edge_edit_formula(edgeless_sentence(), 2, 2);
  ClassSpec edgeless = ClassSpec::edgeless();
  for (const Graph& g : {Graph::cycle(4), Graph::complete(4), Graph::path(5), Graph::star(4)})
    CHECK(evaluate(heavy, g) == edit_distance(g, edgeless, {0, 2, 2}).has_value());
}

TEST_CASE("substitution avoids capture") {
  // Substituting w for x under a binder named w must rename the binder.
  FormulaPtr phi = exists("w", conjunction(edge("w", "x"), equal("w", "w")));
  FormulaPtr replaced = substitute(phi, "x", "w");
  CHECK(free_variables(replaced) == std::set<std::string>{"w"});
  Graph p3 = Graph::path(3);
  // After substitution the sentence says: some vertex adjacent to w.
  CHECK(evaluate(replaced, p3, {{"w", 1}}));
  CHECK(evaluate(replaced, Graph::empty(2), {{"w", 0}}) == false);
}
