#include <catch2/catch.hpp>
#include <random>

#include "elimdist/distances.hpp"
#include "elimdist/enumerate.hpp"
#include "elimdist/oracles.hpp"

using namespace elimdist;

namespace {

ClassSpec forests() {
  return ClassSpec::excluded_minors(ObstructionSet::from_graphs({Graph::complete(3)}),
                                    "forests");
}

}  // namespace

TEST_CASE("tree depth of the worked examples") {
  CHECK(tree_depth(Graph(0)).value == 0);
  CHECK(tree_depth(Graph::complete(1)).value == 1);
  CHECK(tree_depth(Graph::path(3)).value == 2);
  CHECK(tree_depth(Graph::path(4)).value == 3);
  CHECK(tree_depth(Graph::complete(4)).value == 4);
  CHECK(tree_depth(Graph::empty(5)).value == 1);
}

TEST_CASE("tree depth matches the definitional recursion") {
  std::vector<Graph> pool = enumerate_graphs_up_to(5);
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph& g = pool[pick(rng)];
    CHECK(tree_depth(g).value == oracle::tree_depth_by_definition(g));
  }
}

TEST_CASE("tree depth respects its cap") {
  CHECK(tree_depth(Graph::path(4), 2).exceeds_cap());
  CHECK(tree_depth(Graph::path(4), 3).value == 3);
  CHECK_FALSE(tree_depth(Graph(0), 0).exceeds_cap());
}

TEST_CASE("tree depth witnesses replay") {
  ClassSpec empty = ClassSpec::oracle([](const Graph& g) { return g.vertex_count() == 0; });
  for (const Graph& g : enumerate_graphs_up_to(5)) {
    DistanceResult result = tree_depth(g);
    REQUIRE(result.elimination.has_value());
    CHECK(elimination_forest_depth(*result.elimination) == *result.value);
    CHECK(replay_elimination(g, empty, *result.elimination));
  }
}

TEST_CASE("elimination distance of the worked examples") {
  ClassSpec cls = forests();
  CHECK(elimination_distance(Graph::path(4), cls).value == 0);
  Graph two_triangles = Graph::disjoint_union(Graph::complete(3), Graph::complete(3));
  CHECK(elimination_distance(two_triangles, cls).value == 1);
  CHECK(elimination_distance(Graph::complete(4), cls, 1).exceeds_cap());
  CHECK(elimination_distance(Graph::complete(4), cls).value == 2);
}

TEST_CASE("elimination distance to the empty class is tree depth") {
  ClassSpec empty = ClassSpec::empty_graphs();
  for (const Graph& g : enumerate_graphs_up_to(5))
    CHECK(elimination_distance(g, empty).value == tree_depth(g).value);
}

TEST_CASE("elimination distance needs the null graph in the class") {
  ClassSpec has_edge = ClassSpec::fo_sentence(
      fo::exists("u", fo::exists("v", fo::edge("u", "v"))), "has-edge");
  CHECK_THROWS_AS(elimination_distance(Graph::complete(3), has_edge), std::invalid_argument);
}

TEST_CASE("elimination witnesses replay") {
  ClassSpec cls = forests();
  for (const Graph& g : enumerate_graphs(5)) {
    DistanceResult result = elimination_distance(g, cls);
    REQUIRE(result.value.has_value());
    REQUIRE(result.elimination.has_value());
    CHECK(elimination_forest_depth(*result.elimination) == *result.value);
    CHECK(replay_elimination(g, cls, *result.elimination));
  }
}

TEST_CASE("elimination distance is at most deletion distance on connected graphs") {
  ClassSpec cls = forests();
  for (const Graph& g : enumerate_graphs(5, true))
    CHECK(*elimination_distance(g, cls).value <= *deletion_distance(g, cls).value);
}

TEST_CASE("deletion distance of the worked examples") {
  ClassSpec cls = ClassSpec::edgeless();
  DistanceResult k3 = deletion_distance(Graph::complete(3), cls);
  CHECK(k3.value == 2);
  CHECK(replay_deletion(Graph::complete(3), cls, *k3.deleted));

  DistanceResult star = deletion_distance(Graph::star(3), cls);
  CHECK(star.value == 1);
  CHECK(star.deleted == std::vector<int>{0});

  DistanceResult member = deletion_distance(Graph::empty(3), cls);
  CHECK(member.value == 0);
  CHECK(member.deleted == std::vector<int>{});

  CHECK(deletion_distance(Graph::complete(4), cls, 2).exceeds_cap());
}

TEST_CASE("deletion distance equals the vertex cover number for the edgeless class") {
  ClassSpec cls = ClassSpec::edgeless();
  for (const Graph& g : enumerate_graphs_up_to(5))
    CHECK(deletion_distance(g, cls).value == oracle::vertex_cover_number(g));
}

TEST_CASE("edit plans on the worked examples") {
  ClassSpec edgeless = ClassSpec::edgeless();
  auto plan = edit_distance(Graph::complete(2), edgeless, {0, 1, 0});
  REQUIRE(plan.has_value());
  CHECK(plan->delete_edges == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(edgeless.contains(apply_edit_plan(Graph::complete(2), *plan)));

  ClassSpec has_edge = ClassSpec::fo_sentence(
      fo::exists("u", fo::exists("v", fo::edge("u", "v"))), "has-edge");
  auto add = edit_distance(Graph::empty(2), has_edge, {0, 0, 1});
  REQUIRE(add.has_value());
  CHECK(add->add_edges == std::vector<std::pair<int, int>>{{0, 1}});

  auto noop = edit_distance(Graph::empty(3), edgeless, {2, 2, 2});
  REQUIRE(noop.has_value());
  CHECK(noop->delete_vertices.empty());
  CHECK(noop->delete_edges.empty());
  CHECK(noop->add_edges.empty());

  CHECK_FALSE(edit_distance(Graph::complete(4), edgeless, {1, 2, 2}).has_value());
  CHECK(edit_distance_total(Graph::complete(3), edgeless, 2).has_value());
}

TEST_CASE("edit plans replay to members") {
  ClassSpec cls = forests();
  for (const Graph& g : enumerate_graphs(4))
    if (auto plan = edit_distance(g, cls, {1, 1, 1}))
      CHECK(cls.contains(apply_edit_plan(g, *plan)));
}

TEST_CASE("distance independent sets on the worked examples") {
  auto p5 = distance_independent_set(Graph::path(5), 3, 2);
  REQUIRE(p5.has_value());
  CHECK(*p5 == std::vector<int>{0, 2, 4});
  CHECK(distance_independent_set(Graph::complete(3), 1, 5).has_value());
  CHECK_FALSE(distance_independent_set(Graph::complete(3), 2, 2).has_value());
  CHECK(distance_independent_set(Graph(0), 0, 3).has_value());
  CHECK_FALSE(distance_independent_set(Graph(0), 1, 1).has_value());
}

TEST_CASE("distance independent sets agree with plain enumeration") {
  for (const Graph& g : enumerate_graphs_up_to(5))
    for (int k = 0; k <= 3; ++k)
      for (int r = 0; r <= 4; ++r)
        CHECK(distance_independent_set(g, k, r).has_value() ==
              oracle::distance_independent_set_by_enumeration(g, k, r).has_value());
}

TEST_CASE("tree depth satisfies the defining recursion identities") {
  for (const Graph& g : enumerate_graphs(5)) {
    int value = *tree_depth(g).value;
    std::vector<VertexSet> comps = g.component_masks();
    if (comps.size() > 1) {
      int worst = 0;
      for (VertexSet c : comps)
        worst = std::max(worst, *tree_depth(g.induced_subgraph(c)).value);
      CHECK(value == worst);
    } else if (g.vertex_count() > 0) {
      int best = g.vertex_count();
      for (int v = 0; v < g.vertex_count(); ++v)
        best = std::min(best, *tree_depth(g.without_vertex(v)).value);
      CHECK(value == 1 + best);
    }
  }
}

TEST_CASE("adding an edge never lowers tree depth") {
  std::mt19937 rng(2);
  std::vector<Graph> pool = enumerate_graphs(5);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = pool[pick(rng)];
    int before = *tree_depth(g).value;
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = u + 1; v < g.vertex_count(); ++v) {
        if (g.has_edge(u, v)) continue;
        Graph more = g;
        more.add_edge(u, v);
        CHECK(*tree_depth(more).value >= before);
      }
  }
}
