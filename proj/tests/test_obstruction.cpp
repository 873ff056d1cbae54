#include <catch2/catch.hpp>

#include "elimdist/distances.hpp"
#include "elimdist/enumerate.hpp"
#include "elimdist/obstruction.hpp"
#include "elimdist/oracles.hpp"

using namespace elimdist;

namespace {

Graph two_k1() { return Graph::empty(2); }

Graph k3_plus_k1() { return Graph::disjoint_union(Graph::complete(3), Graph::complete(1)); }

Graph paw() {
  Graph g = Graph::complete(3);
  int v = g.add_vertex();
  g.add_edge(0, v);
  return g;
}

ObstructionSet set_of(std::vector<Graph> graphs) {
  return ObstructionSet::from_graphs(std::move(graphs));
}

bool every_component_excludes(const Graph& g, const ObstructionSet& m) {
  for (VertexSet comp : g.component_masks())
    if (!excludes(g.induced_subgraph(comp), m)) return false;
  return true;
}

}  // namespace

TEST_CASE("connection closure of the worked examples") {
  Graph c4 = Graph::cycle(4);
  std::vector<Graph> same = connection_closure(c4);
  REQUIRE(same.size() == 1);
  CHECK(same[0] == c4);

  std::vector<Graph> pair = connection_closure(two_k1());
  REQUIRE(pair.size() == 1);
  CHECK(is_isomorphic(pair[0], Graph::complete(2)));

  std::vector<Graph> kite = connection_closure(Graph::disjoint_union(Graph::complete(2), Graph::complete(1)));
  REQUIRE(kite.size() == 1);
  CHECK(is_isomorphic(kite[0], Graph::path(3)));

  CHECK_THROWS_AS(connection_closure(Graph(0)), std::invalid_argument);
}

TEST_CASE("connection closure members have exactly e+m-1 edges") {
  for (int n = 1; n <= 5; ++n)
    for (const Graph& g : enumerate_graphs(n)) {
      int m = static_cast<int>(g.component_masks().size());
      for (const Graph& h : connection_closure(g)) {
        CHECK(h.edge_count() == g.edge_count() + m - 1);
        CHECK(h.connected());
        CHECK(h.vertex_count() == g.vertex_count());
      }
    }
}

TEST_CASE("connection closure preserves induced components") {
  Graph g = Graph::disjoint_union(Graph::complete(3), Graph::path(3));
  std::vector<VertexSet> comps = g.component_masks();
  for (const Graph& h : connection_closure(g))
    for (VertexSet comp : comps) CHECK(h.induced_subgraph(comp) == g.induced_subgraph(comp));
}

TEST_CASE("union closure obstructions of the worked examples") {
  ObstructionSet k3 = union_closure_obstructions(set_of({Graph::complete(3)}));
  REQUIRE(k3.members.size() == 1);
  CHECK(is_isomorphic(k3.members[0], Graph::complete(3)));

  ObstructionSet pair = union_closure_obstructions(set_of({two_k1()}));
  REQUIRE(pair.members.size() == 1);
  CHECK(is_isomorphic(pair.members[0], Graph::complete(2)));

  ObstructionSet pendant = union_closure_obstructions(set_of({k3_plus_k1()}));
  REQUIRE(pendant.members.size() == 1);
  CHECK(is_isomorphic(pendant.members[0], paw()));

  CHECK(union_closure_obstructions(ObstructionSet{}).members.empty());
}

TEST_CASE("union closure obstructions characterise componentwise membership") {
  std::vector<ObstructionSet> bases;
  bases.push_back(set_of({two_k1()}));
  bases.push_back(set_of({k3_plus_k1()}));
  bases.push_back(set_of({Graph::complete(3)}));
  for (const ObstructionSet& m : bases) {
    ObstructionSet closed = union_closure_obstructions(m);
    for (const Graph& g : enumerate_graphs_up_to(5))
      CHECK(excludes(g, closed) == every_component_excludes(g, m));
  }
}

TEST_CASE("union closedness is connectivity of every member") {
  CHECK(is_union_closed(set_of({Graph::complete(3)})));
  CHECK_FALSE(is_union_closed(set_of({two_k1()})));
  CHECK(is_union_closed(ObstructionSet{}));
  CHECK_FALSE(is_union_closed(set_of({Graph::path(4), k3_plus_k1()})));
}

TEST_CASE("disjoint unions stay members when the obstructions are connected") {
  std::vector<ObstructionSet> bases;
  bases.push_back(set_of({Graph::complete(3)}));
  bases.push_back(set_of({Graph::path(4)}));
  bases.push_back(set_of({Graph::complete(2)}));
  std::vector<Graph> pool = enumerate_graphs_up_to(4);
  for (const ObstructionSet& m : bases)
    for (const Graph& g : pool)
      for (const Graph& h : pool) {
        if (!excludes(g, m) || !excludes(h, m)) continue;
        CHECK(excludes(Graph::disjoint_union(g, h), m));
      }
}

TEST_CASE("apex membership of the worked examples") {
  ObstructionSet forests = set_of({Graph::complete(3)});
  ApexResult c4 = apex_membership(Graph::cycle(4), forests);
  CHECK(c4.member);
  REQUIRE(c4.apex.has_value());
  CHECK(excludes(Graph::cycle(4).without_vertex(*c4.apex), forests));

  ApexResult k4 = apex_membership(Graph::complete(4), forests);
  CHECK_FALSE(k4.member);
  CHECK_FALSE(k4.apex.has_value());

  ApexResult k1 = apex_membership(Graph::complete(1), forests);
  CHECK(k1.member);
  CHECK(k1.apex == 0);

  ApexResult null = apex_membership(Graph(0), forests);
  CHECK(null.member);
  CHECK_FALSE(null.apex.has_value());
}

TEST_CASE("tower membership at level zero is plain exclusion") {
  ObstructionSet forests = set_of({Graph::complete(3)});
  for (const Graph& g : enumerate_graphs_up_to(5))
    CHECK(ck_membership(g, {forests, 0}) == excludes(g, forests));
}

TEST_CASE("tower membership on the worked examples") {
  ObstructionSet forests = set_of({Graph::complete(3)});
  Graph two_triangles = Graph::disjoint_union(Graph::complete(3), Graph::complete(3));
  CHECK(ck_membership(two_triangles, {forests, 1}));
  CHECK_FALSE(ck_membership(Graph::complete(4), {forests, 1}));
  CHECK(ck_membership(Graph::complete(4), {forests, 2}));
  CHECK(ck_membership(Graph(0), {forests, 0}));
  CHECK(ck_membership(Graph(0), {forests, 2}));
}

TEST_CASE("tower membership matches elimination distance") {
  std::vector<ObstructionSet> bases;
  bases.push_back(set_of({Graph::complete(3)}));
  bases.push_back(set_of({Graph::complete(2)}));
  for (const ObstructionSet& base : bases) {
    ClassSpec cls = ClassSpec::excluded_minors(base);
    for (const Graph& g : enumerate_graphs_up_to(5))
      for (int k = 0; k <= 2; ++k)
        CHECK(ck_membership(g, {base, k}) == (*elimination_distance(g, cls).value <= k));
  }
}

TEST_CASE("tower classes are minor closed, sampled") {
  ObstructionSet forests = set_of({Graph::complete(3)});
  for (const Graph& g : enumerate_graphs_up_to(5)) {
    if (!ck_membership(g, {forests, 1})) continue;
    for (const Graph& h : one_step_minors(g)) CHECK(ck_membership(h, {forests, 1}));
  }
}

TEST_CASE("bounded obstruction enumeration on the worked examples") {
  PartialObstructionSet edgeless = enumerate_obstructions(
      [](const Graph& g) { return g.edge_count() == 0; }, 3);
  REQUIRE(edgeless.set.members.size() == 1);
  CHECK(is_isomorphic(edgeless.set.members[0], Graph::complete(2)));
  CHECK(edgeless.partial_up_to == 3);

  PartialObstructionSet forests = enumerate_obstructions(
      [](const Graph& g) { return excludes(g, ObstructionSet{{Graph::complete(3)}}); }, 4);
  REQUIRE(forests.set.members.size() == 1);
  CHECK(is_isomorphic(forests.set.members[0], Graph::complete(3)));

  PartialObstructionSet td2 = enumerate_obstructions(
      [](const Graph& g) { return *tree_depth(g).value <= 2; }, 5);
  REQUIRE(td2.set.members.size() == 2);
  CHECK(is_isomorphic(td2.set.members[0], Graph::complete(3)));
  CHECK(is_isomorphic(td2.set.members[1], Graph::path(4)));
}

TEST_CASE("enumeration output is an antichain of minimal non-members") {
  auto membership = [](const Graph& g) { return *tree_depth(g).value <= 2; };
  PartialObstructionSet result = enumerate_obstructions(membership, 5);
  for (const Graph& h : result.set.members) {
    CHECK_FALSE(membership(h));
    for (const Graph& m : one_step_minors(h)) CHECK(membership(m));
  }
  CHECK_NOTHROW(ObstructionSet::from_graphs(result.set.members));
}

TEST_CASE("enumeration rejects predicates that are not minor closed") {
  CHECK_THROWS_AS(enumerate_obstructions(
                      [](const Graph& g) { return g.vertex_count() % 2 == 0; }, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_obstructions([](const Graph& g) { return g.vertex_count() > 0; }, 3),
                  std::invalid_argument);
}

TEST_CASE("tower obstructions: level zero passes the base through") {
  ObstructionSet base = set_of({Graph::complete(3)});
  PartialObstructionSet r = ck_obstructions({base, 0}, 5);
  REQUIRE(r.set.members.size() == 1);
  CHECK(is_isomorphic(r.set.members[0], Graph::complete(3)));
  CHECK_FALSE(r.partial_up_to.has_value());
}

TEST_CASE("tower obstructions of the edgeless base at level one") {
  ObstructionSet base = set_of({Graph::complete(2)});
  PartialObstructionSet r = ck_obstructions({base, 1}, 5);
  REQUIRE(r.set.members.size() == 2);
  CHECK(is_isomorphic(r.set.members[0], Graph::complete(3)));
  CHECK(is_isomorphic(r.set.members[1], Graph::path(4)));
  CHECK(r.partial_up_to == 5);
}

TEST_CASE("tower obstructions agree with tower membership as an oracle") {
  ObstructionSet base = set_of({Graph::complete(3)});
  PartialObstructionSet r = ck_obstructions({base, 1}, 5);
  for (const Graph& g : enumerate_graphs_up_to(5))
    CHECK(excludes(g, r.set) == ck_membership(g, {base, 1}));
}
