#pragma once

#include <map>
#include <string>
#include <vector>

#include "elimdist/canonical.hpp"
#include "elimdist/graph.hpp"

namespace elimdist {

// One canonically labelled representative per isomorphism class on exactly n
// vertices, in canonical-code order. Built by vertex augmentation: every graph
// on n vertices arises from some (n-1)-vertex graph by attaching a new vertex.
inline std::vector<Graph> enumerate_graphs(int n, bool connected_only = false) {
  if (n < 0) throw std::out_of_range("negative vertex count");
  std::vector<Graph> level = {Graph(0)};
  for (int k = 1; k <= n; ++k) {
    std::map<CanonicalCode, Graph> next;
    for (const Graph& parent : level) {
      for (VertexSet attach = 0; attach < (VertexSet{1} << (k - 1)); ++attach) {
        Graph child = parent;
        int w = child.add_vertex();
        for_each_vertex(attach, [&](int v) { child.add_edge(v, w); });
        CanonicalCode code = canonical_form(child);
        if (!next.contains(code)) next.emplace(std::move(code), canonical_graph(child));
      }
    }
    level.clear();
    level.reserve(next.size());
    for (auto& [code, g] : next) level.push_back(std::move(g));
  }
  if (!connected_only) return level;
  std::vector<Graph> connected;
  for (Graph& g : level)
    if (g.connected()) connected.push_back(std::move(g));
  return connected;
}

// All graphs with at most n_max vertices, smaller orders first.
inline std::vector<Graph> enumerate_graphs_up_to(int n_max, bool connected_only = false) {
  std::vector<Graph> out;
  for (int n = 0; n <= n_max; ++n)
    for (Graph& g : enumerate_graphs(n, connected_only)) out.push_back(std::move(g));
  return out;
}

}  // namespace elimdist
