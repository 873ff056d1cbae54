#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "elimdist/distances.hpp"
#include "elimdist/graph.hpp"
#include "elimdist/graph_io.hpp"
#include "elimdist/minor.hpp"
#include "elimdist/obstruction.hpp"

namespace elimdist {

using nlohmann::json;

// {"n": ..., "edges": [[u,v]...], "colours": {"v": c, ...}}; the colours key
// is present only when some vertex is coloured (graph6 carries no colours, so
// JSON is the colour-bearing format).
inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  json out = {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
  if (g.has_colours()) {
    json colours = json::object();
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.colour(v) != kNoColour) colours[std::to_string(v)] = g.colour(v);
    out["colours"] = std::move(colours);
    out["colour_count"] = g.colour_count();
  }
  return out;
}

inline Graph graph_from_json(const json& j) {
  Graph g(j.at("n").get<int>());
  for (const json& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  if (j.contains("colours")) {
    int declared = 0;
    for (const auto& [key, value] : j.at("colours").items())
      declared = std::max(declared, value.get<int>() + 1);
    g.set_colour_count(j.value("colour_count", declared));
    for (const auto& [key, value] : j.at("colours").items())
      g.set_colour(std::stoi(key), value.get<int>());
  }
  return g;
}

// {"branch_sets": {"0": [g vertices...], ...}, "radius": r} with radius only
// for depth-bounded maps.
inline json minor_map_to_json(const MinorMap& map) {
  json sets = json::object();
  for (std::size_t h = 0; h < map.branch_sets.size(); ++h)
    sets[std::to_string(h)] = set_to_vertices(map.branch_sets[h]);
  json out = {{"branch_sets", std::move(sets)}};
  if (map.radius) out["radius"] = *map.radius;
  return out;
}

inline json elimination_forest_to_json(const ElimForest& forest) {
  json out = json::array();
  for (const ElimTreeNode& node : forest)
    out.push_back({{"vertex", node.vertex},
                   {"children", elimination_forest_to_json(node.children)}});
  return out;
}

// {"value": n | "exceeds_cap", "witness": ...}
inline json distance_result_to_json(const DistanceResult& result) {
  json out;
  if (result.value)
    out["value"] = *result.value;
  else
    out["value"] = "exceeds_cap";
  if (result.elimination)
    out["witness"] = {{"elimination_forest", elimination_forest_to_json(*result.elimination)}};
  else if (result.deleted)
    out["witness"] = {{"deleted", *result.deleted}};
  else
    out["witness"] = nullptr;
  return out;
}

inline json edit_plan_to_json(const EditPlan& plan) {
  json del_edges = json::array(), add_edges = json::array();
  for (auto [u, v] : plan.delete_edges) del_edges.push_back({u, v});
  for (auto [u, v] : plan.add_edges) add_edges.push_back({u, v});
  return {{"delete_vertices", plan.delete_vertices},
          {"delete_edges", std::move(del_edges)},
          {"add_edges", std::move(add_edges)}};
}

// Sidecar for obstruction-set files: {"partial_up_to": n|null, "base": [g6...], "k": k|null}.
inline json obstruction_sidecar(const std::optional<int>& partial_up_to,
                                const std::vector<Graph>& base, std::optional<int> k) {
  json base_list = json::array();
  for (const Graph& g : base) base_list.push_back(write_graph6(g));
  json out;
  out["partial_up_to"] = partial_up_to ? json(*partial_up_to) : json(nullptr);
  out["base"] = std::move(base_list);
  out["k"] = k ? json(*k) : json(nullptr);
  return out;
}

}  // namespace elimdist
