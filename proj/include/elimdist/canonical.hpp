#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "elimdist/graph.hpp"

namespace elimdist {

// Byte sequence identifying an isomorphism class: equal codes iff the graphs
// are isomorphic (colour-respecting when colours are present).
struct CanonicalCode {
  std::vector<std::uint8_t> bytes;

  auto operator<=>(const CanonicalCode&) const = default;

  std::string as_key() const { return std::string(bytes.begin(), bytes.end()); }
};

namespace detail {

// Ordered partition of the vertices, refined by neighbour counts per cell.
using Partition = std::vector<std::vector<int>>;

inline Partition initial_partition(const Graph& g) {
  std::map<int, std::vector<int>> by_colour;
  for (int v = 0; v < g.vertex_count(); ++v) by_colour[g.colour(v)].push_back(v);
  Partition p;
  for (auto& [c, cell] : by_colour) p.push_back(std::move(cell));
  return p;
}

inline void refine_partition(const Graph& g, Partition& p) {
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> cell_of(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t ci = 0; ci < p.size(); ++ci)
      for (int v : p[ci]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(ci);
    for (std::size_t ci = 0; ci < p.size(); ++ci) {
      if (p[ci].size() <= 1) continue;
      std::map<std::vector<int>, std::vector<int>> groups;
      for (int v : p[ci]) {
        std::vector<int> sig(p.size(), 0);
        for_each_vertex(g.neighbours(v), [&](int w) { ++sig[static_cast<std::size_t>(cell_of[static_cast<std::size_t>(w)])]; });
        groups[std::move(sig)].push_back(v);
      }
      if (groups.size() > 1) {
        Partition replaced;
        replaced.reserve(p.size() + groups.size() - 1);
        for (std::size_t cj = 0; cj < p.size(); ++cj) {
          if (cj == ci) {
            for (auto& [sig, cell] : groups) replaced.push_back(std::move(cell));
          } else {
            replaced.push_back(std::move(p[cj]));
          }
        }
        p = std::move(replaced);
        changed = true;
        break;
      }
    }
  }
}

// Code bytes under the labelling perm (perm[i] = original vertex placed at i):
// [n][colour_count][colour(perm[i]) + 1 ...][upper-triangle adjacency bits].
inline std::vector<std::uint8_t> code_under(const Graph& g, const std::vector<int>& perm) {
  int n = g.vertex_count();
  std::vector<std::uint8_t> bytes;
  bytes.push_back(static_cast<std::uint8_t>(n));
  bytes.push_back(static_cast<std::uint8_t>(g.colour_count()));
  for (int i = 0; i < n; ++i)
    bytes.push_back(static_cast<std::uint8_t>(g.colour(perm[static_cast<std::size_t>(i)]) + 1));
  int acc = 0, filled = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      acc = (acc << 1) | (g.has_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) ? 1 : 0);
      if (++filled == 8) {
        bytes.push_back(static_cast<std::uint8_t>(acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled != 0) bytes.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
  return bytes;
}

struct CanonicalSearch {
  const Graph& g;
  std::vector<std::uint8_t> best_code;
  std::vector<int> best_perm;
  bool have_best = false;

  void run(Partition p) {
    refine_partition(g, p);
    std::size_t target = p.size();
    for (std::size_t ci = 0; ci < p.size(); ++ci)
      if (p[ci].size() > 1) {
        target = ci;
        break;
      }
    if (target == p.size()) {
      std::vector<int> perm;
      perm.reserve(p.size());
      for (auto& cell : p) perm.push_back(cell.front());
      std::vector<std::uint8_t> code = code_under(g, perm);
      if (!have_best || code < best_code) {
        best_code = std::move(code);
        best_perm = std::move(perm);
        have_best = true;
      }
      return;
    }
    for (int v : p[target]) {
      Partition child;
      child.reserve(p.size() + 1);
      for (std::size_t ci = 0; ci < p.size(); ++ci) {
        if (ci == target) {
          child.push_back({v});
          std::vector<int> rest;
          for (int w : p[ci])
            if (w != v) rest.push_back(w);
          child.push_back(std::move(rest));
        } else {
          child.push_back(p[ci]);
        }
      }
      run(std::move(child));
    }
  }
};

inline CanonicalSearch canonical_search(const Graph& g) {
  CanonicalSearch search{g, {}, {}, false};
  if (g.vertex_count() == 0) {
    search.best_code = {0, static_cast<std::uint8_t>(g.colour_count())};
    search.have_best = true;
    return search;
  }
  search.run(initial_partition(g));
  return search;
}

}  // namespace detail

// Deterministic canonical form: iterated colour/degree refinement with
// backtracking over refined orderings, keeping the lexicographically
// smallest code over all explored labellings.
inline CanonicalCode canonical_form(const Graph& g) {
  return CanonicalCode{detail::canonical_search(g).best_code};
}

// The canonically relabelled representative of g's isomorphism class.
inline Graph canonical_graph(const Graph& g) {
  detail::CanonicalSearch search = detail::canonical_search(g);
  int n = g.vertex_count();
  Graph out(n, g.colour_count());
  for (int i = 0; i < n; ++i) {
    out.set_colour(i, g.colour(search.best_perm[static_cast<std::size_t>(i)]));
    for (int j = i + 1; j < n; ++j)
      if (g.has_edge(search.best_perm[static_cast<std::size_t>(i)], search.best_perm[static_cast<std::size_t>(j)]))
        out.add_edge(i, j);
  }
  return out;
}

inline bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  if (a.edge_count() != b.edge_count()) return false;
  if (a.colour_count() != b.colour_count()) return false;
  auto degrees = [](const Graph& g) {
    std::vector<int> d;
    for (int v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(a) != degrees(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

struct ComponentPart {
  Graph graph;
  std::vector<int> vertices;  // vertices[i] = original index of component vertex i
};

// Connected components as subgraphs with their vertex maps, ordered by
// canonical code with ties broken by smallest original vertex.
inline std::vector<ComponentPart> connected_components(const Graph& g) {
  std::vector<ComponentPart> parts;
  for (VertexSet mask : g.component_masks())
    parts.push_back({g.induced_subgraph(mask), set_to_vertices(mask)});
  std::vector<CanonicalCode> codes;
  codes.reserve(parts.size());
  for (const ComponentPart& part : parts) codes.push_back(canonical_form(part.graph));
  std::vector<std::size_t> order(parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (codes[x] != codes[y]) return codes[x] < codes[y];
    return parts[x].vertices.front() < parts[y].vertices.front();
  });
  std::vector<ComponentPart> sorted;
  sorted.reserve(parts.size());
  for (std::size_t i : order) sorted.push_back(std::move(parts[i]));
  return sorted;
}

}  // namespace elimdist
