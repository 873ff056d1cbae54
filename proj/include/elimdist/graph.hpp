#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elimdist {

// Vertices are dense indices 0..n-1; vertex sets are bitmasks over them.
using VertexSet = std::uint64_t;

constexpr int kMaxVertices = 64;
constexpr int kNoColour = -1;

inline VertexSet vertex_bit(int v) { return VertexSet{1} << v; }

inline VertexSet full_set(int n) {
  return n >= kMaxVertices ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

inline int set_size(VertexSet s) { return std::popcount(s); }

inline int first_vertex(VertexSet s) { return std::countr_zero(s); }

template <typename F>
void for_each_vertex(VertexSet s, F&& f) {
  while (s != 0) {
    f(std::countr_zero(s));
    s &= s - 1;
  }
}

inline std::vector<int> set_to_vertices(VertexSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  for_each_vertex(s, [&](int v) { out.push_back(v); });
  return out;
}

// Finite simple undirected loop-free graph with optional vertex colours.
// Values are immutable in spirit: mutating members exist for construction,
// all algorithms take graphs by const reference and return new values.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n, int colour_count = 0) {
    if (n < 0 || n > kMaxVertices)
      throw std::out_of_range("vertex count out of range: " + std::to_string(n));
    if (colour_count < 0) throw std::out_of_range("negative colour count");
    n_ = n;
    colour_count_ = colour_count;
    adj_.assign(static_cast<std::size_t>(n), 0);
    colours_.assign(static_cast<std::size_t>(n), kNoColour);
  }

  Graph(int n, std::initializer_list<std::pair<int, int>> edge_list) : Graph(n) {
    for (auto [u, v] : edge_list) add_edge(u, v);
  }

  int vertex_count() const { return n_; }

  int edge_count() const {
    int twice = 0;
    for (VertexSet row : adj_) twice += set_size(row);
    return twice / 2;
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[static_cast<std::size_t>(u)] & vertex_bit(v)) != 0;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    adj_[static_cast<std::size_t>(u)] |= vertex_bit(v);
    adj_[static_cast<std::size_t>(v)] |= vertex_bit(u);
  }

  void remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    adj_[static_cast<std::size_t>(u)] &= ~vertex_bit(v);
    adj_[static_cast<std::size_t>(v)] &= ~vertex_bit(u);
  }

  VertexSet neighbours(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  int degree(int v) const { return set_size(neighbours(v)); }

  VertexSet vertices() const { return full_set(n_); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for_each_vertex(adj_[static_cast<std::size_t>(u)] & ~(full_set(u + 1)),
                      [&](int v) { out.emplace_back(u, v); });
    return out;
  }

  int colour_count() const { return colour_count_; }

  void set_colour_count(int r) {
    if (r < 0) throw std::out_of_range("negative colour count");
    colour_count_ = r;
  }

  // kNoColour when the vertex is uncoloured.
  int colour(int v) const {
    check_vertex(v);
    return colours_[static_cast<std::size_t>(v)];
  }

  void set_colour(int v, int c) {
    check_vertex(v);
    if (c != kNoColour && (c < 0 || c >= colour_count_))
      throw std::out_of_range("colour index " + std::to_string(c) +
                              " not below declared colour count " + std::to_string(colour_count_));
    colours_[static_cast<std::size_t>(v)] = c;
  }

  bool has_colours() const {
    return std::any_of(colours_.begin(), colours_.end(), [](int c) { return c != kNoColour; });
  }

  int add_vertex() {
    if (n_ >= kMaxVertices) throw std::out_of_range("vertex capacity exceeded");
    adj_.push_back(0);
    colours_.push_back(kNoColour);
    return n_++;
  }

  // Subgraph induced by `keep`, relabelled to 0..k-1 in increasing original order.
  Graph induced_subgraph(VertexSet keep) const {
    keep &= vertices();
    std::vector<int> old_of = set_to_vertices(keep);
    Graph out(static_cast<int>(old_of.size()), colour_count_);
    for (int a = 0; a < out.n_; ++a) {
      out.colours_[static_cast<std::size_t>(a)] = colours_[static_cast<std::size_t>(old_of[static_cast<std::size_t>(a)])];
      for (int b = a + 1; b < out.n_; ++b)
        if (has_edge(old_of[static_cast<std::size_t>(a)], old_of[static_cast<std::size_t>(b)]))
          out.add_edge(a, b);
    }
    return out;
  }

  Graph without_vertex(int v) const {
    check_vertex(v);
    return induced_subgraph(vertices() & ~vertex_bit(v));
  }

  Graph without_edge(int u, int v) const {
    if (!has_edge(u, v)) throw std::invalid_argument("no such edge");
    Graph out = *this;
    out.remove_edge(u, v);
    return out;
  }

  // Contracts edge uv, keeping u's label and colour; the result is relabelled densely.
  Graph contract_edge(int u, int v) const {
    if (!has_edge(u, v)) throw std::invalid_argument("no such edge");
    Graph merged = *this;
    merged.adj_[static_cast<std::size_t>(u)] |= adj_[static_cast<std::size_t>(v)];
    merged.adj_[static_cast<std::size_t>(u)] &= ~(vertex_bit(u) | vertex_bit(v));
    for_each_vertex(adj_[static_cast<std::size_t>(v)], [&](int w) {
      if (w != u) merged.adj_[static_cast<std::size_t>(w)] |= vertex_bit(u);
    });
    return merged.induced_subgraph(vertices() & ~vertex_bit(v));
  }

  std::vector<VertexSet> component_masks(VertexSet within) const {
    within &= vertices();
    std::vector<VertexSet> out;
    VertexSet todo = within;
    while (todo != 0) {
      VertexSet comp = vertex_bit(first_vertex(todo));
      for (;;) {
        VertexSet grown = comp;
        for_each_vertex(comp, [&](int v) { grown |= adj_[static_cast<std::size_t>(v)] & within; });
        if (grown == comp) break;
        comp = grown;
      }
      out.push_back(comp);
      todo &= ~comp;
    }
    return out;
  }

  std::vector<VertexSet> component_masks() const { return component_masks(vertices()); }

  // Convention: the null graph counts as connected.
  bool connected() const { return n_ == 0 || component_masks().size() == 1; }

  // Distances from src through `allowed` vertices only; -1 marks unreachable.
  // Entries outside `allowed` are -1; src itself must lie in `allowed`.
  std::vector<int> bfs_from(int src, VertexSet allowed) const {
    check_vertex(src);
    std::vector<int> dist(static_cast<std::size_t>(n_), -1);
    if ((allowed & vertex_bit(src)) == 0) return dist;
    dist[static_cast<std::size_t>(src)] = 0;
    VertexSet frontier = vertex_bit(src);
    VertexSet seen = frontier;
    int d = 0;
    while (frontier != 0) {
      VertexSet next = 0;
      for_each_vertex(frontier, [&](int v) { next |= adj_[static_cast<std::size_t>(v)]; });
      next &= allowed & ~seen;
      ++d;
      for_each_vertex(next, [&](int v) { dist[static_cast<std::size_t>(v)] = d; });
      seen |= next;
      frontier = next;
    }
    return dist;
  }

  // Shortest-path length from u to v through allowed vertices; nullopt when none.
  std::optional<int> bfs_distance(int u, int v,
                                  std::optional<VertexSet> allowed = std::nullopt) const {
    check_vertex(u);
    check_vertex(v);
    VertexSet mask = allowed.value_or(vertices());
    if ((mask & vertex_bit(u)) == 0 || (mask & vertex_bit(v)) == 0) return std::nullopt;
    std::vector<int> dist = bfs_from(u, mask);
    int d = dist[static_cast<std::size_t>(v)];
    if (d < 0) return std::nullopt;
    return d;
  }

  bool operator==(const Graph&) const = default;

  static Graph empty(int n) { return Graph(n); }

  static Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }

  static Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }

  // Star K_{1,leaves}: vertex 0 is the centre.
  static Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
  }

  static Graph disjoint_union(const Graph& a, const Graph& b) {
    if (a.colour_count() != b.colour_count())
      throw std::invalid_argument("colour counts differ");
    Graph g(a.n_ + b.n_, a.colour_count());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.n_ + u, a.n_ + v);
    for (int v = 0; v < a.n_; ++v) g.colours_[static_cast<std::size_t>(v)] = a.colour(v);
    for (int v = 0; v < b.n_; ++v) g.colours_[static_cast<std::size_t>(a.n_ + v)] = b.colour(v);
    return g;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw std::out_of_range("vertex index " + std::to_string(v) + " out of range (n=" +
                              std::to_string(n_) + ")");
  }

  int n_ = 0;
  int colour_count_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<int> colours_;
};

}  // namespace elimdist
