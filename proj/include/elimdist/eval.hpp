#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elimdist/formula.hpp"
#include "elimdist/graph.hpp"

namespace elimdist::fo {

// Partial map from variable symbols to vertices of the target graph.
using Assignment = std::map<std::string, int>;

// Recursive-descent evaluation with environment threading. Quantifiers
// iterate vertices in index order. The only caches are BFS distance tables
// keyed per guard valuation: a distance atom's allowed set is a function of
// the atom and the values of its guard's free variables, and the tables for
// each allowed set are shared across the evaluation.
class Evaluator {
 public:
  explicit Evaluator(const Graph& g) : g_(g) {}

  bool evaluate(const FormulaPtr& f, const Assignment& env) {
    env_.assign(env.begin(), env.end());
    return eval(f);
  }

 private:
  using Env = std::vector<std::pair<std::string, int>>;

  int lookup(const std::string& var) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == var) return it->second;
    throw std::invalid_argument("unbound variable " + var);
  }

  bool eval(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::edge: {
        int u = lookup(f->x), v = lookup(f->y);
        return u != v && g_.has_edge(u, v);
      }
      case Kind::equal:
        return lookup(f->x) == lookup(f->y);
      case Kind::colour: {
        if (f->colour_index >= g_.colour_count())
          throw std::out_of_range("colour index " + std::to_string(f->colour_index) +
                                  " not below declared colour count " +
                                  std::to_string(g_.colour_count()));
        return g_.colour(lookup(f->x)) == f->colour_index;
      }
      case Kind::dist: {
        int u = lookup(f->x), v = lookup(f->y);
        VertexSet allowed = f->guard ? allowed_set(f.get()) : g_.vertices();
        if ((allowed & vertex_bit(u)) == 0 || (allowed & vertex_bit(v)) == 0) return false;
        const std::vector<int>& dist = distance_row(allowed, u);
        int d = dist[static_cast<std::size_t>(v)];
        return d >= 0 && d <= f->bound;
      }
      case Kind::negation:
        return !eval(f->left);
      case Kind::conjunction:
        return eval(f->left) && eval(f->right);
      case Kind::disjunction:
        return eval(f->left) || eval(f->right);
      case Kind::implication:
        return !eval(f->left) || eval(f->right);
      case Kind::exists: {
        for (int v = 0; v < g_.vertex_count(); ++v) {
          env_.emplace_back(f->x, v);
          bool hit = eval(f->left);
          env_.pop_back();
          if (hit) return true;
        }
        return false;
      }
      case Kind::forall: {
        for (int v = 0; v < g_.vertex_count(); ++v) {
          env_.emplace_back(f->x, v);
          bool hit = eval(f->left);
          env_.pop_back();
          if (!hit) return false;
        }
        return true;
      }
    }
    throw std::logic_error("unreachable");
  }

  // Vertices satisfying the guard of a dist atom under the current values of
  // the guard's free variables. Cached per (atom, packed valuation).
  VertexSet allowed_set(const Formula* atom) {
    const std::vector<std::string>& vars = guard_free_vars(atom);
    bool cacheable = vars.size() <= 7;
    std::uint64_t key = 0;
    if (cacheable) {
      for (const std::string& var : vars)
        key = (key << 8) | static_cast<std::uint64_t>(lookup(var) + 1);
      auto it = allowed_cache_.find(std::make_pair(atom, key));
      if (it != allowed_cache_.end()) return it->second;
    }
    const Guard& guard = *atom->guard;
    VertexSet allowed = 0;
    for (int t = 0; t < g_.vertex_count(); ++t) {
      env_.emplace_back(guard.var, t);
      bool in = eval(guard.body);
      env_.pop_back();
      if (in) allowed |= vertex_bit(t);
    }
    if (cacheable) allowed_cache_.emplace(std::make_pair(atom, key), allowed);
    return allowed;
  }

  const std::vector<std::string>& guard_free_vars(const Formula* atom) {
    auto it = guard_vars_.find(atom);
    if (it != guard_vars_.end()) return it->second;
    std::set<std::string> free = free_variables(atom->guard->body);
    free.erase(atom->guard->var);
    return guard_vars_.emplace(atom, std::vector<std::string>(free.begin(), free.end()))
        .first->second;
  }

  const std::vector<int>& distance_row(VertexSet allowed, int src) {
    auto& rows = dist_cache_[allowed];
    if (rows.empty()) rows.resize(static_cast<std::size_t>(g_.vertex_count()));
    auto& row = rows[static_cast<std::size_t>(src)];
    if (row.empty()) row = g_.bfs_from(src, allowed);
    return row;
  }

  struct PairHash {
    std::size_t operator()(const std::pair<const Formula*, std::uint64_t>& p) const {
      return std::hash<const Formula*>{}(p.first) ^
             (std::hash<std::uint64_t>{}(p.second) * 0x9e3779b97f4a7c15ULL);
    }
  };

  const Graph& g_;
  Env env_;
  std::unordered_map<std::pair<const Formula*, std::uint64_t>, VertexSet, PairHash>
      allowed_cache_;
  std::unordered_map<const Formula*, std::vector<std::string>> guard_vars_;
  std::unordered_map<VertexSet, std::vector<std::vector<int>>> dist_cache_;
};

// Truth of phi in g under env; env must cover phi's free variables.
inline bool evaluate(const FormulaPtr& phi, const Graph& g, const Assignment& env = {}) {
  Evaluator evaluator(g);
  return evaluator.evaluate(phi, env);
}

}  // namespace elimdist::fo
