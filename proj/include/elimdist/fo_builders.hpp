#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elimdist/formula.hpp"

namespace elimdist::fo {

namespace detail {

inline FormulaPtr relativise_impl(const FormulaPtr& f, const FormulaPtr& psi,
                                  const std::string& x, const std::set<std::string>& psi_free) {
  switch (f->kind) {
    case Kind::edge:
    case Kind::equal:
    case Kind::colour:
      return f;
    case Kind::dist: {
      if (!f->guard) return dist(f->x, f->y, f->bound, Guard{x, psi});
      // The existing guard is evaluated inside the relativised universe, so
      // its body is relativised too and conjoined with psi at the binder.
      std::string binder = f->guard->var;
      FormulaPtr old_body = relativise_impl(f->guard->body, psi, x, psi_free);
      if (binder != x && psi_free.contains(binder)) {
        std::set<std::string> used = all_variables(old_body);
        used.insert(psi_free.begin(), psi_free.end());
        used.insert(x);
        std::string renamed = fresh_variable(binder, used);
        old_body = substitute(old_body, binder, renamed);
        binder = renamed;
      }
      FormulaPtr body = conjunction(substitute(psi, x, binder), old_body);
      return dist(f->x, f->y, f->bound, Guard{binder, body});
    }
    case Kind::negation:
      return negation(relativise_impl(f->left, psi, x, psi_free));
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return make_binary(f->kind, relativise_impl(f->left, psi, x, psi_free),
                         relativise_impl(f->right, psi, x, psi_free));
    case Kind::exists:
    case Kind::forall: {
      std::string binder = f->x;
      FormulaPtr body = f->left;
      if (binder != x && psi_free.contains(binder)) {
        std::set<std::string> used = all_variables(body);
        used.insert(psi_free.begin(), psi_free.end());
        used.insert(x);
        binder = fresh_variable(binder, used);
        body = substitute(body, f->x, binder);
      }
      FormulaPtr inner = relativise_impl(body, psi, x, psi_free);
      FormulaPtr condition = substitute(psi, x, binder);
      if (f->kind == Kind::exists)
        return exists(binder, conjunction(std::move(condition), std::move(inner)));
      return forall(binder, implication(std::move(condition), std::move(inner)));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// phi^{[x.psi]}: restricts phi's quantifiers and distance atoms to the
// vertices satisfying psi, so that evaluating the result on G equals
// evaluating phi on the subgraph induced by {v : psi(v)}. Other free
// variables of psi remain free.
inline FormulaPtr relativise(const FormulaPtr& phi, const FormulaPtr& psi, const std::string& x) {
  std::set<std::string> psi_free = free_variables(psi);
  if (!psi_free.contains(x))
    throw std::invalid_argument("relativise: " + x + " is not free in the guard formula");
  psi_free.erase(x);
  return detail::relativise_impl(phi, psi, x, psi_free);
}

namespace detail {

struct DistExpander {
  std::set<std::string> used;
  int counter = 0;

  std::string fresh() {
    for (;;) {
      std::string candidate = "z" + std::to_string(counter++);
      if (!used.contains(candidate)) {
        used.insert(candidate);
        return candidate;
      }
    }
  }

  // dist_0 := u=v; dist_1 := u=v or E(u,v); dist_d splits at a midpoint.
  FormulaPtr pure_distance(const std::string& u, const std::string& v, int d) {
    if (d == 0) return equal(u, v);
    if (d == 1) return disjunction(equal(u, v), edge(u, v));
    int half = (d + 1) / 2;
    std::string z = fresh();
    return exists(z, conjunction(pure_distance(u, z, half), pure_distance(z, v, d - half)));
  }

  FormulaPtr expand(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::edge:
      case Kind::equal:
      case Kind::colour:
        return f;
      case Kind::dist: {
        FormulaPtr core = pure_distance(f->x, f->y, f->bound);
        if (!f->guard) return core;
        const std::string& z = f->guard->var;
        FormulaPtr body = expand(f->guard->body);
        FormulaPtr guard_body =
            free_variables(body).contains(z) ? body : conjunction(body, equal(z, z));
        return conjunction(
            substitute(guard_body, z, f->x),
            conjunction(substitute(guard_body, z, f->y), relativise(core, guard_body, z)));
      }
      case Kind::negation:
        return negation(expand(f->left));
      case Kind::conjunction:
      case Kind::disjunction:
      case Kind::implication:
        return make_binary(f->kind, expand(f->left), expand(f->right));
      case Kind::exists:
      case Kind::forall:
        return quantify(f->kind, f->x, expand(f->left));
    }
    throw std::logic_error("unreachable");
  }
};

inline bool contains_dist(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::edge:
    case Kind::equal:
    case Kind::colour:
      return false;
    case Kind::dist:
      return true;
    case Kind::negation:
      return contains_dist(f->left);
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return contains_dist(f->left) || contains_dist(f->right);
    case Kind::exists:
    case Kind::forall:
      return contains_dist(f->left);
  }
  return false;
}

}  // namespace detail

// Eliminates distance atoms in favour of pure first-order formulas built by
// recursive midpoint splitting; guards become relativisations of the
// expansion, with endpoint membership conjoined.
inline FormulaPtr expand_distance_atoms(const FormulaPtr& phi) {
  detail::DistExpander expander{all_variables(phi)};
  return expander.expand(phi);
}

// Sentence satisfied by exactly the graphs of tree-depth at most k, built
// over guarded distance atoms. A graph of tree-depth at most j has no path
// longer than 2^j, which lets bounded distance stand in for connectivity.
inline FormulaPtr treedepth_formula(int k) {
  if (k < 0) throw std::out_of_range("negative tree-depth bound");
  FormulaPtr phi = negation(exists("v0", equal("v0", "v0")));
  int level = 1;
  for (int j = 0; j < k; ++j, ++level) {
    int diam = 1 << (j + 1);
    std::string u = "u" + std::to_string(level);
    std::string v = "v" + std::to_string(level);
    std::string w = "w" + std::to_string(level);
    // theta_j: connected with diameter <= 2^{j+1}, and some deletion reaches
    // tree-depth <= j.
    FormulaPtr theta =
        conjunction(forall(u, forall(v, dist(u, v, diam))),
                    exists(w, relativise(phi, negation(equal("x", w)), "x")));
    std::string u2 = "u" + std::to_string(level) + "a";
    std::string v2 = "v" + std::to_string(level) + "a";
    std::string w2 = "w" + std::to_string(level) + "a";
    // phi_{j+1}: components have diameter <= 2^{j+1} and each vertex's
    // component (its diam-ball) satisfies theta_j.
    phi = conjunction(
        forall(u2, forall(v2, implication(dist(u2, v2, diam + 1), dist(u2, v2, diam)))),
        forall(w2, relativise(theta, dist(w2, "x", diam), "x")));
  }
  return phi;
}

// Sentence true on G iff deleting at most k vertices can reach a graph
// satisfying phi. The witnesses may coincide, and satisfying phi outright
// counts as zero deletions, so this is a "<= k" reading.
inline FormulaPtr deletion_formula(const FormulaPtr& phi, int k) {
  if (!is_sentence(phi)) throw std::invalid_argument("deletion_formula requires a sentence");
  if (k < 0) throw std::out_of_range("negative deletion bound");
  if (k == 0) return phi;
  std::set<std::string> used = all_variables(phi);
  std::string hole = fresh_variable("x", used);
  used.insert(hole);
  std::vector<std::string> witnesses;
  for (int i = 1; i <= k; ++i) {
    std::string w = fresh_variable("w" + std::to_string(i), used);
    used.insert(w);
    witnesses.push_back(w);
  }
  std::vector<FormulaPtr> kept;
  kept.reserve(witnesses.size());
  for (const std::string& w : witnesses) kept.push_back(negation(equal(hole, w)));
  FormulaPtr body = relativise(phi, fold(Kind::conjunction, std::move(kept)), hole);
  for (std::size_t i = witnesses.size(); i-- > 0;) body = exists(witnesses[i], std::move(body));
  return disjunction(phi, std::move(body));
}

namespace detail {

inline FormulaPtr rewrite_edges(const FormulaPtr& f, const std::string& u, const std::string& v,
                                bool addition) {
  switch (f->kind) {
    case Kind::equal:
    case Kind::colour:
      return f;
    case Kind::edge: {
      if (addition) {
        // ((w1=u and w2=v) or (w1=v and w2=u)) and u != v, or E(w1,w2); the
        // u != v conjunct makes a degenerate pair a no-op edit.
        FormulaPtr match = disjunction(conjunction(equal(f->x, u), equal(f->y, v)),
                                       conjunction(equal(f->x, v), equal(f->y, u)));
        return disjunction(conjunction(std::move(match), negation(equal(u, v))), f);
      }
      return conjunction(
          disjunction(negation(equal(f->x, u)), negation(equal(f->y, v))),
          conjunction(disjunction(negation(equal(f->x, v)), negation(equal(f->y, u))), f));
    }
    case Kind::dist:
      throw std::logic_error("distance atoms must be expanded before edge rewriting");
    case Kind::negation:
      return negation(rewrite_edges(f->left, u, v, addition));
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return make_binary(f->kind, rewrite_edges(f->left, u, v, addition),
                         rewrite_edges(f->right, u, v, addition));
    case Kind::exists:
    case Kind::forall:
      return quantify(f->kind, f->x, rewrite_edges(f->left, u, v, addition));
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// Sentence true on G iff G can be made to satisfy phi with at most
// `additions` edge additions and `deletions` edge deletions. Edit pairs are
// existentially quantified; rewrites are applied innermost-first so the
// edited relation is (E minus deletions) plus additions. Distance atoms are
// expanded first since edits change distances.
inline FormulaPtr edge_edit_formula(const FormulaPtr& phi, int additions, int deletions) {
  if (!is_sentence(phi)) throw std::invalid_argument("edge_edit_formula requires a sentence");
  if (additions < 0 || deletions < 0) throw std::out_of_range("negative edit budget");
  if (additions == 0 && deletions == 0) return phi;
  FormulaPtr body = detail::contains_dist(phi) ? expand_distance_atoms(phi) : phi;
  std::set<std::string> used = all_variables(body);
  std::vector<std::pair<std::string, std::string>> pairs;
  auto next_pair = [&](int i) {
    std::string u = fresh_variable("eu" + std::to_string(i), used);
    used.insert(u);
    std::string v = fresh_variable("ev" + std::to_string(i), used);
    used.insert(v);
    pairs.emplace_back(u, v);
  };
  int pair_index = 1;
  for (int i = 0; i < additions; ++i, ++pair_index) {
    next_pair(pair_index);
    body = detail::rewrite_edges(body, pairs.back().first, pairs.back().second, true);
  }
  for (int i = 0; i < deletions; ++i, ++pair_index) {
    next_pair(pair_index);
    body = detail::rewrite_edges(body, pairs.back().first, pairs.back().second, false);
  }
  for (std::size_t i = pairs.size(); i-- > 0;)
    body = exists(pairs[i].first, exists(pairs[i].second, std::move(body)));
  // Satisfying phi outright costs zero edits; on nonempty graphs the edit
  // block covers it with degenerate pairs, on the null graph it cannot.
  return disjunction(phi, std::move(body));
}

}  // namespace elimdist::fo
