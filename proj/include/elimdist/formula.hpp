#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elimdist/graph_io.hpp"

namespace elimdist::fo {

// First-order AST over the graph signature {E, C_0..C_{r-1}, =}, extended
// with guarded bounded-distance atoms. Formulas are immutable and shared.
enum class Kind : std::uint8_t {
  edge,
  equal,
  colour,
  dist,
  negation,
  conjunction,
  disjunction,
  implication,
  exists,
  forall,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Guard of a distance atom: `var` is scoped only inside `body` and ranges
// over candidate vertices of the allowed set.
struct Guard {
  std::string var;
  FormulaPtr body;
};

struct Formula {
  Kind kind{};
  std::string x{}, y{};          // atom operands; quantifier variable in x
  int colour_index = -1;         // colour atom
  int bound = -1;                // dist atom bound
  std::optional<Guard> guard{};  // dist atom guard
  FormulaPtr left{}, right{};    // connectives; negation and quantifiers use left
};

inline FormulaPtr edge(std::string x, std::string y) {
  return std::make_shared<Formula>(Formula{.kind = Kind::edge, .x = std::move(x), .y = std::move(y)});
}

inline FormulaPtr equal(std::string x, std::string y) {
  return std::make_shared<Formula>(Formula{.kind = Kind::equal, .x = std::move(x), .y = std::move(y)});
}

inline FormulaPtr colour(int index, std::string x) {
  if (index < 0) throw std::out_of_range("negative colour index");
  return std::make_shared<Formula>(
      Formula{.kind = Kind::colour, .x = std::move(x), .colour_index = index});
}

inline FormulaPtr dist(std::string x, std::string y, int bound,
                       std::optional<Guard> guard = std::nullopt) {
  if (bound < 0) throw std::out_of_range("negative distance bound");
  return std::make_shared<Formula>(Formula{.kind = Kind::dist,
                                           .x = std::move(x),
                                           .y = std::move(y),
                                           .bound = bound,
                                           .guard = std::move(guard)});
}

inline FormulaPtr negation(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{.kind = Kind::negation, .left = std::move(f)});
}

inline FormulaPtr make_binary(Kind kind, FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(
      Formula{.kind = kind, .left = std::move(l), .right = std::move(r)});
}

inline FormulaPtr conjunction(FormulaPtr l, FormulaPtr r) {
  return make_binary(Kind::conjunction, std::move(l), std::move(r));
}

inline FormulaPtr disjunction(FormulaPtr l, FormulaPtr r) {
  return make_binary(Kind::disjunction, std::move(l), std::move(r));
}

inline FormulaPtr implication(FormulaPtr l, FormulaPtr r) {
  return make_binary(Kind::implication, std::move(l), std::move(r));
}

inline FormulaPtr quantify(Kind kind, std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{.kind = kind, .x = std::move(var), .left = std::move(body)});
}

inline FormulaPtr exists(std::string var, FormulaPtr body) {
  return quantify(Kind::exists, std::move(var), std::move(body));
}

inline FormulaPtr forall(std::string var, FormulaPtr body) {
  return quantify(Kind::forall, std::move(var), std::move(body));
}

// Right fold of a nonempty list into nested binary connectives.
inline FormulaPtr fold(Kind kind, std::vector<FormulaPtr> parts) {
  if (parts.empty()) throw std::invalid_argument("cannot fold an empty list");
  FormulaPtr acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = make_binary(kind, parts[i], acc);
  return acc;
}

inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->x != b->x || a->y != b->y ||
      a->colour_index != b->colour_index || a->bound != b->bound)
    return false;
  if (a->guard.has_value() != b->guard.has_value()) return false;
  if (a->guard && (a->guard->var != b->guard->var ||
                   !structurally_equal(a->guard->body, b->guard->body)))
    return false;
  return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
}

namespace detail {

inline void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::edge:
    case Kind::equal:
      if (!bound.contains(f->x)) out.insert(f->x);
      if (!bound.contains(f->y)) out.insert(f->y);
      return;
    case Kind::colour:
      if (!bound.contains(f->x)) out.insert(f->x);
      return;
    case Kind::dist: {
      if (!bound.contains(f->x)) out.insert(f->x);
      if (!bound.contains(f->y)) out.insert(f->y);
      if (f->guard) {
        bool was_bound = bound.contains(f->guard->var);
        bound.insert(f->guard->var);
        collect_free(f->guard->body, bound, out);
        if (!was_bound) bound.erase(f->guard->var);
      }
      return;
    }
    case Kind::negation:
      collect_free(f->left, bound, out);
      return;
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
      return;
    case Kind::exists:
    case Kind::forall: {
      bool was_bound = bound.contains(f->x);
      bound.insert(f->x);
      collect_free(f->left, bound, out);
      if (!was_bound) bound.erase(f->x);
      return;
    }
  }
}

inline void collect_all_variables(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::edge:
    case Kind::equal:
      out.insert(f->x);
      out.insert(f->y);
      return;
    case Kind::colour:
      out.insert(f->x);
      return;
    case Kind::dist:
      out.insert(f->x);
      out.insert(f->y);
      if (f->guard) {
        out.insert(f->guard->var);
        collect_all_variables(f->guard->body, out);
      }
      return;
    case Kind::negation:
      collect_all_variables(f->left, out);
      return;
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      collect_all_variables(f->left, out);
      collect_all_variables(f->right, out);
      return;
    case Kind::exists:
    case Kind::forall:
      out.insert(f->x);
      collect_all_variables(f->left, out);
      return;
  }
}

}  // namespace detail

inline std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  detail::collect_free(f, bound, out);
  return out;
}

inline bool is_sentence(const FormulaPtr& f) { return free_variables(f).empty(); }

inline std::set<std::string> all_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  detail::collect_all_variables(f, out);
  return out;
}

inline std::string fresh_variable(const std::string& base, const std::set<std::string>& used) {
  if (!used.contains(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!used.contains(candidate)) return candidate;
  }
}

// Quantifier nesting depth; distance atoms (guards included) contribute 0.
inline int quantifier_rank(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::edge:
    case Kind::equal:
    case Kind::colour:
    case Kind::dist:
      return 0;
    case Kind::negation:
      return quantifier_rank(f->left);
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return std::max(quantifier_rank(f->left), quantifier_rank(f->right));
    case Kind::exists:
    case Kind::forall:
      return 1 + quantifier_rank(f->left);
  }
  return 0;
}

// Capture-avoiding replacement of free occurrences of `from` by `to`.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& from, const std::string& to) {
  if (from == to) return f;
  auto var = [&](const std::string& v) { return v == from ? to : v; };
  switch (f->kind) {
    case Kind::edge:
      return edge(var(f->x), var(f->y));
    case Kind::equal:
      return equal(var(f->x), var(f->y));
    case Kind::colour:
      return colour(f->colour_index, var(f->x));
    case Kind::dist: {
      std::optional<Guard> guard = f->guard;
      if (guard && guard->var != from) {
        if (guard->var == to && free_variables(guard->body).contains(from)) {
          std::set<std::string> used = all_variables(guard->body);
          used.insert(from);
          used.insert(to);
          std::string renamed = fresh_variable(guard->var, used);
          guard = Guard{renamed, substitute(guard->body, guard->var, renamed)};
        }
        guard = Guard{guard->var, substitute(guard->body, from, to)};
      }
      return dist(var(f->x), var(f->y), f->bound, std::move(guard));
    }
    case Kind::negation:
      return negation(substitute(f->left, from, to));
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
      return make_binary(f->kind, substitute(f->left, from, to), substitute(f->right, from, to));
    case Kind::exists:
    case Kind::forall: {
      if (f->x == from) return f;
      std::string binder = f->x;
      FormulaPtr body = f->left;
      if (binder == to && free_variables(body).contains(from)) {
        std::set<std::string> used = all_variables(body);
        used.insert(from);
        used.insert(to);
        binder = fresh_variable(binder, used);
        body = substitute(body, f->x, binder);
      }
      return quantify(f->kind, binder, substitute(body, from, to));
    }
  }
  throw std::logic_error("unreachable");
}

// --- Textual format -------------------------------------------------------
//
// (E x y)  (= x y)  (C 1 x)  (dist x y 4)  (dist x y 4 :guard (z BODY))
// (not F)  (and F G)  (or F G)  (implies F G)  (exists x F)  (forall x F)

inline std::string to_text(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::edge:
      return "(E " + f->x + " " + f->y + ")";
    case Kind::equal:
      return "(= " + f->x + " " + f->y + ")";
    case Kind::colour:
      return "(C " + std::to_string(f->colour_index) + " " + f->x + ")";
    case Kind::dist: {
      std::string out = "(dist " + f->x + " " + f->y + " " + std::to_string(f->bound);
      if (f->guard) out += " :guard (" + f->guard->var + " " + to_text(f->guard->body) + ")";
      return out + ")";
    }
    case Kind::negation:
      return "(not " + to_text(f->left) + ")";
    case Kind::conjunction:
      return "(and " + to_text(f->left) + " " + to_text(f->right) + ")";
    case Kind::disjunction:
      return "(or " + to_text(f->left) + " " + to_text(f->right) + ")";
    case Kind::implication:
      return "(implies " + to_text(f->left) + " " + to_text(f->right) + ")";
    case Kind::exists:
      return "(exists " + f->x + " " + to_text(f->left) + ")";
    case Kind::forall:
      return "(forall " + f->x + " " + to_text(f->left) + ")";
  }
  throw std::logic_error("unreachable");
}

namespace detail {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }

  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of formula");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '=' ||
          c == ':')
        ++pos;
      else
        break;
    }
    if (start == pos) fail("expected a symbol");
    return std::string(text.substr(start, pos - start));
  }

  int number() {
    std::string s = symbol();
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number, got " + s);
    return std::stoi(s);
  }

  std::string variable() {
    std::string s = symbol();
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == ':' || s == "=")
      fail("expected a variable, got " + s);
    return s;
  }

  FormulaPtr formula() {
    expect('(');
    std::string head = symbol();
    FormulaPtr out;
    if (head == "E") {
      std::string a = variable(), b = variable();
      out = edge(a, b);
    } else if (head == "=") {
      std::string a = variable(), b = variable();
      out = equal(a, b);
    } else if (head == "C") {
      int idx = number();
      out = colour(idx, variable());
    } else if (head == "dist") {
      std::string a = variable(), b = variable();
      int bound = number();
      std::optional<Guard> guard;
      if (peek() == ':') {
        std::string kw = symbol();
        if (kw != ":guard") fail("expected :guard, got " + kw);
        expect('(');
        std::string gvar = variable();
        FormulaPtr body = formula();
        expect(')');
        guard = Guard{gvar, body};
      }
      out = dist(a, b, bound, std::move(guard));
    } else if (head == "not") {
      out = negation(formula());
    } else if (head == "and" || head == "or" || head == "implies") {
      Kind kind = head == "and"   ? Kind::conjunction
                  : head == "or"  ? Kind::disjunction
                                  : Kind::implication;
      std::vector<FormulaPtr> parts;
      parts.push_back(formula());
      parts.push_back(formula());
      if (kind != Kind::implication)
        while (peek() != ')') parts.push_back(formula());
      out = fold(kind, std::move(parts));
    } else if (head == "exists" || head == "forall") {
      std::string v = variable();
      out = quantify(head == "exists" ? Kind::exists : Kind::forall, v, formula());
    } else {
      fail("unknown form " + head);
    }
    expect(')');
    return out;
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(std::string_view text) {
  detail::Parser parser{text};
  FormulaPtr f = parser.formula();
  parser.skip_ws();
  if (parser.pos != text.size())
    throw ParseError("trailing content after formula", parser.pos);
  return f;
}

}  // namespace elimdist::fo
