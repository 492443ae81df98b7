/*
 * Copyright 2026 The sccmu authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace sccmu {

// ---------------------------------------------------------------------------
// AST
//
// Negation-normal-form mu-calculus: negation occurs only on atoms, and
// after parsing all bound variables are distinct from one another and
// from every other identifier in the formula.

enum class FormulaKind { Atom, NegAtom, Var, And, Or, Diamond, Box, Mu, Nu };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string name;    // Atom/NegAtom/Var: the identifier; Mu/Nu: the bound variable
  FormulaPtr left;     // And/Or: left operand; unary and fixpoint: the body
  FormulaPtr right;    // And/Or only
};

inline FormulaPtr f_atom(std::string p) {
  return std::make_shared<Formula>(Formula{FormulaKind::Atom, std::move(p), nullptr, nullptr});
}
inline FormulaPtr f_neg_atom(std::string p) {
  return std::make_shared<Formula>(Formula{FormulaKind::NegAtom, std::move(p), nullptr, nullptr});
}
inline FormulaPtr f_var(std::string x) {
  return std::make_shared<Formula>(Formula{FormulaKind::Var, std::move(x), nullptr, nullptr});
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FormulaKind::And, "", std::move(a), std::move(b)});
}
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{FormulaKind::Or, "", std::move(a), std::move(b)});
}
inline FormulaPtr f_dia(FormulaPtr a) {
  return std::make_shared<Formula>(Formula{FormulaKind::Diamond, "", std::move(a), nullptr});
}
inline FormulaPtr f_box(FormulaPtr a) {
  return std::make_shared<Formula>(Formula{FormulaKind::Box, "", std::move(a), nullptr});
}
inline FormulaPtr f_mu(std::string x, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::Mu, std::move(x), std::move(body), nullptr});
}
inline FormulaPtr f_nu(std::string x, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{FormulaKind::Nu, std::move(x), std::move(body), nullptr});
}

inline bool structural_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return structural_equal(a->left, b->left) && structural_equal(a->right, b->right);
}

namespace detail {
inline void collect_names(const FormulaPtr& f, std::set<std::string>& atoms,
                          std::set<std::string>& free_vars, std::vector<std::string>& bound) {
  if (!f) return;
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      atoms.insert(f->name);
      break;
    case FormulaKind::Var:
      if (std::find(bound.begin(), bound.end(), f->name) == bound.end())
        free_vars.insert(f->name);
      break;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      bound.push_back(f->name);
      collect_names(f->left, atoms, free_vars, bound);
      bound.pop_back();
      break;
    default:
      collect_names(f->left, atoms, free_vars, bound);
      collect_names(f->right, atoms, free_vars, bound);
  }
}
}  // namespace detail

inline std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> atoms, fv;
  std::vector<std::string> bound;
  detail::collect_names(f, atoms, fv, bound);
  return fv;
}

inline std::set<std::string> atom_names(const FormulaPtr& f) {
  std::set<std::string> atoms, fv;
  std::vector<std::string> bound;
  detail::collect_names(f, atoms, fv, bound);
  return atoms;
}

/// Renames bound variables to X1, X2, ... in pre-order, skipping names
/// already used by atoms or free variables. Idempotent, so printing and
/// re-parsing a canonical formula reproduces it exactly.
inline FormulaPtr canonicalize(const FormulaPtr& f) {
  std::set<std::string> reserved, fv;
  std::vector<std::string> bound;
  detail::collect_names(f, reserved, fv, bound);
  reserved.insert(fv.begin(), fv.end());
  int counter = 0;
  auto fresh = [&]() {
    while (true) {
      std::string cand = "X" + std::to_string(++counter);
      if (!reserved.count(cand)) return cand;
    }
  };
  std::map<std::string, std::vector<std::string>> scope;  // old name -> stack of new names
  std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& n) -> FormulaPtr {
    switch (n->kind) {
      case FormulaKind::Atom:
      case FormulaKind::NegAtom:
        return n;
      case FormulaKind::Var: {
        auto it = scope.find(n->name);
        if (it == scope.end() || it->second.empty()) return n;  // free variable, keep
        return f_var(it->second.back());
      }
      case FormulaKind::And:
        return f_and(go(n->left), go(n->right));
      case FormulaKind::Or:
        return f_or(go(n->left), go(n->right));
      case FormulaKind::Diamond:
        return f_dia(go(n->left));
      case FormulaKind::Box:
        return f_box(go(n->left));
      case FormulaKind::Mu:
      case FormulaKind::Nu: {
        std::string nn = fresh();
        scope[n->name].push_back(nn);
        FormulaPtr body = go(n->left);
        scope[n->name].pop_back();
        return n->kind == FormulaKind::Mu ? f_mu(nn, std::move(body))
                                          : f_nu(nn, std::move(body));
      }
    }
    throw std::logic_error("canonicalize: unreachable");
  };
  return go(f);
}

// ---------------------------------------------------------------------------
// Concrete syntax
//
//   formula := or | or
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '<>' unary | '[]' unary | '!' IDENT | 'mu' IDENT '.' formula
//            | 'nu' IDENT '.' formula | 'G' unary | 'F' unary | IDENT | '(' formula ')'
//
// `G phi` expands to nu X.(phi & [] X) and `F phi` to mu X.(phi | <> X).
// The identifiers G and F act as operators only when a formula follows;
// otherwise they are ordinary atoms, so "G F" is box-star applied to the
// atom F. Unbound identifiers are atoms; identifiers bound by an
// enclosing mu/nu are fixpoint variables.

namespace detail {

struct Token {
  enum Type { Ident, Mu, Nu, Bang, Amp, Pipe, Dia, Box, LParen, RParen, Dot, End } type;
  std::string text;
  size_t pos;
};

inline std::vector<Token> lex_formula(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word = src.substr(i, j - i);
      i = j;
      if (word == "mu")
        out.push_back({Token::Mu, word, start});
      else if (word == "nu")
        out.push_back({Token::Nu, word, start});
      else
        out.push_back({Token::Ident, word, start});
      continue;
    }
    if (c == '<' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::Dia, "<>", start});
      i += 2;
      continue;
    }
    if (c == '[' && i + 1 < src.size() && src[i + 1] == ']') {
      out.push_back({Token::Box, "[]", start});
      i += 2;
      continue;
    }
    switch (c) {
      case '!': out.push_back({Token::Bang, "!", start}); break;
      case '&': out.push_back({Token::Amp, "&", start}); break;
      case '|': out.push_back({Token::Pipe, "|", start}); break;
      case '(': out.push_back({Token::LParen, "(", start}); break;
      case ')': out.push_back({Token::RParen, ")", start}); break;
      case '.': out.push_back({Token::Dot, ".", start}); break;
      default:
        throw std::invalid_argument("formula syntax error at position " +
                                    std::to_string(start) + ": unexpected character '" +
                                    std::string(1, c) + "'");
    }
    ++i;
  }
  out.push_back({Token::End, "", src.size()});
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& src) : tokens_(lex_formula(src)) {}

  FormulaPtr run() {
    FormulaPtr f = parse_or();
    expect(Token::End, "end of input");
    return f;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formula syntax error at position " +
                                std::to_string(peek().pos) + ": " + what);
  }

  void expect(Token::Type t, const std::string& what) {
    if (peek().type != t) fail("expected " + what);
    take();
  }

  bool starts_formula(const Token& t) const {
    switch (t.type) {
      case Token::Ident:
      case Token::Mu:
      case Token::Nu:
      case Token::Bang:
      case Token::Dia:
      case Token::Box:
      case Token::LParen:
        return true;
      default:
        return false;
    }
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (peek().type == Token::Pipe) {
      take();
      f = f_or(std::move(f), parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (peek().type == Token::Amp) {
      take();
      f = f_and(std::move(f), parse_unary());
    }
    return f;
  }

  FormulaPtr parse_unary() {
    switch (peek().type) {
      case Token::Dia:
        take();
        return f_dia(parse_unary());
      case Token::Box:
        take();
        return f_box(parse_unary());
      case Token::Bang: {
        take();
        if (peek().type != Token::Ident || peek().text == "mu" || peek().text == "nu")
          fail("negation is applied only in front of atomic propositions");
        Token id = take();
        if (is_bound(id.text)) fail("negation of the fixpoint variable " + id.text);
        return f_neg_atom(id.text);
      }
      case Token::Mu:
      case Token::Nu: {
        bool is_mu = take().type == Token::Mu;
        if (peek().type != Token::Ident) fail("expected a variable after mu/nu");
        std::string var = take().text;
        expect(Token::Dot, "'.' after the fixpoint variable");
        binders_.push_back(var);
        FormulaPtr body = parse_or();
        binders_.pop_back();
        return is_mu ? f_mu(var, std::move(body)) : f_nu(var, std::move(body));
      }
      case Token::Ident: {
        // G / F sugar when a formula follows, otherwise a plain identifier.
        if ((peek().text == "G" || peek().text == "F") && !is_bound(peek().text) &&
            starts_formula(peek(1))) {
          bool always = take().text == "G";
          FormulaPtr arg = parse_unary();
          std::string var = "_gf" + std::to_string(sugar_counter_++);
          return always ? f_nu(var, f_and(std::move(arg), f_box(f_var(var))))
                        : f_mu(var, f_or(std::move(arg), f_dia(f_var(var))));
        }
        Token id = take();
        return is_bound(id.text) ? f_var(id.text) : f_atom(id.text);
      }
      case Token::LParen: {
        take();
        FormulaPtr f = parse_or();
        expect(Token::RParen, "')'");
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  bool is_bound(const std::string& name) const {
    return std::find(binders_.begin(), binders_.end(), name) != binders_.end();
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::vector<std::string> binders_;
  int sugar_counter_ = 0;
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text) {
  return canonicalize(detail::FormulaParser(text).run());
}

namespace detail {
// `followed` is true when more tokens of an enclosing formula come after
// this node's text, in which case a fixpoint body must be parenthesized
// (it would otherwise swallow them).
inline void print_formula(const FormulaPtr& f, int min_prec, bool followed, std::string& out) {
  auto wrap = [&](auto&& body) {
    out += "(";
    body();
    out += ")";
  };
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Var:
      out += f->name;
      return;
    case FormulaKind::NegAtom:
      out += "!" + f->name;
      return;
    case FormulaKind::Or: {
      auto body = [&] {
        print_formula(f->left, 0, true, out);
        out += " | ";
        print_formula(f->right, 1, followed, out);
      };
      if (min_prec > 0)
        wrap([&] {
          print_formula(f->left, 0, true, out);
          out += " | ";
          print_formula(f->right, 1, false, out);
        });
      else
        body();
      return;
    }
    case FormulaKind::And: {
      if (min_prec > 1)
        wrap([&] {
          print_formula(f->left, 1, true, out);
          out += " & ";
          print_formula(f->right, 2, false, out);
        });
      else {
        print_formula(f->left, 1, true, out);
        out += " & ";
        print_formula(f->right, 2, followed, out);
      }
      return;
    }
    case FormulaKind::Diamond:
    case FormulaKind::Box:
      out += (f->kind == FormulaKind::Diamond) ? "<> " : "[] ";
      print_formula(f->left, 2, followed, out);
      return;
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      bool need_paren = followed || min_prec > 2;
      auto body = [&] {
        out += (f->kind == FormulaKind::Mu) ? "mu " : "nu ";
        out += f->name + ". ";
        print_formula(f->left, 0, false, out);
      };
      if (need_paren)
        wrap(body);
      else
        body();
      return;
    }
  }
}
}  // namespace detail

inline std::string print_formula(const FormulaPtr& f) {
  std::string out;
  detail::print_formula(f, 0, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Negation of sentences (De Morgan dual)

/// The dual formula: swaps and/or, diamond/box, mu/nu and negates atoms,
/// leaving fixpoint variables in place. Defined on sentences only; an
/// involution up to structural equality.
inline FormulaPtr negate(const FormulaPtr& f) {
  if (!free_variables(f).empty())
    throw std::invalid_argument("negate: formula has free fixpoint variables");
  std::function<FormulaPtr(const FormulaPtr&)> dual = [&](const FormulaPtr& n) -> FormulaPtr {
    switch (n->kind) {
      case FormulaKind::Atom: return f_neg_atom(n->name);
      case FormulaKind::NegAtom: return f_atom(n->name);
      case FormulaKind::Var: return n;
      case FormulaKind::And: return f_or(dual(n->left), dual(n->right));
      case FormulaKind::Or: return f_and(dual(n->left), dual(n->right));
      case FormulaKind::Diamond: return f_box(dual(n->left));
      case FormulaKind::Box: return f_dia(dual(n->left));
      case FormulaKind::Mu: return f_nu(n->name, dual(n->left));
      case FormulaKind::Nu: return f_mu(n->name, dual(n->left));
    }
    throw std::logic_error("negate: unreachable");
  };
  return dual(f);
}

// ---------------------------------------------------------------------------
// Composition

/// Substitutes `inner` for the atom P throughout `outer` (occurrences of
/// !P receive the negation of `inner`). Requires `inner` free for P in
/// `outer`: no free variable of `inner` may be captured by a fixpoint
/// binder whose scope contains an occurrence of P.
inline FormulaPtr compose(const FormulaPtr& outer, const std::string& p,
                          const FormulaPtr& inner) {
  std::set<std::string> inner_free = free_variables(inner);
  std::function<void(const FormulaPtr&, std::vector<std::string>&)> check =
      [&](const FormulaPtr& n, std::vector<std::string>& binders) {
        switch (n->kind) {
          case FormulaKind::Atom:
          case FormulaKind::NegAtom:
            if (n->name == p)
              for (const auto& b : binders)
                if (inner_free.count(b))
                  throw std::invalid_argument(
                      "compose: inner formula is not free for " + p +
                      " (its free variable " + b + " would be captured)");
            return;
          case FormulaKind::Var:
            return;
          case FormulaKind::Mu:
          case FormulaKind::Nu:
            binders.push_back(n->name);
            check(n->left, binders);
            binders.pop_back();
            return;
          default:
            check(n->left, binders);
            if (n->right) check(n->right, binders);
        }
      };
  std::vector<std::string> binders;
  check(outer, binders);

  std::function<FormulaPtr(const FormulaPtr&)> subst = [&](const FormulaPtr& n) -> FormulaPtr {
    switch (n->kind) {
      case FormulaKind::Atom:
        return n->name == p ? inner : n;
      case FormulaKind::NegAtom:
        return n->name == p ? negate(inner) : n;
      case FormulaKind::Var:
        return n;
      case FormulaKind::And: return f_and(subst(n->left), subst(n->right));
      case FormulaKind::Or: return f_or(subst(n->left), subst(n->right));
      case FormulaKind::Diamond: return f_dia(subst(n->left));
      case FormulaKind::Box: return f_box(subst(n->left));
      case FormulaKind::Mu: return f_mu(n->name, subst(n->left));
      case FormulaKind::Nu: return f_nu(n->name, subst(n->left));
    }
    throw std::logic_error("compose: unreachable");
  };
  return canonicalize(subst(outer));
}

// ---------------------------------------------------------------------------
// Alternation-depth classification
//
// Syntactic Niwinski-style depth: the length of the longest chain of
// nested fixpoint subformulas with alternating binders in which each
// binder's variable occurs free in the next chain element. This is a
// sound upper bound for the semantic hierarchy level; composition does
// not lengthen such chains, matching the composition-closed classes.

enum class HierarchyKind { Sigma, Pi, Delta };

struct HierarchyLevel {
  HierarchyKind kind;
  int index;

  bool operator==(const HierarchyLevel&) const = default;

  std::string to_string() const {
    switch (kind) {
      case HierarchyKind::Sigma: return "Sigma" + std::to_string(index);
      case HierarchyKind::Pi: return "Pi" + std::to_string(index);
      case HierarchyKind::Delta: return "Delta" + std::to_string(index);
    }
    return "?";
  }
};

namespace detail {

inline void all_fixpoints(const FormulaPtr& f, std::vector<const Formula*>& out) {
  if (!f) return;
  if (f->kind == FormulaKind::Mu || f->kind == FormulaKind::Nu) out.push_back(f.get());
  all_fixpoints(f->left, out);
  all_fixpoints(f->right, out);
}

inline bool occurs_free(const Formula* f, const std::string& x) {
  if (!f) return false;
  switch (f->kind) {
    case FormulaKind::Var:
      return f->name == x;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      if (f->name == x) return false;
      return occurs_free(f->left.get(), x);
    default:
      return occurs_free(f->left.get(), x) || occurs_free(f->right.get(), x);
  }
}

/// Longest alternating dependent chain starting at fixpoint node `p`.
inline int chain_len(const Formula* p, std::unordered_map<const Formula*, int>& memo) {
  auto it = memo.find(p);
  if (it != memo.end()) return it->second;
  std::vector<const Formula*> inner;
  all_fixpoints(p->left, inner);
  int best = 0;
  for (const Formula* q : inner) {
    if (q->kind == p->kind) continue;
    if (!occurs_free(q, p->name)) continue;
    best = std::max(best, chain_len(q, memo));
  }
  int result = 1 + best;
  memo[p] = result;
  return result;
}

}  // namespace detail

inline HierarchyLevel classify(const FormulaPtr& formula) {
  FormulaPtr f = canonicalize(formula);  // distinct binder names
  std::vector<const Formula*> fps;
  detail::all_fixpoints(f, fps);
  std::unordered_map<const Formula*, int> memo;
  int mu_depth = 0, nu_depth = 0;
  for (const Formula* p : fps) {
    int len = detail::chain_len(p, memo);
    if (p->kind == FormulaKind::Mu)
      mu_depth = std::max(mu_depth, len);
    else
      nu_depth = std::max(nu_depth, len);
  }
  if (mu_depth == 0 && nu_depth == 0) return {HierarchyKind::Delta, 0};
  if (mu_depth == nu_depth) return {HierarchyKind::Delta, mu_depth + 1};
  if (mu_depth > nu_depth) return {HierarchyKind::Sigma, mu_depth};
  return {HierarchyKind::Pi, nu_depth};
}

// ---------------------------------------------------------------------------
// Kripke semantics

struct EvalStats {
  int max_fixpoint_rounds = 0;  // iterations of the slowest fixpoint
};

namespace detail {

using Bits = std::vector<char>;

inline Bits eval_rec(const ColoredGraph& g, const FormulaPtr& f,
                     std::map<std::string, Bits>& env, EvalStats* stats) {
  const size_t n = static_cast<size_t>(g.num_vertices());
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom: {
      bool neg = f->kind == FormulaKind::NegAtom;
      Bits out(n, 0);
      for (size_t i = 0; i < n; ++i) {
        bool holds = g.satisfies(f->name, g.vertex_at(static_cast<int>(i)));
        out[i] = static_cast<char>(neg ? !holds : holds);
      }
      return out;
    }
    case FormulaKind::Var: {
      auto it = env.find(f->name);
      if (it == env.end())
        throw std::invalid_argument("evaluate: free fixpoint variable " + f->name);
      return it->second;
    }
    case FormulaKind::And: {
      Bits a = eval_rec(g, f->left, env, stats);
      Bits b = eval_rec(g, f->right, env, stats);
      for (size_t i = 0; i < n; ++i) a[i] = static_cast<char>(a[i] && b[i]);
      return a;
    }
    case FormulaKind::Or: {
      Bits a = eval_rec(g, f->left, env, stats);
      Bits b = eval_rec(g, f->right, env, stats);
      for (size_t i = 0; i < n; ++i) a[i] = static_cast<char>(a[i] || b[i]);
      return a;
    }
    case FormulaKind::Diamond:
    case FormulaKind::Box: {
      Bits s = eval_rec(g, f->left, env, stats);
      Bits out(n, 0);
      for (size_t i = 0; i < n; ++i) {
        bool ex = false, all = true;
        for (Vertex w : g.successors(g.vertex_at(static_cast<int>(i)))) {
          bool h = s[static_cast<size_t>(g.index_of(w))] != 0;
          ex = ex || h;
          all = all && h;
        }
        out[i] = static_cast<char>(f->kind == FormulaKind::Diamond ? ex : all);
      }
      return out;
    }
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      Bits current(n, static_cast<char>(f->kind == FormulaKind::Nu ? 1 : 0));
      // Save any shadowed binding of the same name.
      std::optional<Bits> shadowed;
      if (auto it = env.find(f->name); it != env.end()) shadowed = it->second;
      int rounds = 0;
      while (true) {
        ++rounds;
        env[f->name] = current;
        Bits next = eval_rec(g, f->left, env, stats);
        if (next == current) break;
        current = std::move(next);
      }
      if (shadowed)
        env[f->name] = std::move(*shadowed);
      else
        env.erase(f->name);
      if (stats) stats->max_fixpoint_rounds = std::max(stats->max_fixpoint_rounds, rounds);
      return current;
    }
  }
  throw std::logic_error("evaluate: unreachable");
}

}  // namespace detail

/// Exact denotation of a sentence by Knaster-Tarski iteration: least
/// fixpoints from the empty set upward, greatest from the full set
/// downward, each to stabilization. Returns the sorted satisfying
/// vertex set. Throws on undeclared predicates and free variables.
inline std::vector<Vertex> evaluate(const ColoredGraph& g, const FormulaPtr& f,
                                    EvalStats* stats = nullptr) {
  std::map<std::string, detail::Bits> env;
  detail::Bits bits = detail::eval_rec(g, f, env, stats);
  std::vector<Vertex> out;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out.push_back(g.vertex_at(static_cast<int>(i)));
  return out;
}

inline bool satisfies(const ColoredGraph& g, const FormulaPtr& f) {
  std::vector<Vertex> sat = evaluate(g, f);
  return std::binary_search(sat.begin(), sat.end(), g.point());
}

}  // namespace sccmu
