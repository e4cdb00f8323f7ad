#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "easytype/display.hpp"
#include "easytype/span.hpp"

namespace easytype {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Pattern;
using PatternPtr = std::unique_ptr<Pattern>;

// ---------------------------------------------------------------------------
// Patterns

struct PVar {
  std::string name;
};
struct PWildcard {};
struct PConstInt {
  long long value = 0;
};
struct PConstFloat {
  double value = 0;
};
struct PConstBool {
  bool value = false;
};
struct PConstString {
  std::string value;
};
struct PConstUnit {};
struct PTuple {
  std::vector<PatternPtr> elems;  // arity >= 2
};
struct PNil {};
struct PCons {
  PatternPtr head;
  PatternPtr tail;
};

struct Pattern {
  using Node = std::variant<PVar, PWildcard, PConstInt, PConstFloat,
                            PConstBool, PConstString, PConstUnit, PTuple, PNil,
                            PCons>;
  Node node;
  Span span;
};

// ---------------------------------------------------------------------------
// Expressions
//
// Operators have no dedicated variants: `a + b` is App(Var "+", [a; b]) and
// `!r` is App(Var "!", [r]). Application is n-ary; the parser flattens
// `f a b` so that an App's fn is never itself an App.

struct Var {
  std::string name;
};
struct ConstInt {
  long long value = 0;
};
struct ConstFloat {
  double value = 0;
  std::string text;  // literal as written, kept for exact reprinting
};
struct ConstBool {
  bool value = false;
};
struct ConstString {
  std::string value;
};
struct ConstChar {
  char value = 0;
};
struct ConstUnit {};
struct Fun {
  std::vector<PatternPtr> params;  // nonempty
  ExprPtr body;
};
struct App {
  ExprPtr fn;                // never an App itself
  std::vector<ExprPtr> args;  // nonempty
};
struct Let {
  bool is_rec = false;
  std::string name;  // "_" binds nothing
  Span name_span;
  ExprPtr bound;
  ExprPtr body;  // always present for let-in expressions
};
struct If {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;  // may be null
};
struct MatchArm {
  PatternPtr pattern;
  ExprPtr body;
};
struct Match {
  ExprPtr scrutinee;
  std::vector<MatchArm> arms;  // nonempty
};
struct While {
  ExprPtr cond;
  ExprPtr body;
};
struct Seq {
  ExprPtr first;
  ExprPtr second;
};
struct Tuple {
  std::vector<ExprPtr> elems;  // arity >= 2
};
struct ListLit {
  std::vector<ExprPtr> elems;
};
struct Annot {
  ExprPtr expr;
  DisplayTy type;  // surface type expression
};

struct Expr {
  using Node = std::variant<Var, ConstInt, ConstFloat, ConstBool, ConstString,
                            ConstChar, ConstUnit, Fun, App, Let, If, Match,
                            While, Seq, Tuple, ListLit, Annot>;
  Node node;
  Span span;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

inline ExprPtr make_expr(Expr::Node node, Span span) {
  auto e = std::make_unique<Expr>();
  e->node = std::move(node);
  e->span = std::move(span);
  return e;
}

inline PatternPtr make_pattern(Pattern::Node node, Span span) {
  auto p = std::make_unique<Pattern>();
  p->node = std::move(node);
  p->span = std::move(span);
  return p;
}

// ---------------------------------------------------------------------------
// Top-level definitions

struct TopDef {
  bool is_rec = false;
  std::string name;
  Span name_span;
  ExprPtr body;
  Span span;
};

struct Program {
  std::vector<TopDef> defs;  // checked in order
};

// ---------------------------------------------------------------------------
// Structural equality ignoring spans (used by round-trip properties).

inline bool equal_ignoring_spans(const Expr& a, const Expr& b);

inline bool equal_ignoring_spans(const Pattern& a, const Pattern& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* v = std::get_if<PVar>(&a.node))
    return v->name == std::get<PVar>(b.node).name;
  if (auto* v = std::get_if<PConstInt>(&a.node))
    return v->value == std::get<PConstInt>(b.node).value;
  if (auto* v = std::get_if<PConstFloat>(&a.node))
    return v->value == std::get<PConstFloat>(b.node).value;
  if (auto* v = std::get_if<PConstBool>(&a.node))
    return v->value == std::get<PConstBool>(b.node).value;
  if (auto* v = std::get_if<PConstString>(&a.node))
    return v->value == std::get<PConstString>(b.node).value;
  if (auto* v = std::get_if<PTuple>(&a.node)) {
    auto& w = std::get<PTuple>(b.node);
    if (v->elems.size() != w.elems.size()) return false;
    for (std::size_t i = 0; i < v->elems.size(); ++i)
      if (!equal_ignoring_spans(*v->elems[i], *w.elems[i])) return false;
    return true;
  }
  if (auto* v = std::get_if<PCons>(&a.node)) {
    auto& w = std::get<PCons>(b.node);
    return equal_ignoring_spans(*v->head, *w.head) &&
           equal_ignoring_spans(*v->tail, *w.tail);
  }
  return true;  // PWildcard, PConstUnit, PNil
}

inline bool equal_ignoring_spans(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* v = std::get_if<Var>(&a.node))
    return v->name == std::get<Var>(b.node).name;
  if (auto* v = std::get_if<ConstInt>(&a.node))
    return v->value == std::get<ConstInt>(b.node).value;
  if (auto* v = std::get_if<ConstFloat>(&a.node))
    return v->value == std::get<ConstFloat>(b.node).value;
  if (auto* v = std::get_if<ConstBool>(&a.node))
    return v->value == std::get<ConstBool>(b.node).value;
  if (auto* v = std::get_if<ConstString>(&a.node))
    return v->value == std::get<ConstString>(b.node).value;
  if (auto* v = std::get_if<ConstChar>(&a.node))
    return v->value == std::get<ConstChar>(b.node).value;
  if (auto* v = std::get_if<Fun>(&a.node)) {
    auto& w = std::get<Fun>(b.node);
    if (v->params.size() != w.params.size()) return false;
    for (std::size_t i = 0; i < v->params.size(); ++i)
      if (!equal_ignoring_spans(*v->params[i], *w.params[i])) return false;
    return equal_ignoring_spans(*v->body, *w.body);
  }
  if (auto* v = std::get_if<App>(&a.node)) {
    auto& w = std::get<App>(b.node);
    if (v->args.size() != w.args.size()) return false;
    if (!equal_ignoring_spans(*v->fn, *w.fn)) return false;
    for (std::size_t i = 0; i < v->args.size(); ++i)
      if (!equal_ignoring_spans(*v->args[i], *w.args[i])) return false;
    return true;
  }
  if (auto* v = std::get_if<Let>(&a.node)) {
    auto& w = std::get<Let>(b.node);
    return v->is_rec == w.is_rec && v->name == w.name &&
           equal_ignoring_spans(*v->bound, *w.bound) &&
           equal_ignoring_spans(*v->body, *w.body);
  }
  if (auto* v = std::get_if<If>(&a.node)) {
    auto& w = std::get<If>(b.node);
    if (static_cast<bool>(v->else_branch) != static_cast<bool>(w.else_branch))
      return false;
    if (!equal_ignoring_spans(*v->cond, *w.cond)) return false;
    if (!equal_ignoring_spans(*v->then_branch, *w.then_branch)) return false;
    return !v->else_branch ||
           equal_ignoring_spans(*v->else_branch, *w.else_branch);
  }
  if (auto* v = std::get_if<Match>(&a.node)) {
    auto& w = std::get<Match>(b.node);
    if (v->arms.size() != w.arms.size()) return false;
    if (!equal_ignoring_spans(*v->scrutinee, *w.scrutinee)) return false;
    for (std::size_t i = 0; i < v->arms.size(); ++i) {
      if (!equal_ignoring_spans(*v->arms[i].pattern, *w.arms[i].pattern))
        return false;
      if (!equal_ignoring_spans(*v->arms[i].body, *w.arms[i].body))
        return false;
    }
    return true;
  }
  if (auto* v = std::get_if<While>(&a.node)) {
    auto& w = std::get<While>(b.node);
    return equal_ignoring_spans(*v->cond, *w.cond) &&
           equal_ignoring_spans(*v->body, *w.body);
  }
  if (auto* v = std::get_if<Seq>(&a.node)) {
    auto& w = std::get<Seq>(b.node);
    return equal_ignoring_spans(*v->first, *w.first) &&
           equal_ignoring_spans(*v->second, *w.second);
  }
  if (auto* v = std::get_if<Tuple>(&a.node)) {
    auto& w = std::get<Tuple>(b.node);
    if (v->elems.size() != w.elems.size()) return false;
    for (std::size_t i = 0; i < v->elems.size(); ++i)
      if (!equal_ignoring_spans(*v->elems[i], *w.elems[i])) return false;
    return true;
  }
  if (auto* v = std::get_if<ListLit>(&a.node)) {
    auto& w = std::get<ListLit>(b.node);
    if (v->elems.size() != w.elems.size()) return false;
    for (std::size_t i = 0; i < v->elems.size(); ++i)
      if (!equal_ignoring_spans(*v->elems[i], *w.elems[i])) return false;
    return true;
  }
  if (auto* v = std::get_if<Annot>(&a.node)) {
    auto& w = std::get<Annot>(b.node);
    return v->type == w.type && equal_ignoring_spans(*v->expr, *w.expr);
  }
  return true;  // ConstUnit
}

}  // namespace easytype
