#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "easytype/ast.hpp"
#include "easytype/diagnostic.hpp"
#include "easytype/types.hpp"
#include "easytype/unify.hpp"

namespace easytype {

enum class Mode { Classic, Easy };

/// Syntactic values may be generalized at a let; anything that can allocate
/// or run (applications in particular) stays monomorphic so references
/// remain sound.
inline bool is_syntactic_value(const Expr& e) {
  if (e.is<Var>() || e.is<ConstInt>() || e.is<ConstFloat>() ||
      e.is<ConstBool>() || e.is<ConstString>() || e.is<ConstChar>() ||
      e.is<ConstUnit>() || e.is<Fun>())
    return true;
  if (auto* t = e.as<Tuple>()) {
    for (auto& el : t->elems)
      if (!is_syntactic_value(*el)) return false;
    return true;
  }
  if (auto* l = e.as<ListLit>()) {
    for (auto& el : l->elems)
      if (!is_syntactic_value(*el)) return false;
    return true;
  }
  if (auto* a = e.as<Annot>()) return is_syntactic_value(*a->expr);
  return false;
}

/// Builds a store type from a display tree. Variables are resolved through
/// `vars`, so names shared within one conversion batch map to one node.
inline Ty* ty_from_display(const DisplayTy& d, TyStore& store,
                           std::map<std::string, Ty*>& vars, int level) {
  switch (d.kind) {
    case DisplayTy::Kind::Var: {
      auto it = vars.find(d.name);
      if (it != vars.end()) return it->second;
      Ty* v = store.var(level);
      vars.emplace(d.name, v);
      return v;
    }
    case DisplayTy::Kind::Arrow:
      return store.arrow(ty_from_display(d.children[0], store, vars, level),
                         ty_from_display(d.children[1], store, vars, level));
    case DisplayTy::Kind::Tuple: {
      std::vector<Ty*> elems;
      for (auto& c : d.children)
        elems.push_back(ty_from_display(c, store, vars, level));
      return store.tuple(std::move(elems));
    }
    case DisplayTy::Kind::Constr: {
      std::vector<Ty*> args;
      for (auto& c : d.children)
        args.push_back(ty_from_display(c, store, vars, level));
      TyCon con = TyCon::Int;
      if (d.name == "int") con = TyCon::Int;
      else if (d.name == "float") con = TyCon::Float;
      else if (d.name == "bool") con = TyCon::Bool;
      else if (d.name == "string") con = TyCon::String;
      else if (d.name == "char") con = TyCon::Char;
      else if (d.name == "unit") con = TyCon::Unit;
      else if (d.name == "list") con = TyCon::List;
      else if (d.name == "ref") con = TyCon::Ref;
      return store.constr(con, std::move(args));
    }
  }
  return store.tunit();
}

/// Type of an annotation `(e : ty)`. Type variables scope over the single
/// annotation.
inline Ty* ty_of_annotation(const DisplayTy& d, const TyEnv& env) {
  std::map<std::string, Ty*> vars;
  return ty_from_display(d, *env.store, vars, env.current_level);
}

namespace detail {

[[noreturn]] inline void fail_pattern(Mode mode, const Span& span,
                                      const UnifyConflict& conflict,
                                      DisplayTy expected, DisplayTy actual) {
  Diagnostic d;
  d.span = span;
  if (mode == Mode::Easy) {
    d.kind = DiagSubexprMismatch{SubexprRole::PatternOfMatch,
                                 std::move(expected), std::move(actual)};
  } else {
    d.kind = DiagGenericUnify{conflict};
  }
  throw InferFail{std::move(d)};
}

// Builds the pattern's type, binding its variables (monomorphically) into
// `env`. Structural constraints inside the pattern (cons cells) unify as
// they are built.
inline Ty* build_pattern_type(TyEnv& env, const Pattern& p, Mode mode) {
  TyStore& store = *env.store;
  if (auto* v = std::get_if<PVar>(&p.node)) {
    Ty* t = env.fresh();
    env.bind(v->name, mono(t));
    return t;
  }
  if (std::get_if<PWildcard>(&p.node)) return env.fresh();
  if (std::get_if<PConstInt>(&p.node)) return store.tint();
  if (std::get_if<PConstFloat>(&p.node)) return store.tfloat();
  if (std::get_if<PConstBool>(&p.node)) return store.tbool();
  if (std::get_if<PConstString>(&p.node)) return store.tstring();
  if (std::get_if<PConstUnit>(&p.node)) return store.tunit();
  if (auto* v = std::get_if<PTuple>(&p.node)) {
    std::vector<Ty*> elems;
    for (auto& e : v->elems)
      elems.push_back(build_pattern_type(env, *e, mode));
    return store.tuple(std::move(elems));
  }
  if (std::get_if<PNil>(&p.node)) return store.tlist(env.fresh());
  if (auto* v = std::get_if<PCons>(&p.node)) {
    Ty* head = build_pattern_type(env, *v->head, mode);
    Ty* tail = build_pattern_type(env, *v->tail, mode);
    Ty* want = store.tlist(head);
    NamingContext naming;
    DisplayTy expected = snapshot(want, naming);
    DisplayTy actual = snapshot(tail, naming);
    if (auto c = unify(want, tail))
      fail_pattern(mode, v->tail->span, *c, std::move(expected),
                   std::move(actual));
    return want;
  }
  return env.fresh();
}

// Checks a pattern against the type it is matched with; extends env with
// the pattern's bindings.
inline void check_pattern(TyEnv& env, const Pattern& p, Ty* expected,
                          Mode mode) {
  NamingContext naming;
  DisplayTy expected_snap = snapshot(expected, naming);
  Ty* pat_ty = build_pattern_type(env, p, mode);
  DisplayTy actual_snap = snapshot(pat_ty, naming);
  if (auto c = unify(expected, pat_ty))
    fail_pattern(mode, p.span, *c, std::move(expected_snap),
                 std::move(actual_snap));
}

}  // namespace detail

/// Per-definition result of checking a whole program.
struct FirstFailure {
  int def_index = 0;  // 1-based index of the failing definition
  Diagnostic diag;
};

struct ProgramCheck {
  // Schemes of the definitions checked so far, in order. On failure this
  // holds every definition before the failing one.
  std::vector<std::pair<std::string, Scheme>> schemes;
  std::optional<FirstFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

}  // namespace easytype
