#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "easytype/ast.hpp"
#include "easytype/diagnostic.hpp"
#include "easytype/infer_base.hpp"
#include "easytype/types.hpp"
#include "easytype/unify.hpp"

namespace easytype {

// Baseline inference in the traditional order: the expected type is pushed
// down into subterms and every unification happens as soon as possible, so
// error locations show the usual bias (arguments unified left to right, the
// else branch against the then branch, arm n+1 against the previous arms).
namespace classic {

namespace detail {

[[noreturn]] inline void fail_unify(const UnifyConflict& c, const Span& span) {
  Diagnostic d;
  d.kind = DiagGenericUnify{c};
  d.span = span;
  throw InferFail{std::move(d)};
}

// unify(expected, actual); blames `span` on conflict.
inline void cunify(Ty* expected, Ty* actual, const Span& span) {
  if (auto c = unify(expected, actual)) fail_unify(*c, span);
}

inline void check(const TyEnv& env, const Expr& e, Ty* expected);
inline Scheme check_binding(const TyEnv& env, bool is_rec,
                            const std::string& name, const Expr& bound);

inline Ty* infer(const TyEnv& env, const Expr& e) {
  Ty* v = env.fresh();
  check(env, e, v);
  return v;
}

inline void check(const TyEnv& env, const Expr& e, Ty* expected) {
  TyStore& store = *env.store;
  if (auto* v = std::get_if<Var>(&e.node)) {
    const Scheme* sc = env.lookup(v->name);
    if (!sc) {
      Diagnostic d;
      d.kind = DiagUnboundVar{v->name, false};
      d.span = e.span;
      throw InferFail{std::move(d)};
    }
    cunify(expected, instantiate(*sc, env), e.span);
  } else if (std::get_if<ConstInt>(&e.node)) {
    cunify(expected, store.tint(), e.span);
  } else if (std::get_if<ConstFloat>(&e.node)) {
    cunify(expected, store.tfloat(), e.span);
  } else if (std::get_if<ConstBool>(&e.node)) {
    cunify(expected, store.tbool(), e.span);
  } else if (std::get_if<ConstString>(&e.node)) {
    cunify(expected, store.tstring(), e.span);
  } else if (std::get_if<ConstChar>(&e.node)) {
    cunify(expected, store.tchar(), e.span);
  } else if (std::get_if<ConstUnit>(&e.node)) {
    cunify(expected, store.tunit(), e.span);
  } else if (auto* v = std::get_if<Fun>(&e.node)) {
    TyEnv inner = env;
    std::vector<Ty*> params;
    params.reserve(v->params.size());
    for (auto& p : v->params) {
      Ty* pt = env.fresh();
      easytype::detail::check_pattern(inner, *p, pt, Mode::Classic);
      params.push_back(pt);
    }
    Ty* ret = env.fresh();
    // Linking the expected type before the body is checked is what makes a
    // recursive function's result visible inside its own body.
    cunify(expected, store.arrow_n(params, ret), e.span);
    check(inner, *v->body, ret);
  } else if (auto* v = std::get_if<App>(&e.node)) {
    Ty* fn_ty = infer(env, *v->fn);
    Ty* current = fn_ty;
    for (auto& arg : v->args) {
      Ty* r = repr(current);
      Ty* param = nullptr;
      if (r->tag == TyTag::Arrow) {
        param = r->param;
        current = r->result;
      } else if (r->tag == TyTag::Var) {
        Ty* p = env.fresh();
        Ty* res = env.fresh();
        cunify(r, store.arrow(p, res), e.span);
        param = p;
        current = res;
      } else {
        // Not a function (or applied to too many arguments).
        auto c = unify(r, store.arrow(env.fresh(), env.fresh()));
        fail_unify(*c, e.span);
      }
      check(env, *arg, param);
    }
    cunify(expected, current, e.span);
  } else if (auto* v = std::get_if<Let>(&e.node)) {
    TyEnv body_env = env;
    body_env.bind(v->name, check_binding(env, v->is_rec, v->name, *v->bound));
    check(body_env, *v->body, expected);
  } else if (auto* v = std::get_if<If>(&e.node)) {
    check(env, *v->cond, store.tbool());
    if (v->else_branch) {
      check(env, *v->then_branch, expected);
      check(env, *v->else_branch, expected);
    } else {
      check(env, *v->then_branch, store.tunit());
      cunify(expected, store.tunit(), e.span);
    }
  } else if (auto* v = std::get_if<Match>(&e.node)) {
    Ty* scrut = infer(env, *v->scrutinee);
    for (auto& arm : v->arms) {
      TyEnv arm_env = env;
      easytype::detail::check_pattern(arm_env, *arm.pattern, scrut,
                                      Mode::Classic);
      check(arm_env, *arm.body, expected);
    }
  } else if (auto* v = std::get_if<While>(&e.node)) {
    check(env, *v->cond, store.tbool());
    check(env, *v->body, store.tunit());
    cunify(expected, store.tunit(), e.span);
  } else if (auto* v = std::get_if<Seq>(&e.node)) {
    check(env, *v->first, store.tunit());  // strict sequence
    check(env, *v->second, expected);
  } else if (auto* v = std::get_if<Tuple>(&e.node)) {
    std::vector<Ty*> elems;
    elems.reserve(v->elems.size());
    for (std::size_t i = 0; i < v->elems.size(); ++i)
      elems.push_back(env.fresh());
    cunify(expected, store.tuple(elems), e.span);
    for (std::size_t i = 0; i < v->elems.size(); ++i)
      check(env, *v->elems[i], elems[i]);
  } else if (auto* v = std::get_if<ListLit>(&e.node)) {
    Ty* elem = env.fresh();
    cunify(expected, store.tlist(elem), e.span);
    for (auto& el : v->elems) check(env, *el, elem);
  } else if (auto* v = std::get_if<Annot>(&e.node)) {
    Ty* t = ty_of_annotation(v->type, env);
    check(env, *v->expr, t);
    cunify(expected, t, e.span);
  }
}

// Checks `let [rec] name = bound` and returns the scheme to bind.
// Generalizes only syntactic values.
inline Scheme check_binding(const TyEnv& env, bool is_rec,
                            const std::string& name, const Expr& bound) {
  TyEnv inner = env;
  inner.current_level = env.current_level + 1;
  Ty* t = nullptr;
  if (is_rec) {
    t = inner.fresh();
    inner.bind(name, mono(t));
    check(inner, bound, t);
  } else {
    t = infer(inner, bound);
  }
  return is_syntactic_value(bound) ? generalize(env, t) : mono(t);
}

}  // namespace detail

}  // namespace classic

/// Classic-order inference. Returns the principal type of `e`, or the
/// diagnostic located where the biased algorithm first detects a clash.
inline std::variant<Ty*, Diagnostic> infer_classic(const TyEnv& env,
                                                   const Expr& e) {
  try {
    return classic::detail::infer(env, e);
  } catch (InferFail& f) {
    return std::move(f.diag);
  }
}

/// Checks definitions in order, extending the environment after each
/// success; stops at the first failing definition.
inline ProgramCheck check_program_classic(TyEnv& env, const Program& prog) {
  ProgramCheck result;
  for (std::size_t i = 0; i < prog.defs.size(); ++i) {
    const TopDef& def = prog.defs[i];
    try {
      Scheme sc =
          classic::detail::check_binding(env, def.is_rec, def.name, *def.body);
      result.schemes.emplace_back(def.name, sc);
      env.bind(def.name, std::move(sc));
    } catch (InferFail& f) {
      result.failure =
          FirstFailure{static_cast<int>(i) + 1, std::move(f.diag)};
      return result;
    }
  }
  return result;
}

}  // namespace easytype
