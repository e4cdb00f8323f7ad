#pragma once

#include <map>
#include <optional>
#include <span>
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

// ---------------------------------------------------------------------------
// Suggestion detectors. Both operate on the snapshots carried by a conflict
// (never on the live store), checking the whole-operand pair first and the
// innermost pair second.

namespace detail {

inline bool unit_arrow_shape(const DisplayTy& t) {
  return t.is_arrow() && t.children[0].is_constr("unit");
}

inline bool ref_shape(const DisplayTy& t) {
  return t.kind == DisplayTy::Kind::Constr && t.name == "ref" &&
         t.children.size() == 1;
}

// Would `payload` unify with `other`? Tested on fresh copies in a scratch
// store so the session's link state stays untouched.
inline bool plausibly_unifies(const DisplayTy& payload,
                              const DisplayTy& other) {
  TyStore scratch;
  std::map<std::string, Ty*> vars;  // shared: both sides name vars alike
  Ty* a = ty_from_display(payload, scratch, vars, 0);
  Ty* b = ty_from_display(other, scratch, vars, 0);
  return !unify(a, b).has_value();
}

}  // namespace detail

/// Missing-`()` detector: fires when one side of the conflict has shape
/// `unit -> t` and the other does not. When the conflicting expression was
/// required to have type unit, the location is certain and the rendered
/// sentence drops "somewhere".
inline std::optional<Suggestion> detect_missing_unit(
    const UnifyConflict& c, bool expected_is_unit_context) {
  auto try_pair = [&](const DisplayTy& a,
                      const DisplayTy& b) -> std::optional<Suggestion> {
    bool ua = detail::unit_arrow_shape(a);
    bool ub = detail::unit_arrow_shape(b);
    if (ua == ub) return std::nullopt;
    return Suggestion{Suggestion::Kind::MissingUnit, expected_is_unit_context,
                      ""};
  };
  if (auto s = try_pair(c.whole_left, c.whole_right)) return s;
  return try_pair(c.left, c.right);
}

/// Missing-`!` detector: fires when one side has shape `t ref` and `t`
/// would plausibly unify with the other side, i.e. a dereference would fix
/// the conflict. The sentence always keeps "somewhere": the `!` may be
/// missing at the reported location or inside a function it calls.
inline std::optional<Suggestion> detect_missing_bang(const UnifyConflict& c) {
  auto try_pair = [](const DisplayTy& a,
                     const DisplayTy& b) -> std::optional<Suggestion> {
    if (detail::ref_shape(a) && !detail::ref_shape(b) &&
        detail::plausibly_unifies(a.children[0], b))
      return Suggestion{Suggestion::Kind::MissingBang, false, ""};
    return std::nullopt;
  };
  if (auto s = try_pair(c.whole_left, c.whole_right)) return s;
  if (auto s = try_pair(c.whole_right, c.whole_left)) return s;
  if (auto s = try_pair(c.left, c.right)) return s;
  return try_pair(c.right, c.left);
}

/// Environment lookup with the missing-`rec` heuristic: a shadow entry for
/// `name` means we are inside the body of a non-recursive `let name = ...`,
/// so an unbound use of the name probably wants `let rec`.
inline std::variant<const Scheme*, Diagnostic> lookup_with_shadow(
    const TyEnv& env, const std::string& name, const Span& span) {
  if (const Scheme* sc = env.lookup(name)) return sc;
  Diagnostic d;
  d.kind = DiagUnboundVar{name, env.has_shadow(name)};
  d.span = span;
  if (env.has_shadow(name))
    d.suggestions.push_back(Suggestion{Suggestion::Kind::MissingRec, false,
                                       name});
  return d;
}

namespace easy {
namespace detail {

using easytype::detail::check_pattern;

inline void attach_suggestions(Diagnostic& d, const UnifyConflict& c,
                               bool unit_context) {
  if (auto s = detect_missing_unit(c, unit_context)) d.suggestions.push_back(*s);
  if (auto s = detect_missing_bang(c)) d.suggestions.push_back(*s);
}

[[noreturn]] inline void fail(Diagnostic::Kind kind, const Span& span,
                              const UnifyConflict* conflict = nullptr,
                              bool unit_context = false) {
  Diagnostic d;
  d.kind = std::move(kind);
  d.span = span;
  if (conflict) attach_suggestions(d, *conflict, unit_context);
  throw InferFail{std::move(d)};
}

inline Ty* infer(const TyEnv& env, const Expr& e);
inline Scheme check_binding(const TyEnv& env, bool is_rec,
                            const std::string& name, const Expr& bound);

/// Independent check of a construct's subexpression against the type the
/// construct requires (bool for conditions, unit for statement positions).
inline void check_subexpr_role(const TyEnv& env, const Expr& e,
                               SubexprRole role, Ty* required) {
  Ty* actual = infer(env, e);
  NamingContext naming;
  DisplayTy expected_snap = snapshot(required, naming);
  DisplayTy actual_snap = snapshot(actual, naming);
  if (auto c = unify(required, actual)) {
    bool unit_ctx = role == SubexprRole::SeqLeft ||
                    role == SubexprRole::WhileBody;
    fail(DiagSubexprMismatch{role, std::move(expected_snap),
                             std::move(actual_snap)},
         e.span, &*c, unit_ctx);
  }
}

// The application rule. The function type and every argument type arrive
// fully inferred and untouched by each other; this routine decomposes the
// function type, saves copies of everything it is about to report, and only
// then starts unifying, pairwise. On success nothing else is unified and
// the decomposed return type is the result.
inline Ty* apply_args(const TyEnv& env, Ty* fn_ty,
                      std::span<Ty* const> arg_tys, const Span& app_span) {
  const int n = static_cast<int>(arg_tys.size());
  ArrowDecomp d = arrow_decompose(fn_ty, n);
  const int k = static_cast<int>(d.params.size());

  NamingContext naming;
  std::vector<DisplayTy> expected_snaps;
  expected_snaps.reserve(k);
  for (Ty* p : d.params) expected_snaps.push_back(snapshot(p, naming));
  std::vector<DisplayTy> actual_snaps;
  actual_snaps.reserve(n);
  for (Ty* a : arg_tys) actual_snaps.push_back(snapshot(a, naming));
  DisplayTy ret_snap = snapshot(d.ret, naming);

  for (int i = 0; i < k; ++i) {
    if (auto c = unify(d.params[i], arg_tys[i])) {
      std::vector<ArgRow> rows;
      rows.reserve(k);
      for (int j = 0; j < k; ++j)
        rows.push_back(ArgRow{j + 1, expected_snaps[j], actual_snaps[j],
                              j == i});
      fail(DiagAppMismatch{std::move(rows)}, app_span, &*c);
    }
  }
  if (d.shortfall == 0) return d.ret;

  // More arguments than visible arrows. What the residual return type looks
  // like after the pairwise round decides what may be claimed.
  Ty* residual = repr(d.ret);
  std::span<Ty* const> rest = arg_tys.subspan(k);
  if (residual->tag == TyTag::Var) {
    Ty* result = env.fresh();
    Ty* rest_arrow = result;
    for (auto it = rest.rbegin(); it != rest.rend(); ++it)
      rest_arrow = env.store->arrow(*it, rest_arrow);
    if (auto c = unify(residual, rest_arrow))
      fail(DiagIllTypedApp{std::move(ret_snap)}, app_span, &*c);
    return result;
  }
  if (residual->tag == TyTag::Arrow) {
    // The unifications above revealed more arrows; keep consuming. If the
    // continuation fails we only claim the application ill-typed, showing
    // the original (variable) return type.
    try {
      return apply_args(env, residual, rest, app_span);
    } catch (InferFail& f) {
      if (auto* tm = f.diag.as<DiagTooManyArgs>())
        fail(DiagTooManyArgs{k + tm->expected_arity, n}, app_span);
      Diagnostic d2;
      d2.kind = DiagIllTypedApp{std::move(ret_snap)};
      d2.span = app_span;
      d2.suggestions = std::move(f.diag.suggestions);
      throw InferFail{std::move(d2)};
    }
  }
  fail(DiagTooManyArgs{k, n}, app_span);
}

inline Ty* check_app(const TyEnv& env, const App& app, const Span& app_span) {
  Ty* fn_ty = infer(env, *app.fn);
  std::vector<Ty*> arg_tys;
  arg_tys.reserve(app.args.size());
  for (auto& a : app.args) arg_tys.push_back(infer(env, *a));
  return apply_args(env, fn_ty, arg_tys, app_span);
}

inline Ty* check_if(const TyEnv& env, const If& node, const Span& span) {
  check_subexpr_role(env, *node.cond, SubexprRole::IfCondition,
                     env.store->tbool());
  Ty* then_ty = infer(env, *node.then_branch);
  if (!node.else_branch) {
    // An if without else has type unit.
    NamingContext naming;
    DisplayTy then_snap = snapshot(then_ty, naming);
    if (auto c = unify(then_ty, env.store->tunit()))
      fail(DiagMissingElse{std::move(then_snap)}, span, &*c, true);
    return then_ty;
  }
  Ty* else_ty = infer(env, *node.else_branch);
  NamingContext naming;
  DisplayTy then_snap = snapshot(then_ty, naming);
  DisplayTy else_snap = snapshot(else_ty, naming);
  if (auto c = unify(then_ty, else_ty)) {
    BranchReport report;
    report.construct = BranchReport::Construct::If;
    report.accumulated = std::move(then_snap);
    report.offending = std::move(else_snap);
    report.offending_index = 2;
    report.offending_span = node.else_branch->span;
    report.counterpart_span = node.then_branch->span;
    fail(DiagBranchMismatch{std::move(report)},
         hull(node.then_branch->span, node.else_branch->span), &*c);
  }
  return then_ty;
}

inline Ty* check_match(const TyEnv& env, const Match& node) {
  Ty* scrut_ty = infer(env, *node.scrutinee);
  NamingContext naming;
  std::vector<Ty*> arm_tys;
  std::vector<DisplayTy> arm_snaps;
  arm_tys.reserve(node.arms.size());
  for (auto& arm : node.arms) {
    TyEnv arm_env = env;
    check_pattern(arm_env, *arm.pattern, scrut_ty, Mode::Easy);
    Ty* t = infer(arm_env, *arm.body);
    arm_tys.push_back(t);
    arm_snaps.push_back(snapshot(t, naming));
  }
  // All branches are typed; only now unify them, one by one. The enclosing
  // context sees the match's type only after every branch agrees.
  Ty* acc = arm_tys[0];
  for (std::size_t i = 1; i < arm_tys.size(); ++i) {
    DisplayTy acc_snap = snapshot(acc, naming);
    if (auto c = unify(acc, arm_tys[i])) {
      BranchReport report;
      report.construct = BranchReport::Construct::Match;
      report.accumulated = std::move(acc_snap);
      report.offending = arm_snaps[i];
      report.offending_index = static_cast<int>(i) + 1;
      report.offending_span = node.arms[i].body->span;
      report.counterpart_span =
          hull(node.arms.front().body->span, node.arms[i - 1].body->span);
      fail(DiagBranchMismatch{std::move(report)},
           hull(node.arms.front().body->span, node.arms[i].body->span), &*c);
    }
  }
  return acc;
}

inline Ty* infer(const TyEnv& env, const Expr& e) {
  TyStore& store = *env.store;
  if (auto* v = std::get_if<Var>(&e.node)) {
    auto found = lookup_with_shadow(env, v->name, e.span);
    if (auto* d = std::get_if<Diagnostic>(&found))
      throw InferFail{std::move(*d)};
    return instantiate(*std::get<const Scheme*>(found), env);
  }
  if (std::get_if<ConstInt>(&e.node)) return store.tint();
  if (std::get_if<ConstFloat>(&e.node)) return store.tfloat();
  if (std::get_if<ConstBool>(&e.node)) return store.tbool();
  if (std::get_if<ConstString>(&e.node)) return store.tstring();
  if (std::get_if<ConstChar>(&e.node)) return store.tchar();
  if (std::get_if<ConstUnit>(&e.node)) return store.tunit();
  if (auto* v = std::get_if<Fun>(&e.node)) {
    TyEnv inner = env;
    std::vector<Ty*> params;
    params.reserve(v->params.size());
    for (auto& p : v->params) {
      Ty* pt = env.fresh();
      check_pattern(inner, *p, pt, Mode::Easy);
      params.push_back(pt);
    }
    Ty* body_ty = infer(inner, *v->body);
    return store.arrow_n(params, body_ty);
  }
  if (auto* v = std::get_if<App>(&e.node)) return check_app(env, *v, e.span);
  if (auto* v = std::get_if<Let>(&e.node)) {
    TyEnv body_env = env;
    body_env.bind(v->name,
                  check_binding(env, v->is_rec, v->name, *v->bound));
    return infer(body_env, *v->body);
  }
  if (auto* v = std::get_if<If>(&e.node)) return check_if(env, *v, e.span);
  if (auto* v = std::get_if<Match>(&e.node)) return check_match(env, *v);
  if (auto* v = std::get_if<While>(&e.node)) {
    check_subexpr_role(env, *v->cond, SubexprRole::WhileCondition,
                       store.tbool());
    check_subexpr_role(env, *v->body, SubexprRole::WhileBody, store.tunit());
    return store.tunit();
  }
  if (auto* v = std::get_if<Seq>(&e.node)) {
    check_subexpr_role(env, *v->first, SubexprRole::SeqLeft, store.tunit());
    return infer(env, *v->second);
  }
  if (auto* v = std::get_if<Tuple>(&e.node)) {
    std::vector<Ty*> elems;
    elems.reserve(v->elems.size());
    for (auto& el : v->elems) elems.push_back(infer(env, *el));
    return store.tuple(std::move(elems));
  }
  if (auto* v = std::get_if<ListLit>(&e.node)) {
    Ty* elem = env.fresh();
    for (auto& el : v->elems) {
      Ty* t = infer(env, *el);
      if (auto c = unify(elem, t))
        fail(DiagGenericUnify{*c}, el->span, &*c);
    }
    return store.tlist(elem);
  }
  if (auto* v = std::get_if<Annot>(&e.node)) {
    Ty* want = ty_of_annotation(v->type, env);
    Ty* got = infer(env, *v->expr);
    if (auto c = unify(want, got)) fail(DiagGenericUnify{*c}, e.span, &*c);
    return want;
  }
  return store.tunit();
}

// As in classic mode, but the body of a non-recursive let is checked with a
// shadow entry for the bound name, enabling the missing-`rec` suggestion.
inline Scheme check_binding(const TyEnv& env, bool is_rec,
                            const std::string& name, const Expr& bound) {
  TyEnv inner = env;
  inner.current_level = env.current_level + 1;
  Ty* t = nullptr;
  if (is_rec) {
    t = inner.fresh();
    inner.bind(name, mono(t));
    Ty* got = infer(inner, bound);
    if (auto c = unify(t, got)) fail(DiagGenericUnify{*c}, bound.span, &*c);
  } else {
    if (name != "_") inner.add_shadow(name);
    t = infer(inner, bound);
  }
  return is_syntactic_value(bound) ? generalize(env, t) : mono(t);
}

}  // namespace detail
}  // namespace easy

/// Bias-reduced inference: arguments and branches are typed independently
/// and reported from snapshots; construct-specific subexpression checks and
/// the three suggestion heuristics are applied on the way out.
inline std::variant<Ty*, Diagnostic> infer_easy(const TyEnv& env,
                                                const Expr& e) {
  try {
    return easy::detail::infer(env, e);
  } catch (InferFail& f) {
    return std::move(f.diag);
  }
}

/// Whole-program checking in easy mode (used by tests and the corpus
/// runner; the CLI driver re-checks only the first failing definition).
inline ProgramCheck check_program_easy(TyEnv& env, const Program& prog) {
  ProgramCheck result;
  for (std::size_t i = 0; i < prog.defs.size(); ++i) {
    const TopDef& def = prog.defs[i];
    try {
      Scheme sc =
          easy::detail::check_binding(env, def.is_rec, def.name, *def.body);
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

/// Re-checks a single definition (the driver's pass two).
inline std::optional<Diagnostic> check_def_easy(TyEnv& env,
                                                const TopDef& def) {
  try {
    Scheme sc =
        easy::detail::check_binding(env, def.is_rec, def.name, *def.body);
    env.bind(def.name, std::move(sc));
    return std::nullopt;
  } catch (InferFail& f) {
    return std::move(f.diag);
  }
}

}  // namespace easytype
