#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "easytype/types.hpp"

namespace easytype {

/// Result of a failed unification. All four fields are snapshots taken at
/// failure time: the innermost clashing pair and the two whole operands.
/// The store may be partially updated at that point; callers that need the
/// pre-unification view take their own snapshots beforehand.
struct UnifyConflict {
  enum class Kind { Mismatch, OccursCheck };
  Kind kind = Kind::Mismatch;
  DisplayTy left;   // subterm of whole_left
  DisplayTy right;  // subterm of whole_right
  DisplayTy whole_left;
  DisplayTy whole_right;
};

/// True iff `v` is reachable in the repr-normalized `t`. Read-only.
inline bool occurs(const Ty* v, const Ty* t) {
  const Ty* r = repr_nc(t);
  if (r == v) return true;
  switch (r->tag) {
    case TyTag::Var:
      return false;
    case TyTag::Arrow:
      return occurs(v, r->param) || occurs(v, r->result);
    case TyTag::Constr:
    case TyTag::Tuple:
      for (const Ty* a : r->args)
        if (occurs(v, a)) return true;
      return false;
  }
  return false;
}

namespace detail {

// Occurs check fused with the level update that keeps generalization sound:
// every variable reachable from the link target is pulled down to the
// linked variable's level.
inline bool occurs_adjust(const Ty* v, int level, Ty* t) {
  Ty* r = repr(t);
  if (r == v) return true;
  switch (r->tag) {
    case TyTag::Var:
      r->level = std::min(r->level, level);
      return false;
    case TyTag::Arrow:
      return occurs_adjust(v, level, r->param) ||
             occurs_adjust(v, level, r->result);
    case TyTag::Constr:
    case TyTag::Tuple:
      for (Ty* a : r->args)
        if (occurs_adjust(v, level, a)) return true;
      return false;
  }
  return false;
}

struct Clash {
  Ty* left = nullptr;
  Ty* right = nullptr;
  UnifyConflict::Kind kind = UnifyConflict::Kind::Mismatch;
};

inline std::optional<Clash> unify_rec(Ty* a, Ty* b) {
  a = repr(a);
  b = repr(b);
  if (a == b) return std::nullopt;
  if (a->tag == TyTag::Var) {
    if (occurs_adjust(a, a->level, b))
      return Clash{a, b, UnifyConflict::Kind::OccursCheck};
    a->link = b;
    return std::nullopt;
  }
  if (b->tag == TyTag::Var) {
    if (occurs_adjust(b, b->level, a))
      return Clash{a, b, UnifyConflict::Kind::OccursCheck};
    b->link = a;
    return std::nullopt;
  }
  if (a->tag == TyTag::Arrow && b->tag == TyTag::Arrow) {
    if (auto c = unify_rec(a->param, b->param)) return c;
    return unify_rec(a->result, b->result);
  }
  if (a->tag == TyTag::Constr && b->tag == TyTag::Constr && a->con == b->con) {
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (auto c = unify_rec(a->args[i], b->args[i])) return c;
    return std::nullopt;
  }
  if (a->tag == TyTag::Tuple && b->tag == TyTag::Tuple &&
      a->args.size() == b->args.size()) {
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (auto c = unify_rec(a->args[i], b->args[i])) return c;
    return std::nullopt;
  }
  return Clash{a, b, UnifyConflict::Kind::Mismatch};
}

}  // namespace detail

/// Destructive first-order unification. On success the two types have
/// structurally identical repr forms. On failure returns the conflict as a
/// value; the same engine serves both checking modes.
inline std::optional<UnifyConflict> unify(Ty* t1, Ty* t2) {
  auto clash = detail::unify_rec(t1, t2);
  if (!clash) return std::nullopt;
  UnifyConflict conflict;
  conflict.kind = clash->kind;
  NamingContext naming;
  conflict.whole_left = snapshot(t1, naming);
  conflict.whole_right = snapshot(t2, naming);
  conflict.left = snapshot(clash->left, naming);
  conflict.right = snapshot(clash->right, naming);
  return conflict;
}

/// Result of peeling up to `n` arrows off a type without touching the
/// store. A positive shortfall with a non-variable return signals a
/// definite over-application; with a variable return, only "the
/// application is ill-typed" may be claimed.
struct ArrowDecomp {
  std::vector<Ty*> params;  // length <= n
  Ty* ret = nullptr;
  int shortfall = 0;
  bool ret_is_var = false;
};

inline ArrowDecomp arrow_decompose(Ty* t, int n) {
  ArrowDecomp d;
  Ty* cur = repr_nc(t);
  while (static_cast<int>(d.params.size()) < n && cur->tag == TyTag::Arrow) {
    d.params.push_back(cur->param);
    cur = repr_nc(cur->result);
  }
  d.ret = cur;
  d.shortfall = n - static_cast<int>(d.params.size());
  d.ret_is_var = cur->tag == TyTag::Var;
  return d;
}

}  // namespace easytype
