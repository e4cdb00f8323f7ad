#pragma once

#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "easytype/display.hpp"

namespace easytype {

enum class TyTag { Var, Arrow, Constr, Tuple };

enum class TyCon { Int, Float, Bool, String, Char, Unit, List, Ref };

inline const char* tycon_name(TyCon c) {
  switch (c) {
    case TyCon::Int: return "int";
    case TyCon::Float: return "float";
    case TyCon::Bool: return "bool";
    case TyCon::String: return "string";
    case TyCon::Char: return "char";
    case TyCon::Unit: return "unit";
    case TyCon::List: return "list";
    case TyCon::Ref: return "ref";
  }
  return "?";
}

/// A type term. Vars carry a link (union-find) and a binding level used for
/// generalization. int/float/bool/string/char/unit take no argument; list
/// and ref take exactly one. Tuples have arity >= 2.
struct Ty {
  TyTag tag = TyTag::Var;
  // Var
  int var_id = -1;
  int level = 0;
  Ty* link = nullptr;
  // Arrow
  Ty* param = nullptr;
  Ty* result = nullptr;
  // Constr / Tuple
  TyCon con = TyCon::Int;
  std::vector<Ty*> args;
};

/// Arena for one checking session. All Ty nodes of a session live here;
/// types from different stores must never be unified together.
class TyStore {
 public:
  Ty* var(int level) {
    Ty* t = alloc();
    t->tag = TyTag::Var;
    t->var_id = next_id_++;
    t->level = level;
    return t;
  }

  Ty* arrow(Ty* param, Ty* result) {
    Ty* t = alloc();
    t->tag = TyTag::Arrow;
    t->param = param;
    t->result = result;
    return t;
  }

  // Curried arrow from a parameter list.
  Ty* arrow_n(const std::vector<Ty*>& params, Ty* ret) {
    Ty* t = ret;
    for (auto it = params.rbegin(); it != params.rend(); ++it)
      t = arrow(*it, t);
    return t;
  }

  Ty* constr(TyCon con, std::vector<Ty*> args = {}) {
    assert((con == TyCon::List || con == TyCon::Ref) ? args.size() == 1
                                                     : args.empty());
    Ty* t = alloc();
    t->tag = TyTag::Constr;
    t->con = con;
    t->args = std::move(args);
    return t;
  }

  Ty* tuple(std::vector<Ty*> elems) {
    assert(elems.size() >= 2);
    Ty* t = alloc();
    t->tag = TyTag::Tuple;
    t->args = std::move(elems);
    return t;
  }

  Ty* tint() { return constr(TyCon::Int); }
  Ty* tfloat() { return constr(TyCon::Float); }
  Ty* tbool() { return constr(TyCon::Bool); }
  Ty* tstring() { return constr(TyCon::String); }
  Ty* tchar() { return constr(TyCon::Char); }
  Ty* tunit() { return constr(TyCon::Unit); }
  Ty* tlist(Ty* elem) { return constr(TyCon::List, {elem}); }
  Ty* tref(Ty* payload) { return constr(TyCon::Ref, {payload}); }

  std::size_t size() const { return nodes_.size(); }

 private:
  Ty* alloc() {
    nodes_.emplace_back();
    return &nodes_.back();
  }

  std::deque<Ty> nodes_;
  int next_id_ = 0;
};

/// Union-find find with path compression.
inline Ty* repr(Ty* t) {
  if (t->tag != TyTag::Var || t->link == nullptr) return t;
  Ty* root = repr(t->link);
  t->link = root;
  return root;
}

/// Non-compressing variant for read-only walks (keeps link state intact).
inline const Ty* repr_nc(const Ty* t) {
  while (t->tag == TyTag::Var && t->link != nullptr) t = t->link;
  return t;
}
inline Ty* repr_nc(Ty* t) {
  while (t->tag == TyTag::Var && t->link != nullptr) t = t->link;
  return t;
}

// ---------------------------------------------------------------------------
// Snapshots

/// Assigns 'a, 'b, ... names by first occurrence. One context lives for the
/// duration of one diagnostic, so a shared variable prints identically in
/// every snapshot attached to that diagnostic.
class NamingContext {
 public:
  std::string name_for(int var_id) {
    auto it = names_.find(var_id);
    if (it != names_.end()) return it->second;
    std::string name = "'";
    name += static_cast<char>('a' + next_ % 26);
    if (next_ >= 26) name += std::to_string(next_ / 26);
    ++next_;
    names_.emplace(var_id, name);
    return names_.at(var_id);
  }

 private:
  std::unordered_map<int, std::string> names_;
  int next_ = 0;
};

/// Deep immutable copy of a type as it stands right now. Later unifications
/// never affect the result.
inline DisplayTy snapshot(const Ty* t, NamingContext& naming) {
  const Ty* r = repr_nc(t);
  switch (r->tag) {
    case TyTag::Var:
      return DisplayTy::var(naming.name_for(r->var_id));
    case TyTag::Arrow: {
      // Sequenced explicitly: names are assigned left to right.
      DisplayTy param = snapshot(r->param, naming);
      DisplayTy result = snapshot(r->result, naming);
      return DisplayTy::arrow(std::move(param), std::move(result));
    }
    case TyTag::Constr: {
      std::vector<DisplayTy> args;
      args.reserve(r->args.size());
      for (const Ty* a : r->args) args.push_back(snapshot(a, naming));
      return DisplayTy::constr(tycon_name(r->con), std::move(args));
    }
    case TyTag::Tuple: {
      std::vector<DisplayTy> elems;
      elems.reserve(r->args.size());
      for (const Ty* a : r->args) elems.push_back(snapshot(a, naming));
      return DisplayTy::tuple(std::move(elems));
    }
  }
  return DisplayTy::constr("?");
}

inline std::string show_ty(const Ty* t) {
  NamingContext naming;
  return to_string(snapshot(t, naming));
}

// ---------------------------------------------------------------------------
// Schemes and environments

struct Scheme {
  std::vector<int> quantified;  // var ids, in order of first occurrence
  Ty* body = nullptr;

  bool is_mono() const { return quantified.empty(); }
};

inline Scheme mono(Ty* t) { return Scheme{{}, t}; }

/// Typing environment: identifier bindings, the current let-nesting level,
/// and shadow entries used to detect a missing `rec`. A shadow entry for
/// `f` is stored as "#f"; the lexer rejects '#', so shadows can never
/// collide with user identifiers.
struct TyEnv {
  TyStore* store = nullptr;
  std::map<std::string, Scheme> bindings;
  std::set<std::string> shadows;
  int current_level = 0;

  const Scheme* lookup(const std::string& name) const {
    auto it = bindings.find(name);
    return it == bindings.end() ? nullptr : &it->second;
  }

  void bind(const std::string& name, Scheme s) {
    if (name == "_") return;
    bindings[name] = std::move(s);
  }

  void add_shadow(const std::string& name) { shadows.insert("#" + name); }
  bool has_shadow(const std::string& name) const {
    return shadows.count("#" + name) > 0;
  }

  Ty* fresh() const { return store->var(current_level); }
};

/// Fresh unification variable at the environment's current level.
inline Ty* fresh_var(const TyEnv& env) { return env.fresh(); }

namespace detail {

inline void collect_generalizable(const Ty* t, int level,
                                  std::vector<int>& out,
                                  std::set<int>& seen) {
  const Ty* r = repr_nc(t);
  switch (r->tag) {
    case TyTag::Var:
      if (r->level > level && seen.insert(r->var_id).second)
        out.push_back(r->var_id);
      return;
    case TyTag::Arrow:
      collect_generalizable(r->param, level, out, seen);
      collect_generalizable(r->result, level, out, seen);
      return;
    case TyTag::Constr:
    case TyTag::Tuple:
      for (const Ty* a : r->args) collect_generalizable(a, level, out, seen);
      return;
  }
}

}  // namespace detail

/// Level-based generalization: quantifies exactly the variables created
/// above the environment's current level. Variables free in the environment
/// live at lower levels (unification keeps levels minimal), so they are
/// never captured.
inline Scheme generalize(const TyEnv& env, Ty* t) {
  Scheme s;
  s.body = t;
  std::set<int> seen;
  detail::collect_generalizable(t, env.current_level, s.quantified, seen);
  return s;
}

/// Replaces each quantified variable with a fresh one at the current level.
/// Distinct instantiations share nothing.
inline Ty* instantiate(const Scheme& s, const TyEnv& env) {
  if (s.is_mono()) return s.body;
  std::unordered_map<int, Ty*> subst;
  for (int id : s.quantified) subst.emplace(id, env.fresh());

  struct Copier {
    TyStore& store;
    const std::unordered_map<int, Ty*>& subst;
    std::unordered_map<const Ty*, Ty*> done;  // preserves sharing

    Ty* copy(Ty* t) {
      Ty* r = repr(t);
      if (r->tag == TyTag::Var) {
        auto it = subst.find(r->var_id);
        return it == subst.end() ? r : it->second;
      }
      auto hit = done.find(r);
      if (hit != done.end()) return hit->second;
      Ty* out = nullptr;
      switch (r->tag) {
        case TyTag::Arrow:
          out = store.arrow(nullptr, nullptr);
          done.emplace(r, out);
          out->param = copy(r->param);
          out->result = copy(r->result);
          break;
        case TyTag::Constr: {
          out = store.constr(r->con, r->con == TyCon::List ||
                                             r->con == TyCon::Ref
                                         ? std::vector<Ty*>{nullptr}
                                         : std::vector<Ty*>{});
          done.emplace(r, out);
          for (std::size_t i = 0; i < r->args.size(); ++i)
            out->args[i] = copy(r->args[i]);
          break;
        }
        case TyTag::Tuple: {
          out = store.tuple({nullptr, nullptr});
          out->args.resize(r->args.size(), nullptr);
          done.emplace(r, out);
          for (std::size_t i = 0; i < r->args.size(); ++i)
            out->args[i] = copy(r->args[i]);
          break;
        }
        case TyTag::Var:
          break;  // handled above
      }
      return out;
    }
  };

  // Monomorphic subtrees could be shared instead of copied; copying keeps
  // the walk simple and instantiated types are small.
  Copier copier{*env.store, subst, {}};
  return copier.copy(s.body);
}

/// Deep-copies a scheme into another store (used when the driver seeds a
/// fresh session with schemes inferred by a previous pass).
inline Scheme transfer_scheme(const Scheme& s, TyStore& to) {
  std::unordered_map<int, Ty*> vars;  // old var id -> new node

  struct Copier {
    TyStore& store;
    std::unordered_map<int, Ty*>& vars;

    Ty* copy(const Ty* t) {
      const Ty* r = repr_nc(t);
      switch (r->tag) {
        case TyTag::Var: {
          auto it = vars.find(r->var_id);
          if (it != vars.end()) return it->second;
          Ty* v = store.var(r->level);
          vars.emplace(r->var_id, v);
          return v;
        }
        case TyTag::Arrow:
          return store.arrow(copy(r->param), copy(r->result));
        case TyTag::Constr: {
          std::vector<Ty*> args;
          args.reserve(r->args.size());
          for (const Ty* a : r->args) args.push_back(copy(a));
          return store.constr(r->con, std::move(args));
        }
        case TyTag::Tuple: {
          std::vector<Ty*> elems;
          elems.reserve(r->args.size());
          for (const Ty* a : r->args) elems.push_back(copy(a));
          return store.tuple(std::move(elems));
        }
      }
      return nullptr;
    }
  };

  Copier copier{to, vars};
  Scheme out;
  out.body = copier.copy(s.body);
  for (int id : s.quantified) {
    auto it = vars.find(id);
    if (it != vars.end()) out.quantified.push_back(it->second->var_id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Initial environment

/// Level-0 environment with the arithmetic operators, polymorphic
/// comparison, the stdlib names used by the checker's test programs, and
/// reference/list primitives.
inline TyEnv initial_env(TyStore& store) {
  TyEnv env;
  env.store = &store;
  env.current_level = 0;

  auto poly = [&](std::vector<Ty*> vars, Ty* body) {
    Scheme s;
    for (Ty* v : vars) s.quantified.push_back(v->var_id);
    s.body = body;
    return s;
  };
  // Quantified variables are created at level 1 so they stay above any
  // environment they are instantiated into.
  auto qvar = [&] { return store.var(1); };

  Ty* i = store.tint();
  Ty* f = store.tfloat();
  Ty* b = store.tbool();
  Ty* s = store.tstring();
  Ty* c = store.tchar();
  Ty* u = store.tunit();

  for (const char* op : {"+", "-", "*", "/"})
    env.bind(op, mono(store.arrow_n({i, i}, i)));
  for (const char* op : {"+.", "-.", "*.", "/."})
    env.bind(op, mono(store.arrow_n({f, f}, f)));
  env.bind("~-", mono(store.arrow(i, i)));

  for (const char* op : {"=", "<", ">", "<=", ">=", "<>"}) {
    Ty* a = qvar();
    env.bind(op, poly({a}, store.arrow_n({a, a}, b)));
  }

  {
    Ty* a = qvar();
    Ty* bb = qvar();
    env.bind("List.map",
             poly({a, bb}, store.arrow_n({store.arrow(a, bb), store.tlist(a)},
                                         store.tlist(bb))));
  }
  {
    Ty* a = qvar();
    Ty* bb = qvar();
    env.bind("List.fold_left",
             poly({a, bb},
                  store.arrow_n({store.arrow_n({a, bb}, a), a,
                                 store.tlist(bb)},
                                a)));
  }
  {
    Ty* a = qvar();
    env.bind("List.length", poly({a}, store.arrow(store.tlist(a), i)));
  }
  env.bind("String.index", mono(store.arrow_n({s, c}, i)));
  env.bind("String.length", mono(store.arrow(s, i)));
  {
    Ty* a = qvar();
    Ty* bb = qvar();
    env.bind("fst", poly({a, bb}, store.arrow(store.tuple({a, bb}), a)));
  }
  {
    Ty* a = qvar();
    Ty* bb = qvar();
    env.bind("snd", poly({a, bb}, store.arrow(store.tuple({a, bb}), bb)));
  }
  {
    Ty* a = qvar();
    env.bind("ref", poly({a}, store.arrow(a, store.tref(a))));
  }
  {
    Ty* a = qvar();
    env.bind("!", poly({a}, store.arrow(store.tref(a), a)));
  }
  {
    Ty* a = qvar();
    env.bind(":=", poly({a}, store.arrow_n({store.tref(a), a}, u)));
  }
  env.bind("read_int", mono(store.arrow(u, i)));
  env.bind("print_int", mono(store.arrow(i, u)));
  env.bind("print_string", mono(store.arrow(s, u)));
  env.bind("print_newline", mono(store.arrow(u, u)));
  {
    Ty* a = qvar();
    env.bind("[]", poly({a}, store.tlist(a)));
  }
  {
    Ty* a = qvar();
    env.bind("::",
             poly({a}, store.arrow_n({a, store.tlist(a)}, store.tlist(a))));
  }
  return env;
}

}  // namespace easytype
