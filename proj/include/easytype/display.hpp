#pragma once

#include <string>
#include <utility>
#include <vector>

namespace easytype {

/// Immutable snapshot of a type, with unification variables replaced by
/// canonical names ('a, 'b, ...). All diagnostics carry these, never live
/// types, so later unifications cannot rewrite a reported message.
struct DisplayTy {
  enum class Kind { Var, Arrow, Constr, Tuple };

  Kind kind = Kind::Constr;
  std::string name;                 // Var: "'a"; Constr: "int", "list", ...
  std::vector<DisplayTy> children;  // Arrow: {param, result}; Constr: args;
                                    // Tuple: elements

  bool operator==(const DisplayTy& o) const {
    return kind == o.kind && name == o.name && children == o.children;
  }

  static DisplayTy var(std::string n) {
    return DisplayTy{Kind::Var, std::move(n), {}};
  }
  static DisplayTy constr(std::string n, std::vector<DisplayTy> args = {}) {
    return DisplayTy{Kind::Constr, std::move(n), std::move(args)};
  }
  static DisplayTy arrow(DisplayTy param, DisplayTy result) {
    return DisplayTy{Kind::Arrow, "", {std::move(param), std::move(result)}};
  }
  static DisplayTy tuple(std::vector<DisplayTy> elems) {
    return DisplayTy{Kind::Tuple, "", std::move(elems)};
  }

  bool is_arrow() const { return kind == Kind::Arrow; }
  bool is_var() const { return kind == Kind::Var; }
  bool is_constr(const std::string& n) const {
    return kind == Kind::Constr && name == n;
  }
};

namespace detail {

// Precedence contexts for rendering: 0 = top, 1 = arrow parameter,
// 2 = tuple element, 3 = constructor argument.
inline void render_display_ty(const DisplayTy& t, int prec, std::string& out) {
  switch (t.kind) {
    case DisplayTy::Kind::Var:
      out += t.name;
      break;
    case DisplayTy::Kind::Constr:
      if (t.children.empty()) {
        out += t.name;
      } else {
        render_display_ty(t.children.front(), 3, out);
        out += ' ';
        out += t.name;
      }
      break;
    case DisplayTy::Kind::Tuple: {
      bool parens = prec >= 2;
      if (parens) out += '(';
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += " * ";
        render_display_ty(t.children[i], 2, out);
      }
      if (parens) out += ')';
      break;
    }
    case DisplayTy::Kind::Arrow: {
      bool parens = prec >= 1;
      if (parens) out += '(';
      render_display_ty(t.children[0], 1, out);
      out += " -> ";
      render_display_ty(t.children[1], 0, out);
      if (parens) out += ')';
      break;
    }
  }
}

}  // namespace detail

/// Text form of a snapshot. Arrows associate to the right; arrow and tuple
/// arguments of constructors are parenthesized.
inline std::string to_string(const DisplayTy& t) {
  std::string out;
  detail::render_display_ty(t, 0, out);
  return out;
}

}  // namespace easytype
