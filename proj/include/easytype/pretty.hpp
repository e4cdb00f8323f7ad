#pragma once

#include <cstdio>
#include <string>
#include <variant>

#include "easytype/ast.hpp"

namespace easytype {

namespace detail {

// Printer precedence levels, loosest to tightest. A node whose level is
// below the context's gets parenthesized. Parenthesization is deliberately
// conservative around constructs that extend to the right (fun, match,
// let-in): extra parentheses are harmless for the reparse property.
enum PrettyPrec {
  kSeq = 0,
  kConstruct = 1,
  kAssign = 2,
  kTuple = 3,
  kCmp = 4,
  kCons = 5,
  kAdd = 6,
  kMul = 7,
  kUnary = 8,
  kApp = 9,
  kBang = 10,
  kAtom = 11,
};

struct BinOpInfo {
  int prec;
  int lhs_ctx;
  int rhs_ctx;
};

inline const BinOpInfo* binop_info(const std::string& op) {
  static const struct {
    const char* name;
    BinOpInfo info;
  } table[] = {
      {"=", {kCmp, kCmp, kCons}},    {"<", {kCmp, kCmp, kCons}},
      {">", {kCmp, kCmp, kCons}},    {"<=", {kCmp, kCmp, kCons}},
      {">=", {kCmp, kCmp, kCons}},   {"<>", {kCmp, kCmp, kCons}},
      {"::", {kCons, kAdd, kCons}},  {"+", {kAdd, kAdd, kMul}},
      {"-", {kAdd, kAdd, kMul}},     {"+.", {kAdd, kAdd, kMul}},
      {"-.", {kAdd, kAdd, kMul}},    {"*", {kMul, kMul, kUnary}},
      {"/", {kMul, kMul, kUnary}},   {"*.", {kMul, kMul, kUnary}},
      {"/.", {kMul, kMul, kUnary}},  {":=", {kAssign, kTuple, kConstruct}},
  };
  for (auto& e : table)
    if (op == e.name) return &e.info;
  return nullptr;
}

inline std::string escape_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\'': out += "\\'"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string format_float(double v, const std::string& text) {
  if (!text.empty()) return text;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s = buf;
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
    std::snprintf(buf, sizeof(buf), "%.17f", v);
    s = buf;
  }
  if (s.find('.') == std::string::npos) s += ".";
  return s;
}

void pretty_expr_rec(const Expr& e, int ctx, std::string& out);

inline void pretty_pattern_rec(const Pattern& p, int ctx, std::string& out) {
  if (auto* v = std::get_if<PVar>(&p.node)) {
    out += v->name;
  } else if (std::get_if<PWildcard>(&p.node)) {
    out += "_";
  } else if (auto* v = std::get_if<PConstInt>(&p.node)) {
    bool parens = v->value < 0 && ctx >= kAtom;
    if (parens) out += '(';
    out += std::to_string(v->value);
    if (parens) out += ')';
  } else if (auto* v = std::get_if<PConstFloat>(&p.node)) {
    std::string text = format_float(v->value, "");
    bool parens = !text.empty() && text[0] == '-' && ctx >= kAtom;
    if (parens) out += '(';
    out += text;
    if (parens) out += ')';
  } else if (auto* v = std::get_if<PConstBool>(&p.node)) {
    out += v->value ? "true" : "false";
  } else if (auto* v = std::get_if<PConstString>(&p.node)) {
    out += '"' + escape_text(v->value) + '"';
  } else if (std::get_if<PConstUnit>(&p.node)) {
    out += "()";
  } else if (auto* v = std::get_if<PTuple>(&p.node)) {
    out += '(';
    for (std::size_t i = 0; i < v->elems.size(); ++i) {
      if (i) out += ", ";
      pretty_pattern_rec(*v->elems[i], kCmp, out);
    }
    out += ')';
  } else if (std::get_if<PNil>(&p.node)) {
    out += "[]";
  } else if (auto* v = std::get_if<PCons>(&p.node)) {
    bool parens = kCons < ctx;
    if (parens) out += '(';
    pretty_pattern_rec(*v->head, kAdd, out);
    out += " :: ";
    pretty_pattern_rec(*v->tail, kCons, out);
    if (parens) out += ')';
  }
}

inline void pretty_app(const App& app, int ctx, std::string& out) {
  auto* fn_var = std::get_if<Var>(&app.fn->node);
  if (fn_var) {
    if (const BinOpInfo* info = binop_info(fn_var->name)) {
      if (app.args.size() == 2) {
        bool parens = info->prec < ctx;
        if (parens) out += '(';
        pretty_expr_rec(*app.args[0], info->lhs_ctx, out);
        out += ' ';
        out += fn_var->name;
        out += ' ';
        pretty_expr_rec(*app.args[1], info->rhs_ctx, out);
        if (parens) out += ')';
        return;
      }
      if (app.args.size() > 2) {
        // Over-applied operator: print the binary core parenthesized and
        // juxtapose the rest so reparsing re-flattens to the same node.
        bool parens = kApp < ctx;
        if (parens) out += '(';
        out += '(';
        pretty_expr_rec(*app.args[0], info->lhs_ctx, out);
        out += ' ';
        out += fn_var->name;
        out += ' ';
        pretty_expr_rec(*app.args[1], info->rhs_ctx, out);
        out += ')';
        for (std::size_t i = 2; i < app.args.size(); ++i) {
          out += ' ';
          pretty_expr_rec(*app.args[i], kBang, out);
        }
        if (parens) out += ')';
        return;
      }
    }
    if (fn_var->name == "!") {
      bool parens = kBang < ctx && app.args.size() == 1;
      if (app.args.size() == 1) {
        if (parens) out += '(';
        out += '!';
        pretty_expr_rec(*app.args[0], kAtom, out);
        if (parens) out += ')';
        return;
      }
      // !a b ... reparses via flattening to the same n-ary node.
      bool outer = kApp < ctx;
      if (outer) out += '(';
      out += '!';
      pretty_expr_rec(*app.args[0], kAtom, out);
      for (std::size_t i = 1; i < app.args.size(); ++i) {
        out += ' ';
        pretty_expr_rec(*app.args[i], kBang, out);
      }
      if (outer) out += ')';
      return;
    }
    if (fn_var->name == "~-") {
      if (app.args.size() == 1) {
        bool parens = kUnary < ctx;
        if (parens) out += '(';
        out += "~-";
        pretty_expr_rec(*app.args[0], kUnary, out);
        if (parens) out += ')';
        return;
      }
      // (~-a) b ... reparses via flattening to the same n-ary node.
      bool outer = kApp < ctx;
      if (outer) out += '(';
      out += "(~-";
      pretty_expr_rec(*app.args[0], kUnary, out);
      out += ')';
      for (std::size_t i = 1; i < app.args.size(); ++i) {
        out += ' ';
        pretty_expr_rec(*app.args[i], kBang, out);
      }
      if (outer) out += ')';
      return;
    }
  }
  bool parens = kApp < ctx;
  if (parens) out += '(';
  pretty_expr_rec(*app.fn, kAtom, out);
  for (auto& a : app.args) {
    out += ' ';
    pretty_expr_rec(*a, kBang, out);
  }
  if (parens) out += ')';
}

inline void pretty_expr_rec(const Expr& e, int ctx, std::string& out) {
  if (auto* v = std::get_if<Var>(&e.node)) {
    out += v->name;
  } else if (auto* v = std::get_if<ConstInt>(&e.node)) {
    bool parens = v->value < 0 && kUnary < ctx;
    if (parens) out += '(';
    out += std::to_string(v->value);
    if (parens) out += ')';
  } else if (auto* v = std::get_if<ConstFloat>(&e.node)) {
    std::string text = format_float(v->value, v->text);
    bool neg = !text.empty() && text[0] == '-';
    bool parens = neg && kUnary < ctx;
    if (parens) out += '(';
    out += text;
    if (parens) out += ')';
  } else if (auto* v = std::get_if<ConstBool>(&e.node)) {
    out += v->value ? "true" : "false";
  } else if (auto* v = std::get_if<ConstString>(&e.node)) {
    out += '"' + escape_text(v->value) + '"';
  } else if (auto* v = std::get_if<ConstChar>(&e.node)) {
    out += '\'' + escape_text(std::string(1, v->value)) + '\'';
  } else if (std::get_if<ConstUnit>(&e.node)) {
    out += "()";
  } else if (auto* v = std::get_if<Fun>(&e.node)) {
    bool parens = kConstruct < ctx;
    if (parens) out += '(';
    out += "fun";
    for (auto& p : v->params) {
      out += ' ';
      pretty_pattern_rec(*p, kAtom, out);
    }
    out += " -> ";
    pretty_expr_rec(*v->body, kSeq, out);
    if (parens) out += ')';
  } else if (auto* v = std::get_if<App>(&e.node)) {
    pretty_app(*v, ctx, out);
  } else if (auto* v = std::get_if<Let>(&e.node)) {
    bool parens = kConstruct < ctx;
    if (parens) out += '(';
    out += v->is_rec ? "let rec " : "let ";
    out += v->name;
    out += " = ";
    pretty_expr_rec(*v->bound, kSeq, out);
    out += " in ";
    pretty_expr_rec(*v->body, kSeq, out);
    if (parens) out += ')';
  } else if (auto* v = std::get_if<If>(&e.node)) {
    bool parens = kConstruct < ctx;
    if (parens) out += '(';
    out += "if ";
    pretty_expr_rec(*v->cond, kSeq, out);
    out += " then ";
    pretty_expr_rec(*v->then_branch, kAssign, out);
    if (v->else_branch) {
      out += " else ";
      pretty_expr_rec(*v->else_branch, kAssign, out);
    }
    if (parens) out += ')';
  } else if (auto* v = std::get_if<Match>(&e.node)) {
    bool parens = kConstruct < ctx;
    if (parens) out += '(';
    out += "match ";
    pretty_expr_rec(*v->scrutinee, kSeq, out);
    out += " with";
    for (auto& arm : v->arms) {
      out += " | ";
      pretty_pattern_rec(*arm.pattern, kSeq, out);
      out += " -> ";
      pretty_expr_rec(*arm.body, kTuple, out);
    }
    if (parens) out += ')';
  } else if (auto* v = std::get_if<While>(&e.node)) {
    bool parens = kConstruct < ctx;
    if (parens) out += '(';
    out += "while ";
    pretty_expr_rec(*v->cond, kSeq, out);
    out += " do ";
    pretty_expr_rec(*v->body, kSeq, out);
    out += " done";
    if (parens) out += ')';
  } else if (auto* v = std::get_if<Seq>(&e.node)) {
    bool parens = kSeq < ctx;
    if (parens) out += '(';
    pretty_expr_rec(*v->first, kTuple, out);
    out += "; ";
    pretty_expr_rec(*v->second, kSeq, out);
    if (parens) out += ')';
  } else if (auto* v = std::get_if<Tuple>(&e.node)) {
    bool parens = kTuple < ctx;
    if (parens) out += '(';
    for (std::size_t i = 0; i < v->elems.size(); ++i) {
      if (i) out += ", ";
      pretty_expr_rec(*v->elems[i], kCmp, out);
    }
    if (parens) out += ')';
  } else if (auto* v = std::get_if<ListLit>(&e.node)) {
    out += '[';
    for (std::size_t i = 0; i < v->elems.size(); ++i) {
      if (i) out += "; ";
      pretty_expr_rec(*v->elems[i], kTuple, out);
    }
    out += ']';
  } else if (auto* v = std::get_if<Annot>(&e.node)) {
    out += '(';
    pretty_expr_rec(*v->expr, kSeq, out);
    out += " : ";
    out += to_string(v->type);
    out += ')';
  }
}

}  // namespace detail

/// Emits re-parsable surface syntax: parse(pretty(e)) equals e up to spans.
inline std::string pretty_expr(const Expr& e) {
  std::string out;
  detail::pretty_expr_rec(e, detail::kSeq, out);
  return out;
}

inline std::string pretty_pattern(const Pattern& p) {
  std::string out;
  detail::pretty_pattern_rec(p, detail::kSeq, out);
  return out;
}

inline std::string pretty_program(const Program& prog) {
  std::string out;
  for (auto& def : prog.defs) {
    out += def.is_rec ? "let rec " : "let ";
    out += def.name;
    out += " = ";
    out += pretty_expr(*def.body);
    out += "\n";
  }
  return out;
}

}  // namespace easytype
