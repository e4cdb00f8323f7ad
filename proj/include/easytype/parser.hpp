#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "easytype/ast.hpp"
#include "easytype/lexer.hpp"

namespace easytype {

/// Parses a type expression from a token stream position. Shared between
/// source annotations `(e : ty)` and the diagnostic JSON decoder.
class Parser {
 public:
  Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program parse_program() {
    Program prog;
    while (!check(Tok::Eof)) {
      while (accept(Tok::SemiSemi)) {
      }
      if (check(Tok::Eof)) break;
      prog.defs.push_back(parse_top_def());
    }
    return prog;
  }

  // Entry point when parsing a lone type expression (e.g. from JSON).
  DisplayTy parse_type_only() {
    DisplayTy t = parse_type();
    expect(Tok::Eof, "end of type expression");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;

  const Token& peek(std::size_t k = 0) const {
    std::size_t i = idx_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool check(Tok k) const { return peek().kind == k; }
  bool check_op(std::string_view sym) const {
    return peek().kind == Tok::Op && peek().text == sym;
  }
  const Token& advance() {
    const Token& t = toks_[idx_];
    if (idx_ + 1 < toks_.size()) ++idx_;
    return t;
  }
  bool accept(Tok k) {
    if (check(k)) {
      advance();
      return true;
    }
    return false;
  }
  bool accept_op(std::string_view sym) {
    if (check_op(sym)) {
      advance();
      return true;
    }
    return false;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!check(k))
      throw ParseError{peek().span,
                       "expected " + what + " but found '" +
                           (peek().kind == Tok::Eof ? "end of input"
                                                    : peek().text) +
                           "'"};
    return advance();
  }

  [[noreturn]] void fail_here(const std::string& msg) {
    throw ParseError{peek().span, msg};
  }

  // ---------------------------------------------------------------------
  // Top-level definitions

  TopDef parse_top_def() {
    const Token& let_tok = expect(Tok::KwLet, "'let'");
    TopDef def;
    def.is_rec = accept(Tok::KwRec);
    parse_binding_into(def.name, def.name_span, def.body, def.is_rec);
    def.span = hull(let_tok.span, def.body->span);
    accept(Tok::SemiSemi);
    return def;
  }

  // Shared by top-level lets and let-in expressions:
  //   name param* = expr       (params desugar to a Fun)
  void parse_binding_into(std::string& name, Span& name_span, ExprPtr& bound,
                          bool is_rec) {
    if (check(Tok::Underscore)) {
      const Token& t = advance();
      name = "_";
      name_span = t.span;
    } else {
      const Token& t = expect(Tok::Ident, "a binding name");
      name = t.text;
      name_span = t.span;
    }
    std::vector<PatternPtr> params;
    while (pattern_atom_start()) params.push_back(parse_pattern_atom());
    for (auto& p : params) check_distinct_vars(*p);
    expect_eq();
    ExprPtr body = parse_expr();
    if (!params.empty()) {
      Span s = hull(params.front()->span, body->span);
      bound = make_expr(Fun{std::move(params), std::move(body)}, s);
    } else {
      bound = std::move(body);
    }
    if (is_rec && name == "_")
      throw ParseError{name_span, "'let rec' requires a binding name"};
  }

  void expect_eq() {
    if (!check_op("="))
      throw ParseError{peek().span, "expected '=' in let binding"};
    advance();
  }

  // ---------------------------------------------------------------------
  // Expressions. Levels, loosest to tightest:
  //   seq (;) < constructs (let/fun/if/match) < := < , < comparisons
  //   < :: < + - < * / < prefix minus < application < ! < atoms

  ExprPtr parse_expr() { return parse_seq(); }

  ExprPtr parse_seq() {
    ExprPtr e = parse_nonseq();
    if (accept(Tok::Semi)) {
      ExprPtr rest = parse_seq();
      Span s = hull(e->span, rest->span);
      return make_expr(Seq{std::move(e), std::move(rest)}, s);
    }
    return e;
  }

  ExprPtr parse_nonseq() {
    switch (peek().kind) {
      case Tok::KwLet: return parse_let_in();
      case Tok::KwFun: return parse_fun();
      case Tok::KwIf: return parse_if();
      case Tok::KwMatch: return parse_match();
      case Tok::KwWhile: return parse_while();
      default: return parse_assign();
    }
  }

  ExprPtr parse_let_in() {
    const Token& let_tok = advance();
    bool is_rec = accept(Tok::KwRec);
    Let node;
    node.is_rec = is_rec;
    parse_binding_into(node.name, node.name_span, node.bound, is_rec);
    expect(Tok::KwIn, "'in'");
    node.body = parse_seq();
    Span s = hull(let_tok.span, node.body->span);
    return make_expr(std::move(node), s);
  }

  ExprPtr parse_fun() {
    const Token& fun_tok = advance();
    std::vector<PatternPtr> params;
    while (pattern_atom_start()) params.push_back(parse_pattern_atom());
    if (params.empty()) fail_here("expected at least one parameter after 'fun'");
    for (auto& p : params) check_distinct_vars(*p);
    expect(Tok::Arrow, "'->'");
    ExprPtr body = parse_seq();
    Span s = hull(fun_tok.span, body->span);
    return make_expr(Fun{std::move(params), std::move(body)}, s);
  }

  ExprPtr parse_if() {
    const Token& if_tok = advance();
    ExprPtr cond = parse_seq();
    expect(Tok::KwThen, "'then'");
    ExprPtr then_b = parse_nonseq();
    ExprPtr else_b;
    Span s = hull(if_tok.span, then_b->span);
    if (accept(Tok::KwElse)) {
      else_b = parse_nonseq();
      s = hull(s, else_b->span);
    }
    return make_expr(If{std::move(cond), std::move(then_b), std::move(else_b)},
                     s);
  }

  ExprPtr parse_match() {
    const Token& match_tok = advance();
    ExprPtr scrut = parse_seq();
    expect(Tok::KwWith, "'with'");
    accept(Tok::Bar);
    std::vector<MatchArm> arms;
    for (;;) {
      MatchArm arm;
      arm.pattern = parse_pattern();
      expect(Tok::Arrow, "'->'");
      arm.body = parse_seq();
      arms.push_back(std::move(arm));
      if (!accept(Tok::Bar)) break;
    }
    Span s = hull(match_tok.span, arms.back().body->span);
    return make_expr(Match{std::move(scrut), std::move(arms)}, s);
  }

  ExprPtr parse_while() {
    const Token& while_tok = advance();
    ExprPtr cond = parse_seq();
    expect(Tok::KwDo, "'do'");
    ExprPtr body = parse_seq();
    const Token& done_tok = expect(Tok::KwDone, "'done'");
    Span s = hull(while_tok.span, done_tok.span);
    return make_expr(While{std::move(cond), std::move(body)}, s);
  }

  ExprPtr parse_assign() {
    ExprPtr l = parse_tuple();
    if (check_op(":=")) {
      const Token& op = advance();
      ExprPtr r = parse_nonseq();
      return make_op_app(op, std::move(l), std::move(r));
    }
    return l;
  }

  ExprPtr parse_tuple() {
    ExprPtr e = parse_cmp();
    if (!check(Tok::Comma)) return e;
    std::vector<ExprPtr> elems;
    elems.push_back(std::move(e));
    while (accept(Tok::Comma)) elems.push_back(parse_cmp());
    Span s = hull(elems.front()->span, elems.back()->span);
    return make_expr(Tuple{std::move(elems)}, s);
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_cons();
    while (check_op("=") || check_op("<") || check_op(">") || check_op("<=") ||
           check_op(">=") || check_op("<>")) {
      const Token& op = advance();
      ExprPtr r = parse_cons();
      e = make_op_app(op, std::move(e), std::move(r));
    }
    return e;
  }

  ExprPtr parse_cons() {
    ExprPtr e = parse_add();
    if (check_op("::")) {
      const Token& op = advance();
      ExprPtr r = parse_cons();  // right-associative
      return make_op_app(op, std::move(e), std::move(r));
    }
    return e;
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (check_op("+") || check_op("-") || check_op("+.") ||
           check_op("-.")) {
      const Token& op = advance();
      ExprPtr r = parse_mul();
      e = make_op_app(op, std::move(e), std::move(r));
    }
    return e;
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (check_op("*") || check_op("/") || check_op("*.") ||
           check_op("/.")) {
      const Token& op = advance();
      ExprPtr r = parse_unary();
      e = make_op_app(op, std::move(e), std::move(r));
    }
    return e;
  }

  ExprPtr parse_unary() {
    // A minus at operand-head position directly before a literal is a
    // negative literal; everywhere else '-' is the binary operator.
    if (check_op("-") &&
        (peek(1).kind == Tok::Int || peek(1).kind == Tok::Float)) {
      const Token& minus = advance();
      const Token& lit = advance();
      Span s = hull(minus.span, lit.span);
      if (lit.kind == Tok::Int)
        return make_expr(ConstInt{-lit.int_val}, s);
      return make_expr(ConstFloat{-lit.float_val, "-" + lit.text}, s);
    }
    if (check_op("~-")) {
      const Token& op = advance();
      ExprPtr operand = parse_unary();
      Span s = hull(op.span, operand->span);
      std::vector<ExprPtr> args;
      args.push_back(std::move(operand));
      return make_expr(
          App{make_expr(Var{"~-"}, op.span), std::move(args)}, s);
    }
    return parse_app();
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::Int:
      case Tok::Float:
      case Tok::String:
      case Tok::Char:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::Ident:
      case Tok::LParen:
      case Tok::LBracket:
        return true;
      case Tok::Op:
        return peek().text == "!";
      default:
        return false;
    }
  }

  ExprPtr parse_app() {
    ExprPtr fn = parse_atom();
    if (!atom_start()) return fn;
    std::vector<ExprPtr> args;
    while (atom_start()) args.push_back(parse_atom());
    Span s = hull(fn->span, args.back()->span);
    // Flatten so an App's fn is never itself an App.
    if (auto* inner = std::get_if<App>(&fn->node)) {
      std::vector<ExprPtr> all = std::move(inner->args);
      for (auto& a : args) all.push_back(std::move(a));
      return make_expr(App{std::move(inner->fn), std::move(all)}, s);
    }
    return make_expr(App{std::move(fn), std::move(args)}, s);
  }

  ExprPtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        advance();
        return make_expr(ConstInt{t.int_val}, t.span);
      }
      case Tok::Float: {
        advance();
        return make_expr(ConstFloat{t.float_val, t.text}, t.span);
      }
      case Tok::String: {
        advance();
        return make_expr(ConstString{t.str_val}, t.span);
      }
      case Tok::Char: {
        advance();
        return make_expr(ConstChar{t.str_val[0]}, t.span);
      }
      case Tok::KwTrue: {
        advance();
        return make_expr(ConstBool{true}, t.span);
      }
      case Tok::KwFalse: {
        advance();
        return make_expr(ConstBool{false}, t.span);
      }
      case Tok::Ident: {
        advance();
        return make_expr(Var{t.text}, t.span);
      }
      case Tok::Op:
        if (t.text == "!") {
          advance();
          ExprPtr operand = parse_atom();
          Span s = hull(t.span, operand->span);
          std::vector<ExprPtr> args;
          args.push_back(std::move(operand));
          return make_expr(App{make_expr(Var{"!"}, t.span), std::move(args)},
                           s);
        }
        fail_here("unexpected operator '" + t.text + "'");
      case Tok::LParen: {
        const Token& open = advance();
        if (check(Tok::RParen)) {
          const Token& close = advance();
          return make_expr(ConstUnit{}, hull(open.span, close.span));
        }
        ExprPtr inner = parse_seq();
        if (accept(Tok::Colon)) {
          DisplayTy ty = parse_type();
          const Token& close = expect(Tok::RParen, "')'");
          Span s = hull(open.span, close.span);
          return make_expr(Annot{std::move(inner), std::move(ty)}, s);
        }
        const Token& close = expect(Tok::RParen, "')'");
        inner->span = hull(open.span, close.span);
        return inner;
      }
      case Tok::LBracket: {
        const Token& open = advance();
        std::vector<ExprPtr> elems;
        if (!check(Tok::RBracket)) {
          elems.push_back(parse_assign());
          while (accept(Tok::Semi)) elems.push_back(parse_assign());
        }
        const Token& close = expect(Tok::RBracket, "']'");
        return make_expr(ListLit{std::move(elems)},
                         hull(open.span, close.span));
      }
      default:
        fail_here("expected an expression but found '" +
                  (t.kind == Tok::Eof ? "end of input" : t.text) + "'");
    }
  }

  ExprPtr make_op_app(const Token& op, ExprPtr lhs, ExprPtr rhs) {
    Span s = hull(lhs->span, rhs->span);
    std::vector<ExprPtr> args;
    args.push_back(std::move(lhs));
    args.push_back(std::move(rhs));
    return make_expr(App{make_expr(Var{op.text}, op.span), std::move(args)},
                     s);
  }

  // ---------------------------------------------------------------------
  // Patterns

  bool pattern_atom_start() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::Underscore:
      case Tok::Int:
      case Tok::Float:
      case Tok::String:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::LParen:
      case Tok::LBracket:
        return true;
      default:
        return false;
    }
  }

  PatternPtr parse_pattern() {
    PatternPtr p = parse_pattern_cons();
    check_distinct_vars(*p);
    return p;
  }

  PatternPtr parse_pattern_cons() {
    PatternPtr p = parse_pattern_atom();
    if (check_op("::")) {
      advance();
      PatternPtr rest = parse_pattern_cons();
      Span s = hull(p->span, rest->span);
      return make_pattern(PCons{std::move(p), std::move(rest)}, s);
    }
    return p;
  }

  PatternPtr parse_pattern_atom() {
    const Token& t = peek();
    if (check_op("-") &&
        (peek(1).kind == Tok::Int || peek(1).kind == Tok::Float)) {
      const Token& minus = advance();
      const Token& lit = advance();
      Span s = hull(minus.span, lit.span);
      if (lit.kind == Tok::Int) return make_pattern(PConstInt{-lit.int_val}, s);
      return make_pattern(PConstFloat{-lit.float_val}, s);
    }
    switch (t.kind) {
      case Tok::Ident: {
        advance();
        return make_pattern(PVar{t.text}, t.span);
      }
      case Tok::Underscore: {
        advance();
        return make_pattern(PWildcard{}, t.span);
      }
      case Tok::Int: {
        advance();
        return make_pattern(PConstInt{t.int_val}, t.span);
      }
      case Tok::Float: {
        advance();
        return make_pattern(PConstFloat{t.float_val}, t.span);
      }
      case Tok::String: {
        advance();
        return make_pattern(PConstString{t.str_val}, t.span);
      }
      case Tok::KwTrue: {
        advance();
        return make_pattern(PConstBool{true}, t.span);
      }
      case Tok::KwFalse: {
        advance();
        return make_pattern(PConstBool{false}, t.span);
      }
      case Tok::LParen: {
        const Token& open = advance();
        if (check(Tok::RParen)) {
          const Token& close = advance();
          return make_pattern(PConstUnit{}, hull(open.span, close.span));
        }
        PatternPtr inner = parse_pattern_cons();
        if (check(Tok::Comma)) {
          std::vector<PatternPtr> elems;
          elems.push_back(std::move(inner));
          while (accept(Tok::Comma)) elems.push_back(parse_pattern_cons());
          const Token& close = expect(Tok::RParen, "')'");
          return make_pattern(PTuple{std::move(elems)},
                              hull(open.span, close.span));
        }
        const Token& close = expect(Tok::RParen, "')'");
        inner->span = hull(open.span, close.span);
        return inner;
      }
      case Tok::LBracket: {
        // [p; q] is sugar for p :: q :: []
        const Token& open = advance();
        std::vector<PatternPtr> elems;
        if (!check(Tok::RBracket)) {
          elems.push_back(parse_pattern_cons());
          while (accept(Tok::Semi)) elems.push_back(parse_pattern_cons());
        }
        const Token& close = expect(Tok::RBracket, "']'");
        Span whole = hull(open.span, close.span);
        PatternPtr acc = make_pattern(PNil{}, whole);
        for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
          Span s = hull((*it)->span, whole);
          acc = make_pattern(PCons{std::move(*it), std::move(acc)}, s);
        }
        return acc;
      }
      default:
        fail_here("expected a pattern but found '" +
                  (t.kind == Tok::Eof ? "end of input" : t.text) + "'");
    }
  }

  void check_distinct_vars(const Pattern& p) {
    std::set<std::string> seen;
    collect_pattern_vars(p, seen);
  }

  void collect_pattern_vars(const Pattern& p, std::set<std::string>& seen) {
    if (auto* v = std::get_if<PVar>(&p.node)) {
      if (!seen.insert(v->name).second)
        throw ParseError{p.span, "variable '" + v->name +
                                     "' is bound several times in this "
                                     "pattern"};
      return;
    }
    if (auto* v = std::get_if<PTuple>(&p.node)) {
      for (auto& e : v->elems) collect_pattern_vars(*e, seen);
      return;
    }
    if (auto* v = std::get_if<PCons>(&p.node)) {
      collect_pattern_vars(*v->head, seen);
      collect_pattern_vars(*v->tail, seen);
      return;
    }
  }

  // ---------------------------------------------------------------------
  // Type expressions (annotations):  ty := tuple_ty ('->' ty)?

  DisplayTy parse_type() {
    DisplayTy t = parse_type_tuple();
    if (accept(Tok::Arrow)) {
      DisplayTy r = parse_type();
      return DisplayTy::arrow(std::move(t), std::move(r));
    }
    return t;
  }

  DisplayTy parse_type_tuple() {
    DisplayTy t = parse_type_postfix();
    if (!check_op("*")) return t;
    std::vector<DisplayTy> elems;
    elems.push_back(std::move(t));
    while (accept_op("*")) elems.push_back(parse_type_postfix());
    return DisplayTy::tuple(std::move(elems));
  }

  DisplayTy parse_type_postfix() {
    DisplayTy t = parse_type_atom();
    while (check(Tok::Ident) &&
           (peek().text == "list" || peek().text == "ref")) {
      const Token& c = advance();
      t = DisplayTy::constr(c.text, {std::move(t)});
    }
    return t;
  }

  DisplayTy parse_type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::TyVar) {
      advance();
      return DisplayTy::var(t.text);
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "int" || t.text == "float" || t.text == "bool" ||
          t.text == "string" || t.text == "char" || t.text == "unit") {
        advance();
        return DisplayTy::constr(t.text);
      }
      fail_here("unknown type constructor '" + t.text + "'");
    }
    if (t.kind == Tok::LParen) {
      advance();
      DisplayTy inner = parse_type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail_here("expected a type but found '" +
              (t.kind == Tok::Eof ? "end of input" : t.text) + "'");
  }
};

/// Parses a full program. Returns either the AST or the first syntax error;
/// never throws on malformed input.
inline std::variant<Program, ParseError> parse_program(std::string_view source,
                                                       std::string file) {
  try {
    Lexer lexer(source, file);
    Parser parser(lexer.run());
    return parser.parse_program();
  } catch (ParseError& e) {
    return e;
  }
}

/// Parses a type expression in the diagnostic display grammar.
inline std::variant<DisplayTy, ParseError> parse_type_expr(
    std::string_view text) {
  try {
    Lexer lexer(text, "<type>");
    Parser parser(lexer.run());
    return parser.parse_type_only();
  } catch (ParseError& e) {
    return e;
  }
}

}  // namespace easytype
