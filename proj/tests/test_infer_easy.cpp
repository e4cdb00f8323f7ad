#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "easytype/infer_classic.hpp"
#include "easytype/infer_easy.hpp"
#include "easytype/parser.hpp"
#include "easytype/pretty.hpp"
#include "support/generators.hpp"

using namespace easytype;

namespace {

Program parse_ok(const std::string& src) {
  auto r = parse_program(src, "t.src");
  if (auto* err = std::get_if<ParseError>(&r))
    FAIL("parse error: " << err->message);
  return std::move(std::get<Program>(r));
}

struct Checked {
  TyStore store;
  TyEnv env;
  ProgramCheck result;
};

std::unique_ptr<Checked> easy_check(const std::string& src) {
  auto c = std::make_unique<Checked>();
  c->env = initial_env(c->store);
  Program prog = parse_ok(src);
  c->result = check_program_easy(c->env, prog);
  return c;
}

std::unique_ptr<Checked> classic_check(const std::string& src) {
  auto c = std::make_unique<Checked>();
  c->env = initial_env(c->store);
  Program prog = parse_ok(src);
  c->result = check_program_classic(c->env, prog);
  return c;
}

std::string span_text(const std::string& src, const Span& s) {
  return src.substr(s.byte_start, s.byte_end - s.byte_start);
}

std::string scheme_text(const Scheme& sc) {
  NamingContext naming;
  return to_string(snapshot(sc.body, naming));
}

const Diagnostic& diag_of(const Checked& c) {
  REQUIRE(!c.result.ok());
  return c.result.failure->diag;
}

struct RowExpect {
  const char* expected;
  const char* actual;
  bool clashed;
};

void expect_rows(const DiagAppMismatch& am,
                 std::initializer_list<RowExpect> rows) {
  REQUIRE(am.rows.size() == rows.size());
  int clashed_count = 0;
  std::size_t i = 0;
  for (const RowExpect& want : rows) {
    const ArgRow& got = am.rows[i];
    CAPTURE(i);
    CHECK(got.index == static_cast<int>(i) + 1);
    CHECK(to_string(got.expected) == want.expected);
    CHECK(to_string(got.actual) == want.actual);
    CHECK(got.clashed == want.clashed);
    clashed_count += got.clashed;
    ++i;
  }
  CHECK(clashed_count == 1);  // exactly one row is flagged
}

}  // namespace

TEST_CASE("application table: List.map over a float list") {
  std::string src = "let m = List.map (fun x -> x + 1) [1.0; 2.0]";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  auto* am = d.as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  // The error is located on the entire application.
  CHECK(span_text(src, d.span) == "List.map (fun x -> x + 1) [1.0; 2.0]");
  expect_rows(*am, {{"'a -> 'b", "int -> int", false},
                    {"'a list", "float list", true}});
  CHECK(d.suggestions.empty());
}

TEST_CASE("application table: swapped String.index arguments") {
  std::string src = "let i = String.index 'x' \"foo\"";
  auto c = easy_check(src);
  auto* am = diag_of(*c).as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  expect_rows(*am, {{"string", "char", true}, {"char", "string", false}});
}

TEST_CASE("float operations type-check") {
  auto c = easy_check("let x = 1.0 +. 2.0");
  REQUIRE(c->result.ok());
  CHECK(scheme_text(c->result.schemes[0].second) == "float");
}

TEST_CASE("application table: + used on floats") {
  std::string src = "let x = 2.0 + 1.0";
  auto c = easy_check(src);
  auto* am = diag_of(*c).as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  expect_rows(*am, {{"int", "float", true}, {"int", "float", false}});
}

TEST_CASE("application table: f - 1 shows the binary minus") {
  std::string src = "let f x = x + 1\nlet y = f - 1";
  auto c = easy_check(src);
  REQUIRE(c->result.failure->def_index == 2);
  auto* am = diag_of(*c).as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  expect_rows(*am, {{"int", "int -> int", true}, {"int", "int", false}});
}

TEST_CASE("too many arguments is claimed only when certain") {
  auto c = easy_check("let z = (fun x -> x) 1 2");
  auto* tm = diag_of(*c).as<DiagTooManyArgs>();
  REQUIRE(tm != nullptr);
  CHECK(tm->expected_arity == 1);
  CHECK(tm->given_arity == 2);
}

TEST_CASE("variable-return application reports ill-typed with the return") {
  std::string src =
      "let p = ((fun x -> x + 1), true)\n"
      "let q = fst p 2.0";
  auto c = easy_check(src);
  REQUIRE(c->result.failure->def_index == 2);
  auto* il = diag_of(*c).as<DiagIllTypedApp>();
  REQUIRE(il != nullptr);
  CHECK(to_string(il->fn_return) == "'a");

  // Applying through the variable return is fine when the types agree.
  auto ok = easy_check(
      "let p = ((fun x -> x + 1), true)\n"
      "let q = fst p 2");
  REQUIRE(ok->result.ok());
  CHECK(scheme_text(ok->result.schemes[1].second) == "int");
}

TEST_CASE("naming the intermediate function gives a plain table") {
  std::string src =
      "let p = ((fun x -> x + 1), true)\n"
      "let q = let f = fst p in let u = f 2.0 in u";
  auto c = easy_check(src);
  auto* am = diag_of(*c).as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  expect_rows(*am, {{"int", "float", true}});
}

TEST_CASE("if branches are reported symmetrically") {
  std::string src = "let f b = if b then 1 else 2.0";
  auto c = easy_check(src);
  auto* bm = diag_of(*c).as<DiagBranchMismatch>();
  REQUIRE(bm != nullptr);
  CHECK(bm->report.construct == BranchReport::Construct::If);
  CHECK(to_string(bm->report.accumulated) == "int");
  CHECK(to_string(bm->report.offending) == "float");
  CHECK(span_text(src, bm->report.counterpart_span) == "1");
  CHECK(span_text(src, bm->report.offending_span) == "2.0");
  // The diagnostic covers both branches instead of picking one.
  CHECK(span_text(src, diag_of(*c).span) == "1 else 2.0");
}

TEST_CASE("agreeing branches still unify") {
  auto c = easy_check("let f b = if b then 1 else 2");
  REQUIRE(c->result.ok());
  CHECK(scheme_text(c->result.schemes[0].second) == "bool -> int");
}

TEST_CASE("missing else is called out with the then type") {
  std::string src = "let f x y = if y > x then [x; y]";
  auto c = easy_check(src);
  auto* me = diag_of(*c).as<DiagMissingElse>();
  REQUIRE(me != nullptr);
  CHECK(to_string(me->then_type) == "'a list");
  CHECK(diag_of(*c).suggestions.empty());
}

TEST_CASE("residual bias through shared variables stays in branch two") {
  std::string src = "let f b x = if b then x + 1 else x +. 1.0";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  auto* am = d.as<DiagAppMismatch>();
  REQUIRE(am != nullptr);  // the else branch itself fails to type
  CHECK(span_text(src, d.span) == "x +. 1.0");
  expect_rows(*am, {{"float", "int", true}, {"float", "float", false}});
}

TEST_CASE("match: the first non-unifying arm is reported, symmetrically") {
  std::string src =
      "let f x = match x with 0 -> 0 | 1 -> 1 | n -> 2.0";
  auto c = easy_check(src);
  auto* bm = diag_of(*c).as<DiagBranchMismatch>();
  REQUIRE(bm != nullptr);
  CHECK(bm->report.construct == BranchReport::Construct::Match);
  CHECK(bm->report.offending_index == 3);
  CHECK(to_string(bm->report.accumulated) == "int");
  CHECK(to_string(bm->report.offending) == "float");
  CHECK(span_text(src, bm->report.offending_span) == "2.0");
}

TEST_CASE("single-arm match has the arm's type") {
  auto c = easy_check("let f l = match l with x :: _ -> x + 1");
  REQUIRE(c->result.ok());
  CHECK(scheme_text(c->result.schemes[0].second) == "int list -> int");
}

TEST_CASE("recursive match blames the arms, not the recursive call") {
  std::string src =
      "let rec sum l = match l with [] -> 0 | x :: r -> x +. sum r";
  auto easy = easy_check(src);
  auto* bm = diag_of(*easy).as<DiagBranchMismatch>();
  REQUIRE(bm != nullptr);
  CHECK(bm->report.offending_index == 2);
  CHECK(to_string(bm->report.accumulated) == "int");
  CHECK(to_string(bm->report.offending) == "float");

  // Classic mode, on the same program, fails inside the second arm.
  auto classic = classic_check(src);
  const Diagnostic& cd = diag_of(*classic);
  CHECK(cd.is<DiagGenericUnify>());
  const Span& arm2 = bm->report.offending_span;
  CHECK(arm2.byte_start <= cd.span.byte_start);
  CHECK(cd.span.byte_end <= arm2.byte_end);
}

TEST_CASE("while condition gets a construct-specific message") {
  std::string src = "let w = while 1 do () done";
  auto c = easy_check(src);
  auto* sm = diag_of(*c).as<DiagSubexprMismatch>();
  REQUIRE(sm != nullptr);
  CHECK(sm->role == SubexprRole::WhileCondition);
  CHECK(to_string(sm->expected) == "bool");
  CHECK(to_string(sm->actual) == "int");
  CHECK(span_text(src, diag_of(*c).span) == "1");

  auto ok = easy_check("let w = while true do () done");
  REQUIRE(ok->result.ok());
}

TEST_CASE("other construct roles: while body, if condition, patterns") {
  auto body = easy_check("let w = while true do 1 done");
  auto* sm1 = diag_of(*body).as<DiagSubexprMismatch>();
  REQUIRE(sm1 != nullptr);
  CHECK(sm1->role == SubexprRole::WhileBody);
  CHECK(to_string(sm1->expected) == "unit");
  CHECK(to_string(sm1->actual) == "int");

  auto cond = easy_check("let c = if 1 then 2 else 3");
  auto* sm2 = diag_of(*cond).as<DiagSubexprMismatch>();
  REQUIRE(sm2 != nullptr);
  CHECK(sm2->role == SubexprRole::IfCondition);
  CHECK(to_string(sm2->actual) == "int");

  std::string src = "let m = match 1 with [] -> 0";
  auto pat = easy_check(src);
  auto* sm3 = diag_of(*pat).as<DiagSubexprMismatch>();
  REQUIRE(sm3 != nullptr);
  CHECK(sm3->role == SubexprRole::PatternOfMatch);
  CHECK(to_string(sm3->expected) == "int");
  CHECK(to_string(sm3->actual) == "'a list");
  CHECK(span_text(src, diag_of(*pat).span) == "[]");
}

TEST_CASE("annotation conflicts surface as generic unification errors") {
  auto c = easy_check("let x = (1 : float)");
  auto* g = diag_of(*c).as<DiagGenericUnify>();
  REQUIRE(g != nullptr);
  CHECK(to_string(g->conflict.whole_left) == "float");
  CHECK(to_string(g->conflict.whole_right) == "int");

  auto ok = easy_check("let x = (1 : int)\nlet f = (fun v -> v : 'a -> 'a)");
  REQUIRE(ok->result.ok());
  CHECK(scheme_text(ok->result.schemes[1].second) == "'a -> 'a");
}

TEST_CASE("list literal element conflicts point at the element") {
  std::string src = "let l = [1; 2.0; 3]";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  REQUIRE(d.is<DiagGenericUnify>());
  CHECK(span_text(src, d.span) == "2.0");
}

TEST_CASE("sequence left-hand side must be unit (and classic agrees)") {
  std::string src = "let s = 3; ()";
  auto c = easy_check(src);
  auto* sm = diag_of(*c).as<DiagSubexprMismatch>();
  REQUIRE(sm != nullptr);
  CHECK(sm->role == SubexprRole::SeqLeft);
  CHECK(to_string(sm->expected) == "unit");
  CHECK(to_string(sm->actual) == "int");

  auto classic = classic_check(src);
  CHECK_FALSE(classic->result.ok());
}

TEST_CASE("missing unit argument: read_int") {
  std::string src = "let x = read_int + 1";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  auto* am = d.as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  expect_rows(*am, {{"int", "unit -> int", true}, {"int", "int", false}});
  REQUIRE(d.suggestions.size() == 1);
  CHECK(d.suggestions[0].kind == Suggestion::Kind::MissingUnit);
  CHECK_FALSE(d.suggestions[0].certain);  // "somewhere" stays
}

TEST_CASE("missing unit argument in a unit context is certain") {
  std::string src = "let m = print_newline; 3";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  auto* sm = d.as<DiagSubexprMismatch>();
  REQUIRE(sm != nullptr);
  CHECK(sm->role == SubexprRole::SeqLeft);
  CHECK(to_string(sm->actual) == "unit -> unit");
  REQUIRE(d.suggestions.size() == 1);
  CHECK(d.suggestions[0].kind == Suggestion::Kind::MissingUnit);
  CHECK(d.suggestions[0].certain);  // no "somewhere"
}

TEST_CASE("plain mismatches carry no suggestions") {
  auto c = easy_check("let x = 2.0 + 1.0");
  CHECK(diag_of(*c).suggestions.empty());
}

TEST_CASE("missing bang on a direct reference") {
  std::string src = "let r = ref 0\nlet p = print_int r";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  auto* am = d.as<DiagAppMismatch>();
  REQUIRE(am != nullptr);
  expect_rows(*am, {{"int", "int ref", true}});
  REQUIRE(d.suggestions.size() == 1);
  CHECK(d.suggestions[0].kind == Suggestion::Kind::MissingBang);
}

TEST_CASE("missing bang through a function result keeps 'somewhere'") {
  std::string src =
      "let f x = ref x\n"
      "let p = print_int (f 1)";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  REQUIRE(d.suggestions.size() == 1);
  CHECK(d.suggestions[0].kind == Suggestion::Kind::MissingBang);
  CHECK_FALSE(d.suggestions[0].certain);
}

TEST_CASE("bang suggestion requires the payload to fit") {
  // string vs int ref: dereferencing would not fix anything.
  std::string src = "let r = ref 0\nlet p = print_string r";
  auto c = easy_check(src);
  CHECK(diag_of(*c).suggestions.empty());
}

TEST_CASE("detectors are pure with respect to the session") {
  TyStore store;
  TyEnv env = initial_env(store);
  Ty* v = store.var(0);
  Ty* lhs = store.tint();
  Ty* rhs = store.tref(v);
  NamingContext naming;
  UnifyConflict c;
  c.kind = UnifyConflict::Kind::Mismatch;
  c.whole_left = snapshot(lhs, naming);
  c.whole_right = snapshot(rhs, naming);
  c.left = c.whole_left;
  c.right = c.whole_right;
  auto s = detect_missing_bang(c);
  REQUIRE(s.has_value());
  CHECK(v->link == nullptr);  // session untouched
  CHECK(detect_missing_unit(c, false) == std::nullopt);
}

TEST_CASE("missing rec is suggested via shadow bindings") {
  std::string src =
      "let fact n = if n = 0 then 1 else n * fact (n - 1)";
  auto c = easy_check(src);
  const Diagnostic& d = diag_of(*c);
  auto* uv = d.as<DiagUnboundVar>();
  REQUIRE(uv != nullptr);
  CHECK(uv->name == "fact");
  CHECK(uv->missing_rec);
  REQUIRE(d.suggestions.size() == 1);
  CHECK(d.suggestions[0].kind == Suggestion::Kind::MissingRec);
  CHECK(d.suggestions[0].name == "fact");

  auto plain = easy_check("let x = y");
  auto* uv2 = diag_of(*plain).as<DiagUnboundVar>();
  REQUIRE(uv2 != nullptr);
  CHECK_FALSE(uv2->missing_rec);
  CHECK(diag_of(*plain).suggestions.empty());

  auto ok = easy_check("let rec f n = f n");
  REQUIRE(ok->result.ok());
}

TEST_CASE("lookup_with_shadow as a unit") {
  TyStore store;
  TyEnv env = initial_env(store);
  env.add_shadow("g");
  Span sp;
  auto found = lookup_with_shadow(env, "fst", sp);
  CHECK(std::holds_alternative<const Scheme*>(found));
  auto missing = lookup_with_shadow(env, "g", sp);
  REQUIRE(std::holds_alternative<Diagnostic>(missing));
  CHECK(std::get<Diagnostic>(missing).as<DiagUnboundVar>()->missing_rec);
}

TEST_CASE("easy and classic agree on acceptance and schemes: fixtures") {
  const char* sources[] = {
      "let x = 1",
      "let id = fun x -> x\nlet y = id 3\nlet z = id true",
      "let f = fst\nlet s = snd",
      "let rec map f l = match l with [] -> [] | x :: r -> f x :: map f r",
      "let a = [1; 2; 3]\nlet b = List.map (fun x -> x * 2) a",
      "let r = ref 0\nlet u = r := !r + 1\nlet v = !r",
      "let c = if true then 'a' else 'b'",
      "let t = (1, (2.0, \"three\"))\nlet u = fst t",
      "let w = while false do () done",
      "let s = print_string \"hi\"; print_newline (); read_int ()",
      "let m = match [1] with [] -> 0 | x :: _ -> x",
      "let ann = (fun x -> x : int -> int)",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    auto e = easy_check(src);
    auto c = classic_check(src);
    REQUIRE(e->result.ok());
    REQUIRE(c->result.ok());
    REQUIRE(e->result.schemes.size() == c->result.schemes.size());
    for (std::size_t i = 0; i < e->result.schemes.size(); ++i) {
      CHECK(scheme_text(e->result.schemes[i].second) ==
            scheme_text(c->result.schemes[i].second));
    }
  }
}

TEST_CASE("easy and classic agree on random terms") {
  // Arbitrary (frequently ill-typed) terms over a small monomorphic env.
  const std::string prelude =
      "let a = 1\nlet b = true\nlet c = 'c'\nlet f = fun v -> v + 1\n"
      "let g = fun v w -> v + w\nlet x = 2\nlet y = 1.5\nlet z = \"z\"\n";
  testsupport::ExprGen gen(987654);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 400; ++i) {
    ExprPtr e = gen.gen(1 + i % 4);
    std::string src = prelude + "let probe = " + pretty_expr(*e);
    CAPTURE(src);
    auto easy = easy_check(src);
    auto classic = classic_check(src);
    REQUIRE(easy->result.ok() == classic->result.ok());
    if (easy->result.ok()) {
      ++accepted;
      CHECK(scheme_text(easy->result.schemes.back().second) ==
            scheme_text(classic->result.schemes.back().second));
    } else {
      ++rejected;
      CHECK(easy->result.failure->def_index ==
            classic->result.failure->def_index);
    }
  }
  CHECK(accepted > 20);
  CHECK(rejected > 20);
}

TEST_CASE("easy and classic agree on generated well-typed terms") {
  testsupport::WellTypedGen gen(13579);
  for (int i = 0; i < 300; ++i) {
    auto [expr, ty] = gen.gen(12);
    Program prog;
    TopDef def;
    def.name = "probe";
    def.body = std::move(expr);
    prog.defs.push_back(std::move(def));

    TyStore s1;
    TyEnv e1 = initial_env(s1);
    ProgramCheck easy = check_program_easy(e1, prog);
    TyStore s2;
    TyEnv e2 = initial_env(s2);
    ProgramCheck classic = check_program_classic(e2, prog);
    REQUIRE(easy.ok());
    REQUIRE(classic.ok());
    CHECK(scheme_text(easy.schemes[0].second) ==
          scheme_text(classic.schemes[0].second));
  }
}
