#include <catch2/catch_amalgamated.hpp>

#include <set>
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

// Classic-checks a source string in a fresh session.
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

void collect_vars(const Ty* t, std::set<int>& out) {
  const Ty* r = repr_nc(t);
  switch (r->tag) {
    case TyTag::Var: out.insert(r->var_id); return;
    case TyTag::Arrow:
      collect_vars(r->param, out);
      collect_vars(r->result, out);
      return;
    default:
      for (auto* a : r->args) collect_vars(a, out);
  }
}

}  // namespace

TEST_CASE("classic blames the element inside the second argument") {
  std::string src = "let m = List.map (fun x -> x + 1) [1.0]";
  auto c = classic_check(src);
  REQUIRE_FALSE(c->result.ok());
  const Diagnostic& d = c->result.failure->diag;
  REQUIRE(d.is<DiagGenericUnify>());
  CHECK(span_text(src, d.span) == "1.0");
  auto* g = d.as<DiagGenericUnify>();
  CHECK(to_string(g->conflict.whole_left) == "int");
  CHECK(to_string(g->conflict.whole_right) == "float");
}

TEST_CASE("classic systematically blames the else branch") {
  std::string src = "let f b = if b then 1 else 2.0";
  auto c = classic_check(src);
  REQUIRE_FALSE(c->result.ok());
  const Diagnostic& d = c->result.failure->diag;
  REQUIRE(d.is<DiagGenericUnify>());
  CHECK(span_text(src, d.span) == "2.0");
}

TEST_CASE("classic accepts the smallest program") {
  auto c = classic_check("let x = 1");
  REQUIRE(c->result.ok());
  REQUIRE(c->result.schemes.size() == 1);
  CHECK(scheme_text(c->result.schemes[0].second) == "int");
}

TEST_CASE("classic reports the fold_left swap as an occurs check") {
  std::string src = "let s = List.fold_left (fun x l -> x :: l) [] [1; 2; 3]";
  auto c = classic_check(src);
  REQUIRE_FALSE(c->result.ok());
  auto* g = c->result.failure->diag.as<DiagGenericUnify>();
  REQUIRE(g != nullptr);
  CHECK(g->conflict.kind == UnifyConflict::Kind::OccursCheck);
  CHECK(to_string(g->conflict.left) == "'a");
  CHECK(to_string(g->conflict.right) == "'a list");
}

TEST_CASE("classic principal types match hand derivations") {
  auto c = classic_check(
      "let id = fun x -> x\n"
      "let app = fun f -> fun x -> f x\n"
      "let compose f g x = f (g x)\n"
      "let rec len l = match l with [] -> 0 | _ :: r -> 1 + len r");
  REQUIRE(c->result.ok());
  CHECK(scheme_text(c->result.schemes[0].second) == "'a -> 'a");
  CHECK(scheme_text(c->result.schemes[1].second) == "('a -> 'b) -> 'a -> 'b");
  CHECK(scheme_text(c->result.schemes[2].second) ==
        "('a -> 'b) -> ('c -> 'a) -> 'c -> 'b");
  CHECK(scheme_text(c->result.schemes[3].second) == "'a list -> int");
  CHECK(c->result.schemes[0].second.quantified.size() == 1);
  CHECK(c->result.schemes[1].second.quantified.size() == 2);
}

TEST_CASE("value restriction keeps non-values monomorphic") {
  auto c = classic_check("let r = ref []");
  REQUIRE(c->result.ok());
  const Scheme& sc = c->result.schemes[0].second;
  CHECK(sc.quantified.empty());
  CHECK(scheme_text(sc) == "'a list ref");

  // A syntactic value generalizes as usual.
  auto v = classic_check("let p = (fun x -> x, [])");
  REQUIRE(v->result.ok());
  CHECK(v->result.schemes[0].second.quantified.size() == 2);
}

TEST_CASE("check_program_classic stops at the first failure") {
  auto ok = classic_check("let a = 1\nlet b = a + 1");
  REQUIRE(ok->result.ok());
  CHECK(ok->result.schemes.size() == 2);

  auto bad = classic_check("let a = 1\nlet b = a +. 1.0\nlet c = 2");
  REQUIRE_FALSE(bad->result.ok());
  CHECK(bad->result.failure->def_index == 2);
  CHECK(bad->result.schemes.size() == 1);  // the defs before the failure
}

TEST_CASE("classic handles a generated 500-definition program") {
  std::string src = "let x0 = 1\n";
  for (int i = 1; i < 500; ++i) {
    src += "let x" + std::to_string(i) + " = x" + std::to_string(i - 1) +
           " + " + std::to_string(i) + "\n";
  }
  auto c = classic_check(src);
  REQUIRE(c->result.ok());
  CHECK(c->result.schemes.size() == 500);
  CHECK(scheme_text(c->result.schemes[499].second) == "int");
}

TEST_CASE("classic rejects over-application and non-functions") {
  auto bad = classic_check("let z = (fun x -> x) 1 2");
  REQUIRE_FALSE(bad->result.ok());
  CHECK(bad->result.failure->diag.is<DiagGenericUnify>());

  auto notfn = classic_check("let z = 1 2");
  REQUIRE_FALSE(notfn->result.ok());
}

TEST_CASE("classic unbound variable") {
  auto c = classic_check("let x = y");
  REQUIRE_FALSE(c->result.ok());
  auto* u = c->result.failure->diag.as<DiagUnboundVar>();
  REQUIRE(u != nullptr);
  CHECK(u->name == "y");
  CHECK_FALSE(u->missing_rec);
}

TEST_CASE("recursion through the function's own result type") {
  auto c = classic_check(
      "let rec fact n = if n = 0 then 1 else n * fact (n - 1)\n"
      "let v = fact 5");
  REQUIRE(c->result.ok());
  CHECK(scheme_text(c->result.schemes[0].second) == "int -> int");
}

TEST_CASE("level soundness: no scheme quantifies a var reachable elsewhere") {
  testsupport::WellTypedGen gen(424242);
  for (int round = 0; round < 150; ++round) {
    TyStore store;
    TyEnv env = initial_env(store);
    Program prog;
    for (int d = 0; d < 3; ++d) {
      auto [expr, ty] = gen.gen(10);
      TopDef def;
      def.name = "d" + std::to_string(d);
      def.body = std::move(expr);
      prog.defs.push_back(std::move(def));
    }
    ProgramCheck result = check_program_classic(env, prog);
    REQUIRE(result.ok());
    // Walk the final environment: a scheme's quantified variables must not
    // be reachable from any other binding (including the initial env).
    for (std::size_t i = 0; i < result.schemes.size(); ++i) {
      std::set<int> reachable;
      for (auto& [name, sc] : env.bindings) {
        if (name == result.schemes[i].first) continue;
        collect_vars(sc.body, reachable);
      }
      for (std::size_t j = 0; j < result.schemes.size(); ++j)
        if (i != j) collect_vars(result.schemes[j].second.body, reachable);
      for (int q : result.schemes[i].second.quantified)
        CHECK(reachable.count(q) == 0);
    }
  }
}
