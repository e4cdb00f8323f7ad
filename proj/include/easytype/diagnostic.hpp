#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "easytype/display.hpp"
#include "easytype/span.hpp"
#include "easytype/unify.hpp"

namespace easytype {

/// One line of the expected/provided table for an ill-typed application.
/// Both snapshots are taken before any argument unification, under one
/// naming context, so a shared variable prints identically across rows.
struct ArgRow {
  int index = 1;  // 1-based argument position
  DisplayTy expected;
  DisplayTy actual;
  bool clashed = false;  // whether this row's pairwise unification failed
};

/// Payload of a branch-type mismatch in a conditional or pattern matching.
struct BranchReport {
  enum class Construct { If, Match };
  Construct construct = Construct::If;
  DisplayTy accumulated;   // unified type of branches 1..n (then-type for If)
  DisplayTy offending;     // type of branch n+1 (else-type for If)
  int offending_index = 2;
  Span offending_span;
  Span counterpart_span;
};

enum class SubexprRole {
  WhileCondition,
  WhileBody,
  IfCondition,
  SeqLeft,
  PatternOfMatch,
};

struct Suggestion {
  enum class Kind { MissingUnit, MissingBang, MissingRec };
  Kind kind = Kind::MissingUnit;
  bool certain = false;  // MissingUnit: drop "somewhere" when certain
  std::string name;      // MissingRec: the variable to rebind with let rec

  bool operator==(const Suggestion& o) const {
    return kind == o.kind && certain == o.certain && name == o.name;
  }
};

// ---------------------------------------------------------------------------
// Diagnostic kinds

struct DiagAppMismatch {
  std::vector<ArgRow> rows;
};
struct DiagTooManyArgs {
  int expected_arity = 0;
  int given_arity = 0;
};
struct DiagIllTypedApp {
  DisplayTy fn_return;
};
struct DiagBranchMismatch {
  BranchReport report;
};
struct DiagMissingElse {
  DisplayTy then_type;
};
struct DiagSubexprMismatch {
  SubexprRole role = SubexprRole::WhileCondition;
  DisplayTy expected;
  DisplayTy actual;
};
struct DiagUnboundVar {
  std::string name;
  bool missing_rec = false;
};
struct DiagGenericUnify {
  UnifyConflict conflict;
};
struct DiagParseError {
  std::string message;
};

struct Diagnostic {
  using Kind =
      std::variant<DiagAppMismatch, DiagTooManyArgs, DiagIllTypedApp,
                   DiagBranchMismatch, DiagMissingElse, DiagSubexprMismatch,
                   DiagUnboundVar, DiagGenericUnify, DiagParseError>;
  Kind kind;
  Span span;
  std::vector<Suggestion> suggestions;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind);
  }
};

inline const char* diagnostic_kind_name(const Diagnostic& d) {
  if (d.is<DiagAppMismatch>()) return "app_mismatch";
  if (d.is<DiagTooManyArgs>()) return "too_many_args";
  if (d.is<DiagIllTypedApp>()) return "ill_typed_app";
  if (d.is<DiagBranchMismatch>()) return "branch_mismatch";
  if (d.is<DiagMissingElse>()) return "missing_else";
  if (d.is<DiagSubexprMismatch>()) return "subexpr_mismatch";
  if (d.is<DiagUnboundVar>()) return "unbound_var";
  if (d.is<DiagGenericUnify>()) return "generic_unify";
  return "parse_error";
}

/// Thrown by the inference recursion; public entry points catch it and
/// return the diagnostic as a value.
struct InferFail {
  Diagnostic diag;
};

}  // namespace easytype
