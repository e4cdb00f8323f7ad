#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "easytype/diagnostic.hpp"
#include "easytype/parser.hpp"

namespace easytype {

namespace detail {

inline nlohmann::json span_to_json(const Span& s) {
  return nlohmann::json{{"start_line", s.start_line},
                        {"start_col", s.start_col},
                        {"end_line", s.end_line},
                        {"end_col", s.end_col},
                        {"byte_start", s.byte_start},
                        {"byte_end", s.byte_end}};
}

inline Span span_from_json(const nlohmann::json& j, const std::string& file) {
  Span s;
  s.file = file;
  s.start_line = j.at("start_line").get<int>();
  s.start_col = j.at("start_col").get<int>();
  s.end_line = j.at("end_line").get<int>();
  s.end_col = j.at("end_col").get<int>();
  s.byte_start = j.at("byte_start").get<std::size_t>();
  s.byte_end = j.at("byte_end").get<std::size_t>();
  return s;
}

inline std::string ty_str(const DisplayTy& t) { return to_string(t); }

inline DisplayTy ty_from_str(const std::string& s) {
  auto parsed = parse_type_expr(s);
  if (auto* err = std::get_if<ParseError>(&parsed))
    throw std::runtime_error("bad type text in diagnostic JSON: " +
                             err->message);
  return std::get<DisplayTy>(parsed);
}

inline const char* role_tag(SubexprRole role) {
  switch (role) {
    case SubexprRole::WhileCondition: return "while_condition";
    case SubexprRole::WhileBody: return "while_body";
    case SubexprRole::IfCondition: return "if_condition";
    case SubexprRole::SeqLeft: return "seq_left";
    case SubexprRole::PatternOfMatch: return "pattern_of_match";
  }
  return "?";
}

inline SubexprRole role_from_tag(const std::string& tag) {
  if (tag == "while_condition") return SubexprRole::WhileCondition;
  if (tag == "while_body") return SubexprRole::WhileBody;
  if (tag == "if_condition") return SubexprRole::IfCondition;
  if (tag == "seq_left") return SubexprRole::SeqLeft;
  return SubexprRole::PatternOfMatch;
}

}  // namespace detail

/// Stable machine-readable encoding of a diagnostic (schema version 1).
/// Types are carried in the same text grammar the type parser accepts, so
/// decoders can rebuild the trees.
inline std::string render_json(const Diagnostic& d) {
  using nlohmann::json;
  json j;
  j["version"] = 1;
  j["kind"] = diagnostic_kind_name(d);
  j["file"] = d.span.file;
  j["span"] = detail::span_to_json(d.span);

  if (auto* v = d.as<DiagAppMismatch>()) {
    json rows = json::array();
    for (auto& r : v->rows)
      rows.push_back(json{{"index", r.index},
                          {"expected", detail::ty_str(r.expected)},
                          {"actual", detail::ty_str(r.actual)},
                          {"clashed", r.clashed}});
    j["rows"] = std::move(rows);
  } else if (auto* v = d.as<DiagTooManyArgs>()) {
    j["expected_arity"] = v->expected_arity;
    j["given_arity"] = v->given_arity;
  } else if (auto* v = d.as<DiagIllTypedApp>()) {
    j["fn_return"] = detail::ty_str(v->fn_return);
  } else if (auto* v = d.as<DiagBranchMismatch>()) {
    const BranchReport& r = v->report;
    j["construct"] =
        r.construct == BranchReport::Construct::If ? "if" : "match";
    j["accumulated"] = detail::ty_str(r.accumulated);
    j["offending"] = detail::ty_str(r.offending);
    j["offending_index"] = r.offending_index;
    j["offending_span"] = detail::span_to_json(r.offending_span);
    j["counterpart_span"] = detail::span_to_json(r.counterpart_span);
  } else if (auto* v = d.as<DiagMissingElse>()) {
    j["then_type"] = detail::ty_str(v->then_type);
  } else if (auto* v = d.as<DiagSubexprMismatch>()) {
    j["role"] = detail::role_tag(v->role);
    j["expected"] = detail::ty_str(v->expected);
    j["actual"] = detail::ty_str(v->actual);
  } else if (auto* v = d.as<DiagUnboundVar>()) {
    j["name"] = v->name;
    j["missing_rec"] = v->missing_rec;
  } else if (auto* v = d.as<DiagGenericUnify>()) {
    j["conflict"] = json{
        {"kind", v->conflict.kind == UnifyConflict::Kind::OccursCheck
                     ? "occurs_check"
                     : "mismatch"},
        {"left", detail::ty_str(v->conflict.left)},
        {"right", detail::ty_str(v->conflict.right)},
        {"whole_left", detail::ty_str(v->conflict.whole_left)},
        {"whole_right", detail::ty_str(v->conflict.whole_right)}};
  } else if (auto* v = d.as<DiagParseError>()) {
    j["message"] = v->message;
  }

  json suggestions = json::array();
  for (auto& s : d.suggestions) {
    switch (s.kind) {
      case Suggestion::Kind::MissingUnit:
        suggestions.push_back(
            json{{"suggestion", "missing_unit"}, {"certain", s.certain}});
        break;
      case Suggestion::Kind::MissingBang:
        suggestions.push_back(json{{"suggestion", "missing_bang"}});
        break;
      case Suggestion::Kind::MissingRec:
        suggestions.push_back(
            json{{"suggestion", "missing_rec"}, {"name", s.name}});
        break;
    }
  }
  j["suggestions"] = std::move(suggestions);
  return j.dump(2);
}

/// Decodes a diagnostic produced by render_json. Throws std::runtime_error
/// on malformed input.
inline Diagnostic parse_diagnostic_json(const std::string& text) {
  using nlohmann::json;
  json j = json::parse(text);
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("unsupported diagnostic schema version");
  std::string file = j.at("file").get<std::string>();
  Diagnostic d;
  d.span = detail::span_from_json(j.at("span"), file);
  std::string kind = j.at("kind").get<std::string>();

  if (kind == "app_mismatch") {
    DiagAppMismatch v;
    for (auto& r : j.at("rows")) {
      ArgRow row;
      row.index = r.at("index").get<int>();
      row.expected = detail::ty_from_str(r.at("expected").get<std::string>());
      row.actual = detail::ty_from_str(r.at("actual").get<std::string>());
      row.clashed = r.at("clashed").get<bool>();
      v.rows.push_back(std::move(row));
    }
    d.kind = std::move(v);
  } else if (kind == "too_many_args") {
    d.kind = DiagTooManyArgs{j.at("expected_arity").get<int>(),
                             j.at("given_arity").get<int>()};
  } else if (kind == "ill_typed_app") {
    d.kind = DiagIllTypedApp{
        detail::ty_from_str(j.at("fn_return").get<std::string>())};
  } else if (kind == "branch_mismatch") {
    BranchReport r;
    r.construct = j.at("construct").get<std::string>() == "if"
                      ? BranchReport::Construct::If
                      : BranchReport::Construct::Match;
    r.accumulated =
        detail::ty_from_str(j.at("accumulated").get<std::string>());
    r.offending = detail::ty_from_str(j.at("offending").get<std::string>());
    r.offending_index = j.at("offending_index").get<int>();
    r.offending_span = detail::span_from_json(j.at("offending_span"), file);
    r.counterpart_span =
        detail::span_from_json(j.at("counterpart_span"), file);
    d.kind = DiagBranchMismatch{std::move(r)};
  } else if (kind == "missing_else") {
    d.kind = DiagMissingElse{
        detail::ty_from_str(j.at("then_type").get<std::string>())};
  } else if (kind == "subexpr_mismatch") {
    d.kind = DiagSubexprMismatch{
        detail::role_from_tag(j.at("role").get<std::string>()),
        detail::ty_from_str(j.at("expected").get<std::string>()),
        detail::ty_from_str(j.at("actual").get<std::string>())};
  } else if (kind == "unbound_var") {
    d.kind = DiagUnboundVar{j.at("name").get<std::string>(),
                            j.at("missing_rec").get<bool>()};
  } else if (kind == "generic_unify") {
    const auto& c = j.at("conflict");
    UnifyConflict conflict;
    conflict.kind = c.at("kind").get<std::string>() == "occurs_check"
                        ? UnifyConflict::Kind::OccursCheck
                        : UnifyConflict::Kind::Mismatch;
    conflict.left = detail::ty_from_str(c.at("left").get<std::string>());
    conflict.right = detail::ty_from_str(c.at("right").get<std::string>());
    conflict.whole_left =
        detail::ty_from_str(c.at("whole_left").get<std::string>());
    conflict.whole_right =
        detail::ty_from_str(c.at("whole_right").get<std::string>());
    d.kind = DiagGenericUnify{std::move(conflict)};
  } else if (kind == "parse_error") {
    d.kind = DiagParseError{j.at("message").get<std::string>()};
  } else {
    throw std::runtime_error("unknown diagnostic kind: " + kind);
  }

  for (auto& s : j.at("suggestions")) {
    std::string tag = s.at("suggestion").get<std::string>();
    if (tag == "missing_unit") {
      d.suggestions.push_back(Suggestion{Suggestion::Kind::MissingUnit,
                                         s.at("certain").get<bool>(), ""});
    } else if (tag == "missing_bang") {
      d.suggestions.push_back(
          Suggestion{Suggestion::Kind::MissingBang, false, ""});
    } else if (tag == "missing_rec") {
      d.suggestions.push_back(Suggestion{Suggestion::Kind::MissingRec, false,
                                         s.at("name").get<std::string>()});
    }
  }
  return d;
}

}  // namespace easytype
