#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "easytype/diagnostic.hpp"
#include "easytype/display.hpp"
#include "easytype/span.hpp"

namespace easytype {

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= source.size(); ++i) {
    if (i == source.size() || source[i] == '\n') {
      lines.push_back(source.substr(start, i - start));
      start = i + 1;
    }
  }
  return lines;
}

inline std::string plural(int n, const char* word) {
  std::string s = std::to_string(n);
  s += ' ';
  s += word;
  if (n != 1) s += 's';
  return s;
}

constexpr const char* kMarkOn = "\x1b[1;31m";
constexpr const char* kMarkOff = "\x1b[0m";

inline std::string header_line(const Span& s) {
  std::string out = "File \"" + s.file + "\", ";
  if (s.single_line()) {
    out += "line " + std::to_string(s.start_line) + ", characters " +
           std::to_string(s.start_col - 1) + "-" +
           std::to_string(s.end_col - 1) + ":";
  } else {
    out += "lines " + std::to_string(s.start_line) + "-" +
           std::to_string(s.end_line) + ", characters " +
           std::to_string(s.start_col - 1) + "-" +
           std::to_string(s.end_col - 1) + ":";
  }
  return out;
}

inline void excerpt(const Span& s, std::string_view source, bool color,
                    std::string& out) {
  auto lines = split_lines(source);
  if (s.start_line < 1 ||
      static_cast<std::size_t>(s.start_line) > lines.size())
    return;
  int last = std::min<int>(s.end_line, static_cast<int>(lines.size()));
  int width = static_cast<int>(std::to_string(last).size());
  for (int ln = s.start_line; ln <= last; ++ln) {
    std::string num = std::to_string(ln);
    out += std::string(width - num.size(), ' ') + num + " | ";
    out += std::string(lines[ln - 1]);
    out += '\n';
  }
  if (s.single_line()) {
    int caret_count = std::max(1, s.end_col - s.start_col);
    out += std::string(width, ' ') + "   ";
    out += std::string(s.start_col - 1, ' ');
    if (color) out += kMarkOn;
    out += std::string(caret_count, '^');
    if (color) out += kMarkOff;
    out += '\n';
  }
}

inline const char* role_phrase(SubexprRole role) {
  switch (role) {
    case SubexprRole::WhileCondition: return "the condition of a while loop";
    case SubexprRole::WhileBody: return "the body of a while loop";
    case SubexprRole::IfCondition: return "the condition of an if expression";
    case SubexprRole::SeqLeft: return "the left-hand side of a sequence";
    case SubexprRole::PatternOfMatch: return "";
  }
  return "";
}

inline std::string suggestion_sentence(const Suggestion& s) {
  switch (s.kind) {
    case Suggestion::Kind::MissingUnit:
      return s.certain
                 ? "You probably forgot to provide `()` as argument."
                 : "You probably forgot to provide `()` as argument "
                   "somewhere.";
    case Suggestion::Kind::MissingBang:
      return "You probably forgot a `!` or a `ref` somewhere.";
    case Suggestion::Kind::MissingRec:
      return "You probably meant to use `let rec`.";
  }
  return "";
}

inline void render_app_table(const std::vector<ArgRow>& rows, bool color,
                             std::string& out) {
  std::size_t width = std::string("expected").size();
  for (auto& r : rows) width = std::max(width, to_string(r.expected).size());
  auto pad = [&](const std::string& s) {
    return s + std::string(width - s.size(), ' ');
  };
  out += "  " + pad("expected") + " | provided\n";
  for (auto& r : rows) {
    std::string line = (r.clashed ? "* " : "  ") + pad(to_string(r.expected)) +
                       " | " + to_string(r.actual);
    if (r.clashed && color)
      out += kMarkOn + line + kMarkOff;
    else
      out += line;
    out += '\n';
  }
}

inline void render_body(const Diagnostic& d, bool color, std::string& out) {
  if (auto* v = d.as<DiagAppMismatch>()) {
    out += "Error: This application is ill-typed.\n";
    render_app_table(v->rows, color, out);
  } else if (auto* v = d.as<DiagTooManyArgs>()) {
    if (v->expected_arity == 0) {
      out += "Error: This expression is not a function; it cannot be "
             "applied.\n";
    } else {
      out += "Error: This function is applied to " +
             plural(v->given_arity, "argument") + ", but it expects at most " +
             std::to_string(v->expected_arity) + ".\n";
    }
  } else if (auto* v = d.as<DiagIllTypedApp>()) {
    out += "Error: This application is ill-typed.\n";
    out += "The return type of the function is " + to_string(v->fn_return) +
           ".\n";
  } else if (auto* v = d.as<DiagBranchMismatch>()) {
    const BranchReport& r = v->report;
    if (r.construct == BranchReport::Construct::If) {
      out += "Error: The branches of this conditional have incompatible "
             "types.\n";
      out += "The then branch has type " + to_string(r.accumulated) +
             " and the else branch has type " + to_string(r.offending) +
             ".\n";
    } else {
      out += "Error: The branches of this pattern matching have incompatible "
             "types.\n";
      int n = r.offending_index - 1;
      if (n == 1) {
        out += "Branch 1 has type " + to_string(r.accumulated) +
               " and branch 2 has type " + to_string(r.offending) + ".\n";
      } else {
        out += "Branches 1 to " + std::to_string(n) + " have type " +
               to_string(r.accumulated) + " and branch " +
               std::to_string(r.offending_index) + " has type " +
               to_string(r.offending) + ".\n";
      }
      out += "Branch " + std::to_string(r.offending_index) +
             " is the first that does not unify; it is not necessarily the "
             "one to blame.\n";
    }
  } else if (auto* v = d.as<DiagMissingElse>()) {
    out += "Error: This conditional has no else branch, so it should have "
           "type unit, but its then branch has type " +
           to_string(v->then_type) + ".\n";
    out += "An else branch may be missing.\n";
  } else if (auto* v = d.as<DiagSubexprMismatch>()) {
    if (v->role == SubexprRole::PatternOfMatch) {
      out += "Error: This pattern matches values of type " +
             to_string(v->actual) + ", but a pattern was expected of type " +
             to_string(v->expected) + ".\n";
    } else {
      out += std::string("Error: This expression is ") +
             role_phrase(v->role) + ", so it should have type " +
             to_string(v->expected) + ", but it has type " +
             to_string(v->actual) + ".\n";
    }
  } else if (auto* v = d.as<DiagUnboundVar>()) {
    out += "Error: Unbound variable " + v->name + ".\n";
  } else if (auto* v = d.as<DiagGenericUnify>()) {
    const UnifyConflict& c = v->conflict;
    out += "Error: This expression has type " + to_string(c.whole_right) +
           " but an expression was expected of type " +
           to_string(c.whole_left) + ".\n";
    if (c.kind == UnifyConflict::Kind::OccursCheck) {
      const DisplayTy& var_side = c.left.is_var() ? c.left : c.right;
      const DisplayTy& ty_side = c.left.is_var() ? c.right : c.left;
      out += "The type variable " + to_string(var_side) + " occurs inside " +
             to_string(ty_side) + ".\n";
    }
  } else if (auto* v = d.as<DiagParseError>()) {
    out += "Error: Syntax error: " + v->message + ".\n";
  }
}

}  // namespace detail

/// Deterministic text rendering: location header, caret-underlined source
/// excerpt, the kind-specific body, then one sentence per suggestion.
/// Byte-identical across runs; LF line endings.
inline std::string render_text(const Diagnostic& d, std::string_view source,
                               bool color = false) {
  std::string out;
  out += detail::header_line(d.span);
  out += '\n';
  detail::excerpt(d.span, source, color, out);
  detail::render_body(d, color, out);
  for (auto& s : d.suggestions) {
    out += detail::suggestion_sentence(s);
    out += '\n';
  }
  return out;
}

}  // namespace easytype
