#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "easytype/span.hpp"

namespace easytype {

struct ParseError {
  Span span;
  std::string message;
};

enum class Tok {
  Int,
  Float,
  String,
  Char,
  TyVar,  // 'a (inside type annotations)
  Ident,  // possibly dotted: List.map
  KwLet,
  KwRec,
  KwIn,
  KwFun,
  KwIf,
  KwThen,
  KwElse,
  KwMatch,
  KwWith,
  KwWhile,
  KwDo,
  KwDone,
  KwTrue,
  KwFalse,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  SemiSemi,
  Colon,
  Arrow,   // ->
  Bar,     // |
  Underscore,
  Op,      // + - * / +. -. *. /. :: := ! = < > <= >= <> ~-
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;       // identifier, operator symbol, or literal text
  long long int_val = 0;
  double float_val = 0;
  std::string str_val;    // decoded string/char payload
  Span span;
};

class Lexer {
 public:
  Lexer(std::string_view source, std::string file)
      : src_(source), file_(std::move(file)) {}

  // Tokenizes the whole input. Throws ParseError on malformed text.
  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws_and_comments();
      if (eof()) {
        out.push_back(simple(Tok::Eof, pos_, pos_));
        return out;
      }
      out.push_back(next_token());
    }
  }

 private:
  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  Span span_from(std::size_t byte_start, int l, int c) const {
    Span s;
    s.file = file_;
    s.byte_start = byte_start;
    s.byte_end = pos_;
    s.start_line = l;
    s.start_col = c;
    s.end_line = line_;
    s.end_col = col_;
    return s;
  }

  Token simple(Tok kind, std::size_t byte_start, std::size_t byte_end) {
    Token t;
    t.kind = kind;
    Span s;
    s.file = file_;
    s.byte_start = byte_start;
    s.byte_end = byte_end;
    s.start_line = s.end_line = line_;
    s.start_col = s.end_col = col_;
    t.span = s;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t byte_start,
                         int l, int c) const {
    throw ParseError{span_from(byte_start, l, c), msg};
  }

  void skip_ws_and_comments() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
        advance();
      if (peek() == '(' && peek(1) == '*') {
        std::size_t start = pos_;
        int l = line_, c = col_;
        advance();
        advance();
        int depth = 1;
        while (depth > 0) {
          if (eof()) fail("unterminated comment", start, l, c);
          if (peek() == '(' && peek(1) == '*') {
            advance();
            advance();
            ++depth;
          } else if (peek() == '*' && peek(1) == ')') {
            advance();
            advance();
            --depth;
          } else {
            advance();
          }
        }
        continue;
      }
      return;
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  Token next_token() {
    std::size_t start = pos_;
    int l = line_, c = col_;
    char ch = peek();

    if (std::isdigit(static_cast<unsigned char>(ch))) return lex_number(start, l, c);
    if (ch == '"') return lex_string(start, l, c);
    if (ch == '\'') return lex_quote(start, l, c);
    if (ident_start(ch)) return lex_ident(start, l, c);
    return lex_symbol(start, l, c);
  }

  Token lex_number(std::size_t start, int l, int c) {
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    bool is_float = false;
    if (peek() == '.' &&
        !(std::isalpha(static_cast<unsigned char>(peek(1))))) {
      // A float literal requires the dot: 2.0 or 2.
      is_float = true;
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    Token t;
    t.text = std::string(src_.substr(start, pos_ - start));
    if (is_float) {
      t.kind = Tok::Float;
      t.float_val = std::stod(t.text);
    } else {
      t.kind = Tok::Int;
      try {
        t.int_val = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        fail("integer literal out of range", start, l, c);
      }
    }
    t.span = span_from(start, l, c);
    return t;
  }

  char decode_escape(std::size_t start, int l, int c) {
    advance();  // backslash
    if (eof()) fail("unterminated escape sequence", start, l, c);
    char e = advance();
    switch (e) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case '\\': return '\\';
      case '"': return '"';
      case '\'': return '\'';
      default: fail("unknown escape sequence", start, l, c);
    }
  }

  Token lex_string(std::size_t start, int l, int c) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (eof()) fail("unterminated string literal", start, l, c);
      char ch = peek();
      if (ch == '"') {
        advance();
        break;
      }
      if (ch == '\\') {
        value += decode_escape(start, l, c);
      } else {
        value += advance();
      }
    }
    Token t;
    t.kind = Tok::String;
    t.str_val = value;
    t.text = std::string(src_.substr(start, pos_ - start));
    t.span = span_from(start, l, c);
    return t;
  }

  // A single quote starts either a char literal ('x', '\n') or a type
  // variable ('a, inside annotations). The closing quote disambiguates.
  Token lex_quote(std::size_t start, int l, int c) {
    advance();  // quote
    if (peek() == '\\') {
      char v = decode_escape(start, l, c);
      if (peek() != '\'') fail("unterminated character literal", start, l, c);
      advance();
      Token t;
      t.kind = Tok::Char;
      t.str_val = std::string(1, v);
      t.text = std::string(src_.substr(start, pos_ - start));
      t.span = span_from(start, l, c);
      return t;
    }
    if (peek() != '\0' && peek(1) == '\'') {
      char v = advance();
      advance();
      Token t;
      t.kind = Tok::Char;
      t.str_val = std::string(1, v);
      t.text = std::string(src_.substr(start, pos_ - start));
      t.span = span_from(start, l, c);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      std::string name = "'";
      while (ident_cont(peek()) && peek() != '\'') name += advance();
      Token t;
      t.kind = Tok::TyVar;
      t.text = name;
      t.span = span_from(start, l, c);
      return t;
    }
    fail("stray single quote", start, l, c);
  }

  Token lex_ident(std::size_t start, int l, int c) {
    advance();
    while (ident_cont(peek())) advance();
    // Dotted stdlib names (List.map, String.index) are single identifiers.
    while (peek() == '.' && ident_start(peek(1)) &&
           std::isupper(static_cast<unsigned char>(src_[start]))) {
      advance();
      while (ident_cont(peek())) advance();
    }
    std::string text(src_.substr(start, pos_ - start));
    Token t;
    t.span = span_from(start, l, c);
    t.text = text;
    if (text == "_") {
      t.kind = Tok::Underscore;
    } else if (text == "let") {
      t.kind = Tok::KwLet;
    } else if (text == "rec") {
      t.kind = Tok::KwRec;
    } else if (text == "in") {
      t.kind = Tok::KwIn;
    } else if (text == "fun") {
      t.kind = Tok::KwFun;
    } else if (text == "if") {
      t.kind = Tok::KwIf;
    } else if (text == "then") {
      t.kind = Tok::KwThen;
    } else if (text == "else") {
      t.kind = Tok::KwElse;
    } else if (text == "match") {
      t.kind = Tok::KwMatch;
    } else if (text == "with") {
      t.kind = Tok::KwWith;
    } else if (text == "while") {
      t.kind = Tok::KwWhile;
    } else if (text == "do") {
      t.kind = Tok::KwDo;
    } else if (text == "done") {
      t.kind = Tok::KwDone;
    } else if (text == "true") {
      t.kind = Tok::KwTrue;
    } else if (text == "false") {
      t.kind = Tok::KwFalse;
    } else {
      t.kind = Tok::Ident;
    }
    return t;
  }

  Token lex_symbol(std::size_t start, int l, int c) {
    char ch = advance();
    Token t;
    auto finish = [&](Tok kind, std::string text) {
      t.kind = kind;
      t.text = std::move(text);
      t.span = span_from(start, l, c);
      return t;
    };
    switch (ch) {
      case '(': return finish(Tok::LParen, "(");
      case ')': return finish(Tok::RParen, ")");
      case '[': return finish(Tok::LBracket, "[");
      case ']': return finish(Tok::RBracket, "]");
      case ',': return finish(Tok::Comma, ",");
      case ';':
        if (peek() == ';') {
          advance();
          return finish(Tok::SemiSemi, ";;");
        }
        return finish(Tok::Semi, ";");
      case '|': return finish(Tok::Bar, "|");
      case '!': return finish(Tok::Op, "!");
      case '=': return finish(Tok::Op, "=");
      case '~':
        if (peek() == '-') {
          advance();
          return finish(Tok::Op, "~-");
        }
        fail("unexpected character '~'", start, l, c);
      case '<':
        if (peek() == '=') {
          advance();
          return finish(Tok::Op, "<=");
        }
        if (peek() == '>') {
          advance();
          return finish(Tok::Op, "<>");
        }
        return finish(Tok::Op, "<");
      case '>':
        if (peek() == '=') {
          advance();
          return finish(Tok::Op, ">=");
        }
        return finish(Tok::Op, ">");
      case ':':
        if (peek() == ':') {
          advance();
          return finish(Tok::Op, "::");
        }
        if (peek() == '=') {
          advance();
          return finish(Tok::Op, ":=");
        }
        return finish(Tok::Colon, ":");
      case '-':
        if (peek() == '>') {
          advance();
          return finish(Tok::Arrow, "->");
        }
        if (peek() == '.') {
          advance();
          return finish(Tok::Op, "-.");
        }
        return finish(Tok::Op, "-");
      case '+':
        if (peek() == '.') {
          advance();
          return finish(Tok::Op, "+.");
        }
        return finish(Tok::Op, "+");
      case '*':
        if (peek() == '.') {
          advance();
          return finish(Tok::Op, "*.");
        }
        return finish(Tok::Op, "*");
      case '/':
        if (peek() == '.') {
          advance();
          return finish(Tok::Op, "/.");
        }
        return finish(Tok::Op, "/");
      default:
        fail(std::string("unexpected character '") + ch + "'", start, l, c);
    }
  }
};

}  // namespace easytype
