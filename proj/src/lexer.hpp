#pragma once

// Tokenizer shared by the tree and pattern parsers. Internal header.

#include <cstddef>
#include <string>
#include <string_view>

#include "refnum/tree.hpp"

namespace refnum::detail {

enum class Tok { lparen, rparen, langle, rangle, lbracket, rbracket, quoted, word, regex, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  /// With allow_regex, a token starting with '/' runs to the next
  /// unescaped '/' and is returned as Tok::regex (delimiters stripped).
  Lexer(std::string_view text, bool allow_regex, std::size_t first_line = 1)
      : text_(text), allow_regex_(allow_regex), line_(first_line) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw ParseError(what, at.line, at.column);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, current_); }

  Token expect(Tok kind, const char* what) {
    if (current_.kind != kind) fail(std::string("expected ") + what + describe(current_));
    return take();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::end: return " but reached end of input";
      case Tok::quoted: return " but found quoted string";
      case Tok::regex: return " but found regex";
      default: return " but found '" + t.text + "'";
    }
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
  static bool is_delim(char c) {
    return is_space(c) || c == '(' || c == ')' || c == '[' || c == ']' || c == '<' || c == '>' ||
           c == '\'' || c == '`';
  }

  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void advance() {
    while (pos_ < text_.size() && is_space(text_[pos_])) get();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) return;

    char c = text_[pos_];
    auto single = [&](Tok k) {
      current_.kind = k;
      current_.text = std::string(1, get());
    };
    switch (c) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case '<':
      case '>':
        // comparators for numeric guards
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          current_.kind = Tok::word;
          current_.text = std::string{get(), get()};
          return;
        }
        return single(c == '<' ? Tok::langle : Tok::rangle);
      case '\'':
      case '`': return read_quoted();
      default: break;
    }
    if (c == '/' && allow_regex_) return read_regex();
    current_.kind = Tok::word;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) current_.text.push_back(get());
  }

  void read_quoted() {
    Token start = current_;
    get();
    current_.kind = Tok::quoted;
    for (;;) {
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted string", start.line, start.column);
      char c = get();
      if (c == '\\' && pos_ < text_.size()) {
        current_.text.push_back(get());
        continue;
      }
      if (c == '\'') return;
      current_.text.push_back(c);
    }
  }

  void read_regex() {
    Token start = current_;
    get();
    current_.kind = Tok::regex;
    for (;;) {
      if (pos_ >= text_.size()) throw ParseError("unterminated regex", start.line, start.column);
      char c = get();
      if (c == '\\' && pos_ < text_.size() && text_[pos_] == '/') {
        current_.text.push_back(get());
        continue;
      }
      if (c == '/') return;
      current_.text.push_back(c);
    }
  }

  std::string_view text_;
  bool allow_regex_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_ = 1;
  Token current_;
};

/// Quotes with the canonical `x' form.
inline std::string quote(std::string_view s, char open = '`') {
  std::string out(1, open);
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

}  // namespace refnum::detail
