#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opcalc/rational.hpp"

namespace opcalc {

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
  std::vector<std::string> expected;

  std::string str() const;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d) : std::runtime_error(d.str()), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

enum class TokenKind { Identifier, Number, Punct, Newline, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
};

/// Tokenizer shared by the symbol literal grammar, operator expressions, and
/// program/facts files. `#` starts a comment running to end of line.
class Lexer {
 public:
  explicit Lexer(std::string_view source, bool emit_newlines = true);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_punct(char c, std::size_t ahead = 0) const;
  bool is_ident(std::string_view word, std::size_t ahead = 0) const;
  bool accept_punct(char c);
  bool accept_ident(std::string_view word);

  void expect_punct(char c);
  void expect_ident(std::string_view word);
  std::string expect_identifier(std::string_view what);
  Integer expect_integer();
  std::int64_t expect_int64();
  /// [-|+] INT [/ INT]
  Rational expect_rational();

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected = {}) const;
  [[noreturn]] void fail_at(const Token& tok, std::string message, std::vector<std::string> expected = {}) const;

  std::size_t position() const { return index_; }
  void rewind(std::size_t index) { index_ = index; }

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

std::string describe(const Token& tok);

}  // namespace opcalc
