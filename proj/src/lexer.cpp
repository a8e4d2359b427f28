#include "opcalc/lexer.hpp"

#include <cctype>

namespace opcalc {

std::string Diagnostic::str() const {
  std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Newline: return "end of line";
    default: return "'" + tok.text + "'";
  }
}

Lexer::Lexer(std::string_view source, bool emit_newlines) {
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (source[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < source.size()) {
    char c = source[i];
    if (c == '#') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      if (emit_newlines && (tokens_.empty() || tokens_.back().kind != TokenKind::Newline))
        tokens_.push_back({TokenKind::Newline, "\n", pos});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.pos = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < source.size() && (std::isalnum(static_cast<unsigned char>(source[j])) || source[j] == '_')) ++j;
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(source.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
      tok.kind = TokenKind::Number;
      tok.text = std::string(source.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("(),;:{}@*&.=-+/[]!<>\"").find(c) != std::string_view::npos) {
      tok.kind = TokenKind::Punct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      Diagnostic d{pos, std::string("unexpected character '") + c + "'", {}};
      throw ParseError(d);
    }
    tokens_.push_back(std::move(tok));
  }
  tokens_.push_back({TokenKind::End, "", pos});
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t k = index_ + ahead;
  return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

Token Lexer::next() {
  Token t = peek();
  if (index_ < tokens_.size() - 1) ++index_;
  return t;
}

bool Lexer::is_punct(char c, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Punct && t.text[0] == c;
}

bool Lexer::is_ident(std::string_view word, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Identifier && t.text == word;
}

bool Lexer::accept_punct(char c) {
  if (!is_punct(c)) return false;
  next();
  return true;
}

bool Lexer::accept_ident(std::string_view word) {
  if (!is_ident(word)) return false;
  next();
  return true;
}

void Lexer::expect_punct(char c) {
  if (!accept_punct(c)) fail("unexpected " + describe(peek()), {std::string("'") + c + "'"});
}

void Lexer::expect_ident(std::string_view word) {
  if (!accept_ident(word)) fail("unexpected " + describe(peek()), {"'" + std::string(word) + "'"});
}

std::string Lexer::expect_identifier(std::string_view what) {
  if (peek().kind != TokenKind::Identifier) fail("unexpected " + describe(peek()), {std::string(what)});
  return next().text;
}

Integer Lexer::expect_integer() {
  if (peek().kind != TokenKind::Number) fail("unexpected " + describe(peek()), {"integer"});
  return Integer(next().text);
}

std::int64_t Lexer::expect_int64() {
  bool negative = accept_punct('-');
  if (!negative) accept_punct('+');
  const Token& tok = peek();
  Integer v = expect_integer();
  if (!v.fits_slong_p()) fail_at(tok, "integer out of range");
  return negative ? -v.get_si() : v.get_si();
}

Rational Lexer::expect_rational() {
  bool negative = accept_punct('-');
  if (!negative) accept_punct('+');
  if (peek().kind != TokenKind::Number) fail("unexpected " + describe(peek()), {"rational"});
  Integer num = expect_integer();
  Integer den = 1;
  if (accept_punct('/')) {
    const Token& tok = peek();
    den = expect_integer();
    if (den == 0) fail_at(tok, "zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

void Lexer::fail(std::string message, std::vector<std::string> expected) const {
  fail_at(peek(), std::move(message), std::move(expected));
}

void Lexer::fail_at(const Token& tok, std::string message, std::vector<std::string> expected) const {
  throw ParseError(Diagnostic{tok.pos, std::move(message), std::move(expected)});
}

}  // namespace opcalc
