#pragma once

// Text grammar for polynomials:
//   poly  := ('+'|'-')? term (('+'|'-') term)*
//   term  := factor ('*'? factor)*
//   factor:= int ('/' nat)? | var ('^' nat)?

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eqdef/polynomial.hpp"

namespace eqdef {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text, std::size_t line, std::size_t col0)
      : ring_(ring), s_(text), line_(line), col0_(col0) {}

  Polynomial parse() {
    skip();
    if (at_end()) fail("empty polynomial");
    Polynomial result(ring_);
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (peek() == '+' || peek() == '-') {
        neg = peek() == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      Polynomial t = term();
      result += neg ? -t : t;
      skip();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail(std::string("unexpected '") + peek() + "'");
    }
    skip();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return result;
  }

 private:
  Polynomial term() {
    Scalar coeff = ring_->one();
    Monomial mono(ring_->nvars());
    bool any = false;
    while (true) {
      skip();
      if (at_end()) break;
      char c = peek();
      if (any && c == '*') {
        ++pos_;
        skip();
        c = at_end() ? '\0' : peek();
        if (!(std::isdigit(static_cast<unsigned char>(c)) || is_ident_start(c))) fail("expected factor after '*'");
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num(read_digits());
        mpz_class den = 1;
        skip();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
          std::size_t at = pos_;
          den = mpz_class(read_digits());
          if (den == 0) fail_at("zero denominator", at);
        }
        try {
          coeff *= Scalar(ring_->field(), mpq_class(num, den));
        } catch (const ArithmeticError& e) {
          fail(e.what());
        }
      } else if (is_ident_start(c)) {
        std::size_t at = pos_;
        std::string name = read_ident();
        auto idx = ring_->index_of(name);
        if (!idx) fail_at("unknown variable '" + name + "'", at);
        std::uint32_t e = 1;
        skip();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
          e = static_cast<std::uint32_t>(std::stoul(read_digits()));
        }
        mono.exp[*idx] += e;
      } else {
        break;
      }
      any = true;
    }
    if (!any) fail("expected term");
    return Polynomial::term(ring_, coeff, mono);
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string read_digits() {
    std::size_t b = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }
  std::string read_ident() {
    std::size_t b = pos_;
    while (!at_end() && is_ident(peek())) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, line_, col0_ + at + 1);
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t line_, col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` in the context `ring`. `line` and `column` locate the text
/// inside a larger file for error messages.
inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t line = 1,
                                   std::size_t column = 0) {
  return detail::PolyParser(ring, text, line, column).parse();
}

}  // namespace eqdef
