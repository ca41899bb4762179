#include "rlfgen/parser.h"

#include <cctype>

namespace rlfgen {

ParseError::ParseError(const std::string& message, size_t line, size_t column)
    : Error(message + " at line " + std::to_string(line) + ", column " +
            std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

constexpr int kMaxNesting = 256;
constexpr unsigned long kMaxExponent = 1000;

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    size_t line = 1;
    size_t column = 1;
    for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    if (++depth_ > kMaxNesting) fail("expression nested too deeply");
    Polynomial b = base();
    if (accept('^')) {
      skip_space();
      if (peek() == '-') fail("negative exponent");
      skip_space();
      const size_t digits_at = pos_;
      const std::string digits = read_digits("exponent");
      pos_ = digits_at;
      if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) {
        fail("exponent too large");
      }
      const unsigned long e = std::stoul(digits);
      if (e == 0) fail("zero exponent");
      pos_ = digits_at + digits.size();
      b = b.pow(static_cast<unsigned>(e));
    }
    --depth_;
    return b;
  }

  Polynomial base() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string read_digits(const char* what) {
    skip_space();
    const size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial rational() {
    const std::string num = read_digits("integer");
    Integer n(num, 10);
    Integer d(1);
    const size_t save = pos_;
    skip_space();
    if (peek() == '/') {
      ++pos_;
      skip_space();
      if (peek() == '-') fail("negative denominator");
      const size_t digits_at = pos_;
      d = Integer(read_digits("denominator"), 10);
      if (d == 0) {
        pos_ = digits_at;
        fail("zero denominator");
      }
    } else {
      pos_ = save;
    }
    return Polynomial::constant(ring_, make_rational(n, d));
  }

  Polynomial identifier() {
    const size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                         text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (!ring_.index_of(name)) {
      pos_ = start;
      fail("undeclared identifier '" + name + "'");
    }
    return Polynomial::variable(ring_, name);
  }

  std::string_view text_;
  const Ring& ring_;
  size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const Ring& ring) {
  return Parser(text, ring).parse();
}

Polynomial parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return parse_poly(text, Ring(vars));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(start, comma - start));
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error("empty entry in list '" + std::string(text) + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
    start = comma + 1;
  }
  return out;
}

}  // namespace rlfgen
