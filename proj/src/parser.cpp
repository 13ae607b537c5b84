#include "mpde/parser.hpp"

#include "mpde/errors.hpp"

#include <cctype>

namespace mpde {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  /// Unsigned decimal or p/q literal (no sign, no 'i').
  Rational rational_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ == start) fail("expected a number");
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const Error& e) {
      pos_ = start;
      fail(std::string("bad number: ") + e.what());
    }
  }

  unsigned uint_literal() {
    skip_ws();
    std::size_t start = pos_;
    unsigned v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > 10000) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected an unsigned integer exponent");
    return v;
  }

  bool next_is_digit() {
    skip_ws();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class OperatorParser {
 public:
  explicit OperatorParser(std::string_view text) : c_(text) {}

  BiPoly parse() {
    BiPoly p = expr();
    if (!c_.at_end()) c_.fail(std::string("unexpected '") + c_.peek() + "'");
    return p;
  }

 private:
  BiPoly expr() {
    BiPoly acc = term();
    while (true) {
      if (c_.accept('+'))
        acc = acc + term();
      else if (c_.accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  BiPoly term() {
    BiPoly acc = factor();
    while (c_.accept('*')) acc = acc * factor();
    return acc;
  }

  unsigned exponent() { return c_.accept('^') ? c_.uint_literal() : 1u; }

  BiPoly factor() {
    if (c_.accept('-')) return -factor();
    if (c_.accept('(')) {
      BiPoly inner = expr();
      c_.expect(')');
      return pow(inner, exponent());
    }
    if (c_.accept("dt")) return BiPoly::monomial(static_cast<int>(exponent()), 0);
    if (c_.accept("dz")) return BiPoly::monomial(0, static_cast<int>(exponent()));
    if (c_.next_is_digit()) {
      Rational r = c_.rational_literal();
      if (c_.accept('i')) return BiPoly::constant(ExactComplex(Rational(0), r));
      return BiPoly::constant(ExactComplex(r));
    }
    if (c_.accept('i')) return BiPoly::constant(ExactComplex(Rational(0), Rational(1)));
    if (c_.at_end()) c_.fail("unexpected end of input");
    c_.fail(std::string("unsupported token starting with '") + c_.peek() + "' (coefficients must be constants)");
  }

  Cursor c_;
};

std::string monomial(int a, int b) {
  std::string out;
  auto power = [](const char* name, int e) { return e == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(e); };
  if (a > 0) out = power("dt", a);
  if (b > 0) out += (out.empty() ? "" : "*") + power("dz", b);
  return out;
}

}  // namespace

BiPoly parse_operator(std::string_view text) { return OperatorParser(text).parse(); }

std::string print_operator(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    auto [a, b] = it->first;
    ExactComplex c = it->second;
    bool negative = c.is_real() && c.re < 0;
    if (negative) c = -c;
    std::string mono = monomial(a, b);
    std::string coef = to_string(c);
    std::string body;
    if (mono.empty())
      body = coef;
    else if (c == ExactComplex(1))
      body = mono;
    else
      body = coef + "*" + mono;
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += negative ? " - " + body : " + " + body;
  }
  return out;
}

MomentFunction parse_moment(std::string_view text) {
  Cursor c(text);
  std::vector<MomentFactor> factors;
  int sign = +1;
  while (true) {
    Rational a(1);
    bool scaled = false;
    if (c.next_is_digit()) {
      a = c.rational_literal();
      c.expect('*');
      scaled = true;
    }
    if (!c.accept("Gamma")) c.fail("expected 'Gamma('");
    c.expect('(');
    bool negative = c.accept('-');
    Rational first = c.next_is_digit() ? c.rational_literal() : Rational(0);
    if (negative) first = -first;
    bool has_u = false;
    Rational k(1);
    if (c.accept('+') || c.peek() == 'u') {
      if (!c.accept('u')) c.fail("expected 'u'");
      has_u = true;
      if (c.accept('/')) {
        bool kneg = c.accept('-');
        k = c.rational_literal();
        if (kneg) k = -k;
      }
    }
    c.expect(')');
    if (has_u) {
      if (k <= 0) c.fail("k must be positive");
      if (a <= 0) c.fail("scale a must be positive");
      factors.push_back({a, first, k, sign});
    } else {
      if (scaled) c.fail("a scaled factor needs the form a*Gamma(b+u/k)");
      MomentFunction g = MomentFunction::gamma_s(first);
      for (auto f : g.factors()) {
        f.sign *= sign;
        factors.push_back(f);
      }
    }
    if (c.accept('*'))
      sign = +1;
    else if (c.accept('/'))
      sign = -1;
    else
      break;
  }
  if (!c.at_end()) c.fail(std::string("unexpected '") + c.peek() + "'");
  try {
    return MomentFunction(std::move(factors));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), text.size());
  }
}

}  // namespace mpde
