#include "mpde/rational.hpp"

#include "mpde/errors.hpp"

#include <gmp.h>

#include <cctype>
#include <cmath>

namespace mpde {

namespace {

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

// GMP reads a leading 0 as an octal prefix.
static Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&] { throw ParseError("invalid rational literal '" + std::string(original) + "'"); };

  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    Integer d = decimal_integer(den);
    if (d == 0) throw DomainError("zero denominator in '" + std::string(original) + "'");
    Rational r(decimal_integer(num), d);
    return negative ? Rational(-r) : r;
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string digits;
  long frac_len = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto ip = text.substr(0, dot);
    auto fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail();
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) fail();
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(text)) fail();
    digits = std::string(text);
  }

  Integer mantissa = decimal_integer(digits);
  long scale = exponent - frac_len;
  Rational r = scale >= 0 ? Rational(mantissa * pow10(scale)) : Rational(mantissa, pow10(-scale));
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  if (denominator_of(r) == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be converted to a rational");
  return Rational(x);
}

bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

long to_long(const Rational& r) {
  if (!is_integer(r)) throw DomainError("expected an integer, got " + to_string(r));
  Integer n = numerator_of(r);
  if (n > Integer(std::numeric_limits<long>::max()) || n < Integer(std::numeric_limits<long>::min()))
    throw DomainError("integer out of range: " + n.str());
  return n.convert_to<long>();
}

Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

Rational floor(const Rational& r) {
  Integer n = numerator_of(r);
  Integer d = denominator_of(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

Rational mod(const Rational& r, const Rational& m) {
  if (m <= 0) throw DomainError("mod requires a positive modulus");
  return r - m * floor(r / m);
}

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

double log_abs(const Rational& r) {
  if (r == 0) return -std::numeric_limits<double>::infinity();
  auto log_int = [](const Integer& v) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, v.backend().data());
    return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
  };
  return log_int(numerator_of(r)) - log_int(denominator_of(r));
}

}  // namespace mpde
