#include "mpde/scalar.hpp"

#include "mpde/errors.hpp"

namespace mpde {

ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.im == 0) return {a.re / b.re, a.im / b.re};
  Rational n = b.norm();
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

std::string to_string(const ExactComplex& c) {
  if (c.im == 0) return to_string(c.re);
  if (c.re == 0) return to_string(c.im) + "i";
  std::string im = c.im < 0 ? " - " + to_string(Rational(-c.im)) : " + " + to_string(c.im);
  return "(" + to_string(c.re) + im + "i)";
}

}  // namespace mpde
