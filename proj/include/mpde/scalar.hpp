#pragma once

#include "mpde/rational.hpp"

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <string>
#include <utility>

namespace mpde {

using Complex = std::complex<double>;

/// Gaussian rational re + i*im; the coefficient field of exact mode.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(int v) : re(v) {}  // NOLINT: literal 0/1 must convert implicitly for Eigen
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  Rational norm() const { return re * re + im * im; }
  ExactComplex conj() const { return {re, -im}; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }
};

inline ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
inline ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
inline ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
inline ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  if (a.im == 0 && b.im == 0) return {a.re * b.re, Rational(0)};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ExactComplex operator/(const ExactComplex& a, const ExactComplex& b);
inline ExactComplex& operator+=(ExactComplex& a, const ExactComplex& b) { return a = a + b; }
inline ExactComplex& operator-=(ExactComplex& a, const ExactComplex& b) { return a = a - b; }
inline ExactComplex& operator*=(ExactComplex& a, const ExactComplex& b) { return a = a * b; }
inline ExactComplex& operator/=(ExactComplex& a, const ExactComplex& b) { return a = a / b; }
inline bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

/// "3/2", "-1/2i", "(1 + 2i)" style rendering, parseable by the operator grammar.
std::string to_string(const ExactComplex& c);

/// Scalar-generic helpers used by the series and solver templates.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_exact(const ExactComplex& c) { return c.to_complex(); }
  static Complex from_rational(const Rational& r) { return {to_double(r), 0.0}; }
  static Complex to_complex(const Complex& c) { return c; }
  static double abs(const Complex& c) { return std::abs(c); }
  static double log_abs(const Complex& c) { return std::log(std::abs(c)); }
  static bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
};

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr bool exact = true;
  static ExactComplex from_exact(const ExactComplex& c) { return c; }
  static ExactComplex from_rational(const Rational& r) { return ExactComplex(r); }
  static Complex to_complex(const ExactComplex& c) { return c.to_complex(); }
  static double abs(const ExactComplex& c) { return std::abs(c.to_complex()); }
  static double log_abs(const ExactComplex& c) {
    if (c.im == 0) return mpde::log_abs(c.re);
    return 0.5 * mpde::log_abs(c.norm());
  }
  static bool is_zero(const ExactComplex& c) { return c.is_zero(); }
};

}  // namespace mpde

namespace Eigen {
template <>
struct NumTraits<mpde::ExactComplex> : GenericNumTraits<mpde::ExactComplex> {
  using Real = mpde::ExactComplex;
  using NonInteger = mpde::ExactComplex;
  using Nested = mpde::ExactComplex;
  using Literal = mpde::ExactComplex;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};
}  // namespace Eigen
