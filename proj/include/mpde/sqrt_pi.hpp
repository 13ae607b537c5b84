#pragma once

#include "mpde/errors.hpp"
#include "mpde/moment.hpp"
#include "mpde/scalar.hpp"

#include <Eigen/Core>

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

namespace mpde {

/// Laurent polynomial in sqrt(pi) with Gaussian rational coefficients. Exact
/// moment values of products of Gamma_s with s in {1/2, 1, 2, ...} live here,
/// since Gamma(n + 1/2) is a rational multiple of sqrt(pi).
struct SqrtPiExact {
  std::map<int, ExactComplex> terms;  // power of sqrt(pi) -> coefficient, no zero entries

  SqrtPiExact() = default;
  SqrtPiExact(int v) : SqrtPiExact(ExactComplex(v)) {}  // NOLINT
  SqrtPiExact(ExactComplex c) {  // NOLINT
    if (!c.is_zero()) terms.emplace(0, std::move(c));
  }

  static SqrtPiExact monomial(ExactComplex c, int power) {
    SqrtPiExact out;
    if (!c.is_zero()) out.terms.emplace(power, std::move(c));
    return out;
  }
  static SqrtPiExact from_moment(const MomentFunction& m, const Rational& u) {
    SqrtPiValue v = eval_exact_sqrt_pi(m, u);
    return monomial(ExactComplex(v.coef), v.sqrt_pi_power);
  }

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }

  Complex to_complex() const {
    Complex acc(0.0, 0.0);
    const double root = std::sqrt(std::numbers::pi);
    for (const auto& [p, c] : terms) acc += c.to_complex() * std::pow(root, p);
    return acc;
  }
};

inline SqrtPiExact operator+(SqrtPiExact a, const SqrtPiExact& b) {
  for (const auto& [p, c] : b.terms) {
    auto [it, inserted] = a.terms.emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) a.terms.erase(it);
    }
  }
  return a;
}
inline SqrtPiExact operator-(SqrtPiExact a) {
  for (auto& [p, c] : a.terms) c = -c;
  return a;
}
inline SqrtPiExact operator-(const SqrtPiExact& a, const SqrtPiExact& b) { return a + (-b); }
inline SqrtPiExact operator*(const SqrtPiExact& a, const SqrtPiExact& b) {
  SqrtPiExact out;
  for (const auto& [p, c] : a.terms)
    for (const auto& [q, d] : b.terms) out = out + SqrtPiExact::monomial(c * d, p + q);
  return out;
}
/// Division is exact only by a single term.
inline SqrtPiExact operator/(const SqrtPiExact& a, const SqrtPiExact& b) {
  if (!b.is_monomial()) throw PreconditionError("SqrtPiExact: divisor must be a single term");
  const auto& [q, d] = *b.terms.begin();
  SqrtPiExact out;
  for (const auto& [p, c] : a.terms) out.terms.emplace(p - q, c / d);
  return out;
}
inline SqrtPiExact& operator+=(SqrtPiExact& a, const SqrtPiExact& b) { return a = a + b; }
inline SqrtPiExact& operator-=(SqrtPiExact& a, const SqrtPiExact& b) { return a = a - b; }
inline SqrtPiExact& operator*=(SqrtPiExact& a, const SqrtPiExact& b) { return a = a * b; }
inline SqrtPiExact& operator/=(SqrtPiExact& a, const SqrtPiExact& b) { return a = a / b; }
inline bool operator==(const SqrtPiExact& a, const SqrtPiExact& b) { return a.terms == b.terms; }
inline bool operator!=(const SqrtPiExact& a, const SqrtPiExact& b) { return !(a == b); }

template <>
struct ScalarTraits<SqrtPiExact> {
  static constexpr bool exact = true;
  static SqrtPiExact from_exact(const ExactComplex& c) { return SqrtPiExact(c); }
  static SqrtPiExact from_rational(const Rational& r) { return SqrtPiExact(ExactComplex(r)); }
  static Complex to_complex(const SqrtPiExact& c) { return c.to_complex(); }
  static double abs(const SqrtPiExact& c) { return std::abs(c.to_complex()); }
  static double log_abs(const SqrtPiExact& c) { return std::log(abs(c)); }
  static bool is_zero(const SqrtPiExact& c) { return c.is_zero(); }
};

}  // namespace mpde

namespace Eigen {
template <>
struct NumTraits<mpde::SqrtPiExact> : GenericNumTraits<mpde::SqrtPiExact> {
  using Real = mpde::SqrtPiExact;
  using NonInteger = mpde::SqrtPiExact;
  using Nested = mpde::SqrtPiExact;
  using Literal = mpde::SqrtPiExact;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
};
}  // namespace Eigen
