#pragma once

// Test-only generators and reference oracles. Nothing here calls into the
// code paths it is used to check.

#include "mpde/polynomial.hpp"
#include "mpde/rational.hpp"
#include "mpde/scalar.hpp"
#include "mpde/series.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace testing {

using mpde::BiPoly;
using mpde::Complex;
using mpde::ExactComplex;
using mpde::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(int num_range = 9, int den_max = 5) {
    return Rational(integer(-num_range, num_range)) / integer(1, den_max);
  }
  Rational nonzero_rational(int num_range = 9, int den_max = 5) {
    Rational r;
    do r = rational(num_range, den_max);
    while (r == 0);
    return r;
  }
  ExactComplex gaussian(bool allow_imag = true) {
    return {rational(), allow_imag && coin() ? rational() : Rational(0)};
  }
  Complex complex() { return {real(-1, 1), real(-1, 1)}; }

  template <class Scalar>
  mpde::Series1<Scalar> series1(int n, int kappa = 1);
  template <class Scalar>
  mpde::Series2<Scalar> series2(int n1, int n2);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

template <>
inline mpde::Series1<ExactComplex> Gen::series1<ExactComplex>(int n, int kappa) {
  mpde::Series1<ExactComplex> s(n, kappa);
  for (int j = 0; j <= n; ++j) s[j] = gaussian();
  return s;
}
template <>
inline mpde::Series1<Complex> Gen::series1<Complex>(int n, int kappa) {
  mpde::Series1<Complex> s(n, kappa);
  for (int j = 0; j <= n; ++j) s[j] = complex();
  return s;
}
template <>
inline mpde::Series2<ExactComplex> Gen::series2<ExactComplex>(int n1, int n2) {
  mpde::Series2<ExactComplex> s(n1, n2);
  for (int j = 0; j <= n1; ++j)
    for (int i = 0; i <= n2; ++i) s(j, i) = gaussian();
  return s;
}
template <>
inline mpde::Series2<Complex> Gen::series2<Complex>(int n1, int n2) {
  mpde::Series2<Complex> s(n1, n2);
  for (int j = 0; j <= n1; ++j)
    for (int i = 0; i <= n2; ++i) s(j, i) = complex();
  return s;
}

inline Rational factorial(long n) {
  Rational r(1);
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// lambda - c zeta^p as a coefficient table.
inline BiPoly linear_factor(const ExactComplex& c, int p) {
  return BiPoly::monomial(1, 0) - BiPoly::monomial(0, p, c);
}

inline double rel_err(Complex a, Complex b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

/// Vertices of the convex hull of the quarter-planes {x <= a, y >= b}: a point
/// is a vertex iff it is the unique maximizer of x - t*y for some t >= 0.
/// Decided exactly by intersecting the strict constraints on t.
inline std::vector<std::pair<Rational, Rational>> brute_force_hull(std::vector<std::pair<Rational, Rational>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::pair<Rational, Rational>> out;
  for (auto& p : pts) {
    Rational lo(0);
    bool lo_open = false, bounded = false, feasible = true;
    Rational hi;
    for (auto& q : pts) {
      if (q == p) continue;
      Rational dx = p.first - q.first, dy = p.second - q.second;
      if (dy == 0) {
        if (dx <= 0) feasible = false;
      } else if (dy > 0) {
        Rational b = dx / dy;
        if (!bounded || b < hi) hi = b;
        bounded = true;
      } else {
        Rational b = dx / dy;
        if (b > lo || (b == lo && !lo_open)) {
          lo = b;
          lo_open = true;
        }
      }
    }
    if (feasible && bounded && !(lo < hi)) feasible = false;
    if (feasible) out.push_back(p);
  }
  return out;
}

/// Heat equation d_t u - d_z^2 u = g with g = 1/(1-z), m1 = m2 = Gamma_1:
/// u_{j,i} = (i + 2j - 2)! / (j! i!) for j >= 1.
inline Rational heat_coefficient(int j, int i) {
  if (j == 0) return Rational(0);
  return factorial(i + 2 * j - 2) / (factorial(j) * factorial(i));
}

/// Transport d_t u - d_z u = 1/(1-z): u_{j,i} = C(i + j - 1, i) / j for j >= 1.
inline Rational transport_coefficient(int j, int i) {
  if (j == 0) return Rational(0);
  return binomial(i + j - 1, i) / j;
}

/// 1/(1-z) on an (n1+1)x(n2+1) grid, t-independent.
template <class Scalar>
mpde::Series2<Scalar> geometric_in_z(int n1, int n2) {
  mpde::Series2<Scalar> g(n1, n2);
  for (int i = 0; i <= n2; ++i) g(0, i) = Scalar(1);
  return g;
}

}  // namespace testing
