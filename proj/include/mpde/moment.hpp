#pragma once

#include "mpde/rational.hpp"
#include "mpde/scalar.hpp"

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

namespace mpde {

/// One factor (a * Gamma(b + u/k))^sign of a moment function.
struct MomentFactor {
  Rational a{1};
  Rational b{1};
  Rational k{1};
  int sign{+1};

  friend bool operator==(const MomentFactor&, const MomentFactor&) = default;
};

/// Finite signed product of a*Gamma(b + u/k) factors. The empty product is
/// the constant moment function 1 (order 0).
class MomentFunction {
 public:
  MomentFunction() = default;
  explicit MomentFunction(std::vector<MomentFactor> factors);

  /// Gamma_s(u) = Gamma(1 + s u) for s >= 0 and 1/Gamma(1 - s u) for s < 0.
  static MomentFunction gamma_s(const Rational& s);
  static MomentFunction single(const Rational& a, const Rational& b, const Rational& k);

  const std::vector<MomentFactor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  MomentFunction reciprocal() const;

  friend bool operator==(const MomentFunction&, const MomentFunction&) = default;

 private:
  std::vector<MomentFactor> factors_;
};

enum class CombineOp { product, quotient };

MomentFunction combine(const MomentFunction& m1, const MomentFunction& m2, CombineOp op);
inline MomentFunction operator*(const MomentFunction& a, const MomentFunction& b) {
  return combine(a, b, CombineOp::product);
}
inline MomentFunction operator/(const MomentFunction& a, const MomentFunction& b) {
  return combine(a, b, CombineOp::quotient);
}

/// Exact order: sum of sign/k over the factors.
Rational order(const MomentFunction& m);

/// m(u) in binary64. Throws DomainError for u < 0 or a non-positive gamma argument.
double eval(const MomentFunction& m, const Rational& u);
double log_eval(const MomentFunction& m, const Rational& u);

/// m(u) as an exact rational. Requires every gamma argument b + u/k to be a
/// positive integer; throws PreconditionError otherwise.
Rational eval_exact(const MomentFunction& m, const Rational& u);

/// m(u_num)/m(u_den) in binary64. Factors whose arguments differ by an
/// integer are evaluated as rising products.
double eval_ratio(const MomentFunction& m, const Rational& u_num, const Rational& u_den);

/// Exact m(u_num)/m(u_den); requires integral gamma-argument differences.
Rational eval_ratio_exact(const MomentFunction& m, const Rational& u_num, const Rational& u_den);

struct SqrtPiValue {
  Rational coef;
  int sqrt_pi_power = 0;
};

/// m(u) = coef * pi^(power/2). Every gamma argument must be a positive integer
/// or half-integer; throws PreconditionError otherwise.
SqrtPiValue eval_exact_sqrt_pi(const MomentFunction& m, const Rational& u);

/// Scalars that can represent moment values beyond the rationals provide a
/// static from_moment(m, u).
template <class Scalar>
concept MomentRepresenting = requires(const MomentFunction& m, const Rational& u) {
  { Scalar::from_moment(m, u) } -> std::same_as<Scalar>;
};

template <class Scalar>
Scalar moment_value(const MomentFunction& m, const Rational& u) {
  if constexpr (MomentRepresenting<Scalar>)
    return Scalar::from_moment(m, u);
  else if constexpr (ScalarTraits<Scalar>::exact)
    return Scalar(eval_exact(m, u));
  else
    return Scalar(eval(m, u));
}

template <class Scalar>
Scalar moment_ratio(const MomentFunction& m, const Rational& u_num, const Rational& u_den) {
  if constexpr (MomentRepresenting<Scalar>)
    return Scalar::from_moment(m, u_num) / Scalar::from_moment(m, u_den);
  else if constexpr (ScalarTraits<Scalar>::exact)
    return Scalar(eval_ratio_exact(m, u_num, u_den));
  else
    return Scalar(eval_ratio(m, u_num, u_den));
}

/// Textual form accepted by the moment grammar ("Gamma(1)*Gamma(1/2)", "2*Gamma(1+u/2)").
std::string to_string(const MomentFunction& m);

/// Kernel e_m(x) = a k x^{bk} exp(-x^k) of the single-factor moment a*Gamma(b+u/k).
double kernel_e(double a, double b, double k, double x);

struct SeriesLimits {
  double radius = 20.0;
  std::size_t max_terms = 10000;
};

struct SeriesValue {
  Complex value;
  /// Bound on the accumulated floating-point error of the partial sum plus
  /// the truncation tail bound.
  double error_bound;
  std::size_t terms;
};

/// Mittag-Leffler function E_s(x) = sum_j x^j / Gamma(1 + s j).
SeriesValue mittag_leffler_bounded(const Rational& s, Complex x, double tol = 1e-16,
                                   SeriesLimits limits = {});
inline Complex mittag_leffler(const Rational& s, Complex x, double tol = 1e-16, SeriesLimits limits = {}) {
  return mittag_leffler_bounded(s, x, tol, limits).value;
}

/// e_{s,beta}(x) = sum_{j>=beta} C(j-1, beta-1) x^j / Gamma_s(j).
Complex e_s_beta(const Rational& s, int beta, Complex x, double tol = 1e-16, SeriesLimits limits = {});

/// Same function through x^beta/(beta-1)! * d^{beta-1}/dx^{beta-1} [(E_s(x) - 1)/x],
/// differentiating the Mittag-Leffler series termwise.
Complex e_s_beta_derivative_form(const Rational& s, int beta, Complex x, double tol = 1e-16,
                                 SeriesLimits limits = {});

struct MellinQuadrature {
  double rel_tol = 1e-13;
  unsigned max_depth = 20;
  /// Upper end of the integration range in the substituted variable y = x^k.
  double y_max = 0.0;  // 0: chosen from the exponential tail bound
};

struct MellinResult {
  double value;
  double error_estimate;
};

/// Quadrature of int_0^inf x^{u-1} e_m(x) dx for the single factor a*Gamma(b+u/k).
MellinResult mellin_check(double a, double b, double k, const Rational& u, MellinQuadrature params = {});

}  // namespace mpde
