#include "mpde/moment.hpp"

#include "mpde/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace mpde {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
// tgamma overflows just above 171.6.
constexpr double kDirectGammaLimit = 170.0;

void validate(const MomentFactor& f) {
  if (f.a <= 0) throw DomainError("moment factor scale a must be positive");
  if (f.k <= 0) throw DomainError("moment factor k must be positive");
  if (f.sign != 1 && f.sign != -1) throw DomainError("moment factor sign must be +1 or -1");
}

Rational gamma_argument(const MomentFactor& f, const Rational& u) {
  Rational arg = f.b + u / f.k;
  if (arg <= 0) throw DomainError("gamma argument " + to_string(arg) + " is not positive");
  return arg;
}

void require_nonnegative(const Rational& u) {
  if (u < 0) throw DomainError("moment functions are evaluated at u >= 0, got " + to_string(u));
}

}  // namespace

MomentFunction::MomentFunction(std::vector<MomentFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) validate(f);
}

MomentFunction MomentFunction::gamma_s(const Rational& s) {
  if (s == 0) return {};
  if (s > 0) return MomentFunction({MomentFactor{Rational(1), Rational(1), Rational(1) / s, +1}});
  return MomentFunction({MomentFactor{Rational(1), Rational(1), Rational(-1) / s, -1}});
}

MomentFunction MomentFunction::single(const Rational& a, const Rational& b, const Rational& k) {
  return MomentFunction({MomentFactor{a, b, k, +1}});
}

MomentFunction MomentFunction::reciprocal() const {
  auto fs = factors_;
  for (auto& f : fs) f.sign = -f.sign;
  return MomentFunction(std::move(fs));
}

MomentFunction combine(const MomentFunction& m1, const MomentFunction& m2, CombineOp op) {
  auto fs = m1.factors();
  const MomentFunction other = op == CombineOp::product ? m2 : m2.reciprocal();
  const auto& rhs = other.factors();
  fs.insert(fs.end(), rhs.begin(), rhs.end());
  return MomentFunction(std::move(fs));
}

Rational order(const MomentFunction& m) {
  Rational s = 0;
  for (const auto& f : m.factors()) s += Rational(f.sign) / f.k;
  return s;
}

double log_eval(const MomentFunction& m, const Rational& u) {
  require_nonnegative(u);
  double acc = 0.0;
  for (const auto& f : m.factors()) {
    double arg = to_double(gamma_argument(f, u));
    acc += f.sign * (std::log(to_double(f.a)) + std::lgamma(arg));
  }
  return acc;
}

double eval(const MomentFunction& m, const Rational& u) {
  require_nonnegative(u);
  double value = 1.0;
  for (const auto& f : m.factors()) {
    double arg = to_double(gamma_argument(f, u));
    if (arg > kDirectGammaLimit) return std::exp(log_eval(m, u));
    double g = to_double(f.a) * std::tgamma(arg);
    value = f.sign > 0 ? value * g : value / g;
  }
  return value;
}

Rational eval_exact(const MomentFunction& m, const Rational& u) {
  require_nonnegative(u);
  Rational value = 1;
  for (const auto& f : m.factors()) {
    Rational arg = gamma_argument(f, u);
    if (!is_integer(arg))
      throw PreconditionError("exact evaluation needs integral gamma arguments, got Gamma(" + to_string(arg) +
                              ")");
    Rational g = f.a;
    for (long r = 2; r < to_long(arg); ++r) g *= r;
    value = f.sign > 0 ? value * g : value / g;
  }
  return value;
}

double eval_ratio(const MomentFunction& m, const Rational& u_num, const Rational& u_den) {
  require_nonnegative(u_num);
  require_nonnegative(u_den);
  double value = 1.0;
  for (const auto& f : m.factors()) {
    Rational x = gamma_argument(f, u_num);
    Rational y = gamma_argument(f, u_den);
    Rational d = x - y;
    double r;
    if (is_integer(d) && abs(d) <= 256) {
      // Gamma(y + d)/Gamma(y) as a rising product.
      long n = to_long(d);
      r = 1.0;
      if (n >= 0) {
        double base = to_double(y);
        for (long i = 0; i < n; ++i) r *= base + static_cast<double>(i);
      } else {
        double base = to_double(x);
        for (long i = 0; i < -n; ++i) r *= base + static_cast<double>(i);
        r = 1.0 / r;
      }
    } else {
      r = std::exp(std::lgamma(to_double(x)) - std::lgamma(to_double(y)));
    }
    value = f.sign > 0 ? value * r : value / r;
  }
  return value;
}

Rational eval_ratio_exact(const MomentFunction& m, const Rational& u_num, const Rational& u_den) {
  require_nonnegative(u_num);
  require_nonnegative(u_den);
  Rational value = 1;
  for (const auto& f : m.factors()) {
    Rational x = gamma_argument(f, u_num);
    Rational y = gamma_argument(f, u_den);
    Rational d = x - y;
    if (!is_integer(d))
      throw PreconditionError("exact moment ratio needs integral gamma-argument differences, got " + to_string(d));
    long n = to_long(d);
    Rational r = 1;
    if (n >= 0) {
      for (long i = 0; i < n; ++i) r *= y + i;
    } else {
      for (long i = 0; i < -n; ++i) r *= x + i;
      r = 1 / r;
    }
    value = f.sign > 0 ? value * r : value / r;
  }
  return value;
}

SqrtPiValue eval_exact_sqrt_pi(const MomentFunction& m, const Rational& u) {
  require_nonnegative(u);
  SqrtPiValue v{Rational(1), 0};
  for (const auto& f : m.factors()) {
    Rational arg = gamma_argument(f, u);
    Rational g = f.a;
    int power = 0;
    if (is_integer(arg) && arg > 0) {
      for (long r = 2; r < to_long(arg); ++r) g *= r;
    } else if (is_integer(arg - Rational(1) / 2) && arg > 0) {
      // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
      long n = to_long(arg - Rational(1) / 2);
      for (long r = n + 1; r <= 2 * n; ++r) g *= r;
      for (long r = 0; r < n; ++r) g /= 4;
      power = 1;
    } else {
      throw PreconditionError("exact evaluation needs integral or half-integral gamma arguments, got Gamma(" +
                              to_string(arg) + ")");
    }
    if (f.sign > 0) {
      v.coef *= g;
      v.sqrt_pi_power += power;
    } else {
      v.coef /= g;
      v.sqrt_pi_power -= power;
    }
  }
  return v;
}

std::string to_string(const MomentFunction& m) {
  if (m.empty()) return "Gamma(0)";
  std::string out;
  bool first = true;
  for (const auto& f : m.factors()) {
    std::string body;
    bool gamma_form = f.a == 1 && f.b == 1;
    int sign = f.sign;
    if (gamma_form) {
      body = "Gamma(" + to_string(Rational(Rational(1) / f.k)) + ")";
    } else {
      std::string u = f.k == 1 ? "u" : "u/" + to_string(f.k);
      body = to_string(f.a) + "*Gamma(" + to_string(f.b) + "+" + u + ")";
    }
    if (first) {
      if (sign < 0 && gamma_form) {
        body = "Gamma(" + to_string(Rational(Rational(-1) / f.k)) + ")";
        sign = +1;
      } else if (sign < 0) {
        out = "Gamma(0)";
      }
    }
    if (!first || sign < 0) out += sign > 0 ? "*" : "/";
    out += body;
    first = false;
  }
  return out;
}

double kernel_e(double a, double b, double k, double x) {
  if (x <= 0) throw DomainError("kernel_e requires x > 0");
  if (a <= 0 || k <= 0) throw DomainError("kernel_e requires a > 0 and k > 0");
  return a * k * std::pow(x, b * k) * std::exp(-std::pow(x, k));
}

namespace {

// Weighted Mittag-Leffler-type series sum_{j >= j0} w_j x^j / Gamma(1 + s j),
// with terms generated by the exact recurrence
//   Gamma(1 + s(j + nu)) = Gamma(1 + s j) * prod_{r=1}^{mu} (s j + r),  s = mu/nu.
// `weight_step(j)` returns w_{j}/w_{j-1} for j > j0 (w_{j0} = 1).
template <class WeightStep>
SeriesValue ml_type_series(const Rational& s, Complex x, double tol, SeriesLimits limits, long j0,
                           WeightStep weight_step) {
  if (s <= 0) throw DomainError("Mittag-Leffler index must be positive");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  if (std::abs(x) > limits.radius)
    throw DomainError("|x| exceeds the series radius bound " + std::to_string(limits.radius));

  const long mu = numerator_of(s).convert_to<long>();
  const long nu = denominator_of(s).convert_to<long>();
  const double sd = to_double(s);

  // Raw terms x^j / Gamma(1 + s j), kept for the recurrence.
  std::vector<Complex> raw;
  raw.reserve(256);
  Complex xpow = 1.0;
  for (long j = 0; j < nu; ++j) {
    raw.push_back(xpow / std::tgamma(1.0 + sd * static_cast<double>(j)));
    xpow *= x;
  }
  const Complex x_nu = xpow;
  auto raw_term = [&](long j) -> Complex {
    while (static_cast<long>(raw.size()) <= j) {
      long jj = static_cast<long>(raw.size());
      double denom = 1.0;
      double base = sd * static_cast<double>(jj - nu);
      for (long r = 1; r <= mu; ++r) denom *= base + static_cast<double>(r);
      raw.push_back(raw[jj - nu] * x_nu / denom);
    }
    return raw[j];
  };

  // Neumaier-compensated complex sum.
  double sr = 0, cr = 0, si = 0, ci = 0;
  auto add = [](double& sum, double& comp, double v) {
    double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };

  double weight = 1.0;
  double abs_sum = 0.0;
  double rounding = 0.0;
  double tail = 0.0;
  std::size_t count = 0;
  for (long j = j0;; ++j) {
    if (count >= limits.max_terms)
      throw EvaluationError("series did not converge within " + std::to_string(limits.max_terms) + " terms");
    Complex term = weight * raw_term(j);
    add(sr, cr, term.real());
    add(si, ci, term.imag());
    ++count;
    double a = std::abs(term);
    abs_sum += a;
    rounding += a * (8.0 + 3.0 * static_cast<double>(mu + 2) * (static_cast<double>(j) / nu + 1.0));

    double next_weight = weight * weight_step(j + 1);
    double a_next = std::abs(next_weight * raw_term(j + 1));
    if (a == 0.0 && a_next == 0.0 && j >= j0 + nu) break;  // x == 0
    if (a > 0.0) {
      double ratio = a_next / a;
      // Term ratios are non-increasing (log-convexity of Gamma), so the tail
      // after j is bounded by a geometric series.
      if (ratio < 1.0) {
        double bound = a_next / (1.0 - ratio);
        if (bound < tol) {
          tail = bound;
          break;
        }
      }
    }
    weight = next_weight;
  }
  Complex value(sr + cr, si + ci);
  double bound = kUnitRoundoff * rounding + 2.0 * kUnitRoundoff * abs_sum + tail;
  return {value, bound, count};
}

}  // namespace

SeriesValue mittag_leffler_bounded(const Rational& s, Complex x, double tol, SeriesLimits limits) {
  return ml_type_series(s, x, tol, limits, 0, [](long) { return 1.0; });
}

Complex e_s_beta(const Rational& s, int beta, Complex x, double tol, SeriesLimits limits) {
  if (beta < 1) throw DomainError("beta must be a positive integer");
  // w_j = C(j-1, beta-1); w_j / w_{j-1} = (j-1)/(j-beta).
  auto step = [beta](long j) { return static_cast<double>(j - 1) / static_cast<double>(j - beta); };
  return ml_type_series(s, x, tol, limits, beta, step).value;
}

Complex e_s_beta_derivative_form(const Rational& s, int beta, Complex x, double tol, SeriesLimits limits) {
  if (beta < 1) throw DomainError("beta must be a positive integer");
  if (s <= 0) throw DomainError("Mittag-Leffler index must be positive");
  if (std::abs(x) > limits.radius)
    throw DomainError("|x| exceeds the series radius bound " + std::to_string(limits.radius));
  const double sd = to_double(s);
  // (E_s(x) - 1)/x = sum_{n>=0} c_n x^n with c_n = 1/Gamma(1 + s(n+1)).
  auto coeff = [sd](long n) {
    double arg = 1.0 + sd * static_cast<double>(n + 1);
    return arg < kDirectGammaLimit ? 1.0 / std::tgamma(arg) : std::exp(-std::lgamma(arg));
  };
  const long order = beta - 1;
  // d^order/dx^order: sum_{n>=order} c_n n!/(n-order)! x^{n-order}
  Complex sum = 0.0;
  Complex xp = 1.0;
  double prev_abs = -1.0;
  for (long n = order;; ++n) {
    if (static_cast<std::size_t>(n - order) >= limits.max_terms)
      throw EvaluationError("derivative series did not converge");
    double falling = 1.0;
    for (long r = 0; r < order; ++r) falling *= static_cast<double>(n - r);
    Complex term = coeff(n) * falling * xp;
    sum += term;
    double a = std::abs(term);
    if (x == Complex(0.0)) break;
    if (prev_abs > 0.0 && a < prev_abs) {
      double ratio = a / prev_abs;
      if (a * ratio / (1.0 - ratio) < tol && n > order + 2) break;
    }
    prev_abs = a;
    xp *= x;
  }
  double fact = 1.0;
  for (long r = 2; r <= order; ++r) fact *= static_cast<double>(r);
  return std::pow(x, beta) / fact * sum;
}

MellinResult mellin_check(double a, double b, double k, const Rational& u, MellinQuadrature params) {
  if (a <= 0 || k <= 0) throw DomainError("mellin_check requires a > 0 and k > 0");
  require_nonnegative(u);
  // With y = x^k the integral becomes a * int_0^inf y^{b + u/k - 1} e^{-y} dy.
  const double p = b + to_double(u) / k - 1.0;
  if (p <= -1.0) throw DomainError("Mellin integral diverges at the origin");
  const double reference = std::exp(std::lgamma(p + 1.0));

  double y_max = params.y_max;
  double tail = 0.0;
  if (y_max <= 0.0) {
    y_max = std::max(40.0, 2.0 * (p + 1.0));
    // For y > 2p the tail int_Y^inf y^p e^{-y} dy is at most 2 Y^p e^{-Y}.
    while (2.0 * std::exp(p * std::log(y_max) - y_max) > 1e-17 * reference) y_max += 10.0;
  }
  if (y_max > 2.0 * p) tail = 2.0 * std::exp(p * std::log(y_max) - y_max);

  auto integrand = [p](double y) { return y == 0.0 ? (p == 0.0 ? 1.0 : 0.0) : std::exp(p * std::log(y) - y); };
  // Two adaptive rules of different order; their disagreement is the residual estimate.
  double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, y_max,
                                                                                params.max_depth, params.rel_tol);
  double coarse = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, y_max,
                                                                                 params.max_depth, params.rel_tol);
  MellinResult result{a * value, a * (std::abs(value - coarse) + tail)};
  if (!(result.error_estimate <= 1e-10 * std::abs(result.value)))
    throw EvaluationError("Mellin quadrature did not converge (residual estimate " +
                          std::to_string(result.error_estimate) + ")");
  return result;
}

}  // namespace mpde
