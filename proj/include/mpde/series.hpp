#pragma once

#include "mpde/errors.hpp"
#include "mpde/moment.hpp"
#include "mpde/polynomial.hpp"
#include "mpde/scalar.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace mpde {

enum class Axis { t, z };

/// Truncated series sum_{j=0}^{N} c_j x^{j/kappa}.
template <class Scalar>
struct Series1 {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int kappa = 1;
  Vector coeffs;
  std::string label = "x";

  Series1() = default;
  explicit Series1(int n, int kappa_ = 1) : kappa(kappa_), coeffs(Vector::Zero(n + 1)) {}
  Series1(Vector c, int kappa_ = 1) : kappa(kappa_), coeffs(std::move(c)) {}

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
  const Scalar& operator[](int j) const { return coeffs[j]; }
  Scalar& operator[](int j) { return coeffs[j]; }
};

/// Truncated bivariate series sum c_{j,i} t^{j/kappa1} z^{i/kappa2} on a dense
/// (N1+1)x(N2+1) grid. Coefficients with j <= valid_j and i <= valid_i are
/// trustworthy; entries outside that window are zero placeholders.
template <class Scalar>
struct Series2 {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int kappa1 = 1;
  int kappa2 = 1;
  Matrix coeffs;
  int valid_j = -1;
  int valid_i = -1;

  Series2() = default;
  Series2(int n1, int n2) : coeffs(Matrix::Zero(n1 + 1, n2 + 1)), valid_j(n1), valid_i(n2) {}
  explicit Series2(Matrix c)
      : coeffs(std::move(c)),
        valid_j(static_cast<int>(coeffs.rows()) - 1),
        valid_i(static_cast<int>(coeffs.cols()) - 1) {}

  int n1() const { return static_cast<int>(coeffs.rows()) - 1; }
  int n2() const { return static_cast<int>(coeffs.cols()) - 1; }
  const Scalar& operator()(int j, int i) const { return coeffs(j, i); }
  Scalar& operator()(int j, int i) { return coeffs(j, i); }

  /// Copy restricted to the valid window.
  Series2 window() const {
    Series2 out(Matrix(coeffs.topLeftCorner(valid_j + 1, valid_i + 1)));
    out.kappa1 = kappa1;
    out.kappa2 = kappa2;
    return out;
  }
};

namespace detail {

/// ratio[j] = m(u_num(j))/m(u_den(j)) for j = 0..count-1.
template <class Scalar, class NumFn, class DenFn>
std::vector<Scalar> ratio_table(const MomentFunction& m, int count, NumFn num, DenFn den) {
  std::vector<Scalar> r;
  r.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) r.push_back(moment_ratio<Scalar>(m, num(j), den(j)));
  return r;
}

inline Rational frac(int j, int kappa) { return Rational(j) / kappa; }

template <class Scalar>
std::vector<Scalar> borel_factors(const MomentFunction& m, int count, int kappa, bool inverse) {
  std::vector<Scalar> f;
  f.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    Scalar v = moment_value<Scalar>(m, frac(j, kappa));
    f.push_back(inverse ? v : Scalar(1) / v);
  }
  return f;
}

}  // namespace detail

/// Moment Borel transform: c_j / m(j/kappa).
template <class Scalar>
Series1<Scalar> borel(const MomentFunction& m, Series1<Scalar> s) {
  auto f = detail::borel_factors<Scalar>(m, s.truncation() + 1, s.kappa, false);
  for (int j = 0; j <= s.truncation(); ++j) s[j] = s[j] * f[static_cast<std::size_t>(j)];
  return s;
}

/// Inverse moment Borel transform: c_j * m(j/kappa).
template <class Scalar>
Series1<Scalar> inv_borel(const MomentFunction& m, Series1<Scalar> s) {
  auto f = detail::borel_factors<Scalar>(m, s.truncation() + 1, s.kappa, true);
  for (int j = 0; j <= s.truncation(); ++j) s[j] = s[j] * f[static_cast<std::size_t>(j)];
  return s;
}

template <class Scalar>
Series2<Scalar> borel(const MomentFunction& m, Series2<Scalar> s, Axis axis, bool inverse = false) {
  if (axis == Axis::t) {
    auto f = detail::borel_factors<Scalar>(m, s.n1() + 1, s.kappa1, inverse);
    for (int j = 0; j <= s.n1(); ++j)
      for (int i = 0; i <= s.n2(); ++i) s(j, i) = s(j, i) * f[static_cast<std::size_t>(j)];
  } else {
    auto f = detail::borel_factors<Scalar>(m, s.n2() + 1, s.kappa2, inverse);
    for (int j = 0; j <= s.n1(); ++j)
      for (int i = 0; i <= s.n2(); ++i) s(j, i) = s(j, i) * f[static_cast<std::size_t>(i)];
  }
  return s;
}

template <class Scalar>
Series2<Scalar> inv_borel(const MomentFunction& m, Series2<Scalar> s, Axis axis) {
  return borel(m, std::move(s), axis, true);
}

/// Moment derivative applied `times` times: c'_j = c_{j+t} m((j+t)/kappa)/m(j/kappa).
/// The truncation shrinks by `times`.
template <class Scalar>
Series1<Scalar> moment_diff(const MomentFunction& m, const Series1<Scalar>& s, int times) {
  if (times < 0) throw PreconditionError("negative derivative count");
  int n = s.truncation() - times;
  if (n < 0) throw PreconditionError("moment derivative leaves an empty valid window");
  auto r = detail::ratio_table<Scalar>(
      m, n + 1, [&](int j) { return detail::frac(j + times, s.kappa); },
      [&](int j) { return detail::frac(j, s.kappa); });
  Series1<Scalar> out(n, s.kappa);
  out.label = s.label;
  for (int j = 0; j <= n; ++j) out[j] = s[j + times] * r[static_cast<std::size_t>(j)];
  return out;
}

/// Moment integration applied `times` times: c'_j = c_{j-t} m((j-t)/kappa)/m(j/kappa)
/// for j >= t and 0 below. The truncation is preserved.
template <class Scalar>
Series1<Scalar> moment_antidiff(const MomentFunction& m, const Series1<Scalar>& s, int times) {
  if (times < 0) throw PreconditionError("negative integration count");
  int n = s.truncation();
  Series1<Scalar> out(n, s.kappa);
  out.label = s.label;
  for (int j = times; j <= n; ++j)
    out[j] = s[j - times] * moment_ratio<Scalar>(m, detail::frac(j - times, s.kappa), detail::frac(j, s.kappa));
  return out;
}

template <class Scalar>
Series2<Scalar> moment_diff(const MomentFunction& m, const Series2<Scalar>& s, Axis axis, int times) {
  if (times < 0) throw PreconditionError("negative derivative count");
  bool along_t = axis == Axis::t;
  int kappa = along_t ? s.kappa1 : s.kappa2;
  int n = (along_t ? s.n1() : s.n2()) - times;
  int valid = (along_t ? s.valid_j : s.valid_i) - times;
  if (n < 0 || valid < 0) throw PreconditionError("moment derivative leaves an empty valid window");
  auto r = detail::ratio_table<Scalar>(
      m, n + 1, [&](int j) { return detail::frac(j + times, kappa); },
      [&](int j) { return detail::frac(j, kappa); });
  Series2<Scalar> out(along_t ? n : s.n1(), along_t ? s.n2() : n);
  out.kappa1 = s.kappa1;
  out.kappa2 = s.kappa2;
  out.valid_j = along_t ? valid : s.valid_j;
  out.valid_i = along_t ? s.valid_i : valid;
  for (int j = 0; j <= out.n1(); ++j)
    for (int i = 0; i <= out.n2(); ++i)
      out(j, i) = along_t ? s(j + times, i) * r[static_cast<std::size_t>(j)]
                          : s(j, i + times) * r[static_cast<std::size_t>(i)];
  return out;
}

template <class Scalar>
Series2<Scalar> moment_antidiff(const MomentFunction& m, const Series2<Scalar>& s, Axis axis, int times) {
  if (times < 0) throw PreconditionError("negative integration count");
  bool along_t = axis == Axis::t;
  int kappa = along_t ? s.kappa1 : s.kappa2;
  int n = along_t ? s.n1() : s.n2();
  std::vector<Scalar> r(static_cast<std::size_t>(n + 1), Scalar(0));
  for (int j = times; j <= n; ++j)
    r[static_cast<std::size_t>(j)] = moment_ratio<Scalar>(m, detail::frac(j - times, kappa), detail::frac(j, kappa));
  Series2<Scalar> out = s;
  out.coeffs.setZero();
  for (int j = 0; j <= s.n1(); ++j)
    for (int i = 0; i <= s.n2(); ++i) {
      if (along_t && j >= times) out(j, i) = s(j - times, i) * r[static_cast<std::size_t>(j)];
      if (!along_t && i >= times) out(j, i) = s(j, i - times) * r[static_cast<std::size_t>(i)];
    }
  return out;
}

/// Applies P(d_{m1,t}, d_{m2,z}) where lambda^a zeta^b in P stands for
/// d_{m1,t}^a d_{m2,z}^b. The output grid and valid window shrink by
/// (max a, max b) over the support.
template <class Scalar>
Series2<Scalar> apply_operator(const BiPoly& p, const MomentFunction& m1, const MomentFunction& m2,
                               const Series2<Scalar>& u) {
  int max_a = 0, max_b = 0;
  for (auto& [k, v] : p.terms()) {
    max_a = std::max(max_a, k.first);
    max_b = std::max(max_b, k.second);
  }
  int n1 = u.valid_j - max_a;
  int n2 = u.valid_i - max_b;
  if (n1 < 0 || n2 < 0) throw PreconditionError("operator application leaves an empty valid window");

  // r1[a][j] = m1((j+a)/kappa1)/m1(j/kappa1), likewise r2 in z.
  std::vector<std::vector<Scalar>> r1(static_cast<std::size_t>(max_a + 1));
  std::vector<std::vector<Scalar>> r2(static_cast<std::size_t>(max_b + 1));
  std::vector<bool> need_a(static_cast<std::size_t>(max_a + 1)), need_b(static_cast<std::size_t>(max_b + 1));
  for (auto& [k, v] : p.terms()) {
    need_a[static_cast<std::size_t>(k.first)] = true;
    need_b[static_cast<std::size_t>(k.second)] = true;
  }
  for (int a = 0; a <= max_a; ++a)
    if (need_a[static_cast<std::size_t>(a)])
      r1[static_cast<std::size_t>(a)] = detail::ratio_table<Scalar>(
          m1, n1 + 1, [&](int j) { return detail::frac(j + a, u.kappa1); },
          [&](int j) { return detail::frac(j, u.kappa1); });
  for (int b = 0; b <= max_b; ++b)
    if (need_b[static_cast<std::size_t>(b)])
      r2[static_cast<std::size_t>(b)] = detail::ratio_table<Scalar>(
          m2, n2 + 1, [&](int i) { return detail::frac(i + b, u.kappa2); },
          [&](int i) { return detail::frac(i, u.kappa2); });

  Series2<Scalar> out(n1, n2);
  out.kappa1 = u.kappa1;
  out.kappa2 = u.kappa2;
  for (auto& [k, v] : p.terms()) {
    Scalar coeff = ScalarTraits<Scalar>::from_exact(v);
    auto& ra = r1[static_cast<std::size_t>(k.first)];
    auto& rb = r2[static_cast<std::size_t>(k.second)];
    for (int j = 0; j <= n1; ++j) {
      Scalar cj = coeff * ra[static_cast<std::size_t>(j)];
      for (int i = 0; i <= n2; ++i)
        out(j, i) += cj * rb[static_cast<std::size_t>(i)] * u(j + k.first, i + k.second);
    }
  }
  return out;
}

template <class Scalar>
Series1<Scalar> operator+(const Series1<Scalar>& a, const Series1<Scalar>& b) {
  if (a.kappa != b.kappa) throw PreconditionError("ramification mismatch");
  int n = std::min(a.truncation(), b.truncation());
  return Series1<Scalar>(typename Series1<Scalar>::Vector(a.coeffs.head(n + 1) + b.coeffs.head(n + 1)), a.kappa);
}

template <class Scalar>
Series1<Scalar> operator*(const Scalar& c, Series1<Scalar> s) {
  for (int j = 0; j <= s.truncation(); ++j) s[j] = c * s[j];
  return s;
}

/// Cauchy product truncated at the smaller truncation.
template <class Scalar>
Series1<Scalar> operator*(const Series1<Scalar>& a, const Series1<Scalar>& b) {
  if (a.kappa != b.kappa) throw PreconditionError("ramification mismatch");
  int n = std::min(a.truncation(), b.truncation());
  Series1<Scalar> out(n, a.kappa);
  for (int j = 0; j <= n; ++j)
    for (int l = 0; l <= j; ++l) out[j] += a[l] * b[j - l];
  return out;
}

template <class Scalar>
Series2<Scalar> operator+(const Series2<Scalar>& a, const Series2<Scalar>& b) {
  if (a.kappa1 != b.kappa1 || a.kappa2 != b.kappa2) throw PreconditionError("ramification mismatch");
  int n1 = std::min(a.n1(), b.n1()), n2 = std::min(a.n2(), b.n2());
  Series2<Scalar> out(typename Series2<Scalar>::Matrix(a.coeffs.topLeftCorner(n1 + 1, n2 + 1) +
                                                       b.coeffs.topLeftCorner(n1 + 1, n2 + 1)));
  out.kappa1 = a.kappa1;
  out.kappa2 = a.kappa2;
  out.valid_j = std::min(a.valid_j, b.valid_j);
  out.valid_i = std::min(a.valid_i, b.valid_i);
  return out;
}

template <class Scalar>
Series2<Scalar> operator-(const Series2<Scalar>& a, const Series2<Scalar>& b) {
  return a + Scalar(-1) * b;
}

template <class Scalar>
Series2<Scalar> operator*(const Scalar& c, Series2<Scalar> s) {
  for (int j = 0; j <= s.n1(); ++j)
    for (int i = 0; i <= s.n2(); ++i) s(j, i) = c * s(j, i);
  return s;
}

template <class Scalar>
Series2<Scalar> operator*(const Series2<Scalar>& a, const Series2<Scalar>& b) {
  if (a.kappa1 != b.kappa1 || a.kappa2 != b.kappa2) throw PreconditionError("ramification mismatch");
  int n1 = std::min(a.valid_j, b.valid_j), n2 = std::min(a.valid_i, b.valid_i);
  Series2<Scalar> out(n1, n2);
  out.kappa1 = a.kappa1;
  out.kappa2 = a.kappa2;
  for (int j = 0; j <= n1; ++j)
    for (int i = 0; i <= n2; ++i)
      for (int l = 0; l <= j; ++l)
        for (int k = 0; k <= i; ++k) out(j, i) += a(l, k) * b(j - l, i - k);
  return out;
}

template <class Scalar>
Series2<Complex> to_float(const Series2<Scalar>& s) {
  Series2<Complex> out(s.n1(), s.n2());
  out.kappa1 = s.kappa1;
  out.kappa2 = s.kappa2;
  out.valid_j = s.valid_j;
  out.valid_i = s.valid_i;
  for (int j = 0; j <= s.n1(); ++j)
    for (int i = 0; i <= s.n2(); ++i) out(j, i) = ScalarTraits<Scalar>::to_complex(s(j, i));
  return out;
}

/// Sum of the series at x (principal branch of x^{1/kappa}).
Complex evaluate(const Series1<Complex>& s, Complex x);

struct GevreyFit {
  double s_hat = 0.0;
  double stderr_ = 0.0;
  int j_lo = 0;
  int j_hi = 0;
  double r = 0.1;
};

struct GevreyFitOptions {
  double r = 0.1;
  double j_min = 0.5;  // fraction of the valid t-extent where the fit starts
};

namespace detail {
GevreyFit fit_log_growth(const std::vector<double>& log_a, const std::vector<bool>& nonzero, int n1,
                         const GevreyFitOptions& opt);
}

/// Empirical t-Gevrey order: least-squares fit of log a_j, a_j = sum_i |c_{j,i}| r^i,
/// against {1, j, log Gamma(1+j)}; s_hat is the log Gamma coefficient.
template <class Scalar>
GevreyFit gevrey_fit(const Series2<Scalar>& u, GevreyFitOptions opt = {}) {
  int n1 = u.valid_j;
  std::vector<double> log_a(static_cast<std::size_t>(n1 + 1), 0.0);
  std::vector<bool> nonzero(static_cast<std::size_t>(n1 + 1), false);
  double log_r = std::log(opt.r);
  for (int j = 0; j <= n1; ++j) {
    // log-sum-exp over the row so huge exact coefficients never overflow
    std::vector<double> terms;
    for (int i = 0; i <= u.valid_i; ++i)
      if (!ScalarTraits<Scalar>::is_zero(u(j, i))) terms.push_back(ScalarTraits<Scalar>::log_abs(u(j, i)) + i * log_r);
    if (terms.empty()) continue;
    double mx = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    log_a[static_cast<std::size_t>(j)] = mx + std::log(acc);
    nonzero[static_cast<std::size_t>(j)] = true;
  }
  return detail::fit_log_growth(log_a, nonzero, n1, opt);
}

/// int_0^{X} phi(y^s) k s (X-y)^{ks-1} / Gamma(1+ks) dy with X = x^{1/s}: the
/// integral form of k-fold moment integration with respect to Gamma_s.
Complex frac_integral_quadrature(const Series1<Complex>& phi, const Rational& s, int k, double x);

/// Header `j,i,re,im`, row-major, 17 significant digits.
void write_csv(std::ostream& os, const Series2<Complex>& s);

template <class Scalar>
void write_csv(std::ostream& os, const Series2<Scalar>& s) {
  write_csv(os, to_float(s));
}

}  // namespace mpde
