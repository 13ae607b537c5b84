#pragma once

#include "mpde/char_roots.hpp"
#include "mpde/errors.hpp"
#include "mpde/moment.hpp"
#include "mpde/series.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace mpde {

enum class SolveMode { direct, pseudo };
enum class RhsRole { g, f };

/// P(d_{m1,t}, d_{m2,z}) u = f with zero Cauchy data. The right-hand side is
/// g (with f = P_n(d_{m2,z}) g, P_n the lambda^n coefficient) unless role is f.
template <class Scalar>
struct CauchyProblem {
  CharPoly p;
  MomentFunction m1;
  MomentFunction m2;
  Series2<Scalar> rhs;
  RhsRole role = RhsRole::g;
  Rational t1{0};  // declared Gevrey orders of the right-hand side (metadata only)
  Rational t2{0};
  int n1_out = 20;
  int n2_out = 20;
  SolveMode mode = SolveMode::direct;
};

/// Largest zeta power in the support of P.
inline int max_zeta_power(const CharPoly& p) { return std::max(p.poly().zeta_degree(), 0); }

/// Internal z-truncation used by formal_solve: N2_out + N1_out * max_b.
inline int internal_n2(const CharPoly& p, int n1_out, int n2_out) { return n2_out + n1_out * max_zeta_power(p); }

/// Right-hand side window (levels 0..N1_out-n, z up to the internal truncation).
inline std::pair<int, int> required_rhs_window(const CharPoly& p, int n1_out, int n2_out) {
  return {std::max(n1_out - p.n(), 0), internal_n2(p, n1_out, n2_out)};
}

/// Lambda^0-only operator P0(zeta) as a bivariate polynomial.
inline BiPoly zeta_operator(const ExactPoly& p0) {
  BiPoly::Table t;
  for (int b = 0; b <= p0.degree(); ++b)
    if (!p0[b].is_zero()) t.emplace(BiPoly::Key{0, b}, p0[b]);
  return BiPoly(std::move(t));
}

/// Solves P0(d_{m2,z}) g = f upward in z with the free coefficients
/// (normalized i < deg P0 on every level) set to zero.
template <class Scalar>
Series2<Scalar> g_from_f(const ExactPoly& p0, const MomentFunction& m2, const Series2<Scalar>& f) {
  if (p0.is_zero()) throw PreconditionError("P0 is identically zero");
  int big_b = p0.degree();
  Scalar lead = ScalarTraits<Scalar>::from_exact(p0.leading());
  std::vector<Scalar> pb;
  for (int b = 0; b <= big_b; ++b) pb.push_back(ScalarTraits<Scalar>::from_exact(p0[b]));

  Series2<Scalar> g(f.n1(), f.n2());
  g.kappa1 = f.kappa1;
  g.kappa2 = f.kappa2;
  g.valid_j = f.valid_j;
  g.valid_i = f.valid_i;
  // raw form of sum_b p_b G_{i+b} = F_i, solved for G_{i+B}:
  // g_{i+B} = (f_i - sum_{b<B} p_b g_{i+b} m2(i+b)/m2(i)) * m2(i)/m2(i+B) / p_B
  for (int i = 0; i + big_b <= f.n2(); ++i) {
    std::vector<Scalar> r;
    for (int b = 0; b <= big_b; ++b)
      r.push_back(moment_ratio<Scalar>(m2, detail::frac(i + b, f.kappa2), detail::frac(i, f.kappa2)));
    for (int j = 0; j <= f.n1(); ++j) {
      Scalar acc = f(j, i);
      for (int b = 0; b < big_b; ++b)
        if (!ScalarTraits<Scalar>::is_zero(pb[static_cast<std::size_t>(b)]))
          acc -= pb[static_cast<std::size_t>(b)] * g(j, i + b) * r[static_cast<std::size_t>(b)];
      g(j, i + big_b) = acc / (lead * r[static_cast<std::size_t>(big_b)]);
    }
  }
  return g;
}

namespace detail {

/// Laurent expansion at zeta = infinity of num(zeta)/den(zeta): coefficient of
/// zeta^e for e from deg num - deg den down to -depth.
inline std::map<int, ExactComplex> expand_at_infinity(const ExactPoly& num, const ExactPoly& den, int depth) {
  std::map<int, ExactComplex> out;
  if (num.is_zero()) return out;
  int big_b = den.degree();
  int top = num.degree() - big_b;
  int len = top + depth + 1;  // number of w-powers needed, w = 1/zeta
  if (len <= 0) return out;
  // 1/den = w^B * S(w), S = 1/(p_B + p_{B-1} w + ... + p_0 w^B)
  std::vector<ExactComplex> s(static_cast<std::size_t>(len));
  for (int k = 0; k < len; ++k) {
    ExactComplex acc = k == 0 ? ExactComplex(1) : ExactComplex(0);
    for (int l = 1; l <= std::min(k, big_b); ++l) acc -= den[big_b - l] * s[static_cast<std::size_t>(k - l)];
    s[static_cast<std::size_t>(k)] = acc / den.leading();
  }
  // num/den = sum_b c_b w^{B-b} S(w); zeta exponent of w^{B-b+l} is b-B-l
  for (int b = 0; b <= num.degree(); ++b) {
    if (num[b].is_zero()) continue;
    for (int l = 0; l < len; ++l) {
      int e = b - big_b - l;
      if (e < -depth) break;
      out[e] += num[b] * s[static_cast<std::size_t>(l)];
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// Cached m(x)/m(y) for integer indices.
template <class Scalar>
class RatioCache {
 public:
  RatioCache(const MomentFunction& m, int kappa) : m_(m), kappa_(kappa) {}
  const Scalar& operator()(int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, moment_ratio<Scalar>(m_, frac(x, kappa_), frac(y, kappa_))).first;
    return it->second;
  }

 private:
  const MomentFunction& m_;
  int kappa_;
  std::map<std::pair<int, int>, Scalar> cache_;
};

}  // namespace detail

/// Normalized truncated formal solution on the window (n1_out, n2_out).
template <class Scalar>
Series2<Scalar> formal_solve(const CauchyProblem<Scalar>& prob) {
  const CharPoly& p = prob.p;
  const int n = p.n();
  if (prob.n1_out < 0 || prob.n2_out < 0) throw PreconditionError("negative truncation");
  if (prob.rhs.kappa1 != 1 || prob.rhs.kappa2 != 1)
    throw PreconditionError("the solver works with unramified right-hand sides");
  const ExactPoly& pn = p.coefficient(n);
  if (prob.mode == SolveMode::direct && pn.degree() != 0)
    throw PreconditionError("direct mode needs a constant lambda^n coefficient; use pseudo mode");

  const int n1 = prob.n1_out;
  const int n2 = internal_n2(p, prob.n1_out, prob.n2_out);
  auto [need_j, need_i] = required_rhs_window(p, prob.n1_out, prob.n2_out);
  if (n1 >= n && (prob.rhs.valid_j < need_j || prob.rhs.valid_i < need_i))
    throw PreconditionError("right-hand side has window (" + std::to_string(prob.rhs.valid_j) + "," +
                            std::to_string(prob.rhs.valid_i) + "), solver needs (" + std::to_string(need_j) + "," +
                            std::to_string(need_i) + ")");

  Series2<Scalar> g = prob.role == RhsRole::g ? prob.rhs : g_from_f(pn, prob.m2, prob.rhs);

  Series2<Scalar> u(n1, n2);
  std::vector<int> extent(static_cast<std::size_t>(n1 + 1), n2);
  detail::RatioCache<Scalar> r1(prob.m1, 1), r2(prob.m2, 1);

  if (prob.mode == SolveMode::direct) {
    // p_{n0} U_{j+n,i} = F_{j,i} - sum_{a<n} p_ab U_{j+a,i+b}, F = p_{n0} G
    Scalar pn0 = ScalarTraits<Scalar>::from_exact(pn[0]);
    struct Term {
      int a, b;
      Scalar c;
    };
    std::vector<Term> lower;
    for (auto& [k, v] : p.poly().terms())
      if (k.first < n) lower.push_back({k.first, k.second, ScalarTraits<Scalar>::from_exact(v) / pn0});
    for (int j = 0; j + n <= n1; ++j) {
      int ext = std::min(n2, g.valid_i);
      for (auto& t : lower) ext = std::min(ext, extent[static_cast<std::size_t>(j + t.a)] - t.b);
      ext = std::max(ext, -1);
      extent[static_cast<std::size_t>(j + n)] = ext;
      Scalar rg = r1(j, j + n);
      for (int i = 0; i <= ext; ++i) {
        Scalar acc = g(j, i) * rg;
        for (auto& t : lower) {
          const Scalar& c = u(j + t.a, i + t.b);
          if (ScalarTraits<Scalar>::is_zero(c)) continue;
          acc -= t.c * c * r1(j + t.a, j + n) * r2(i + t.b, i);
        }
        u(j + n, i) = acc;
      }
    }
  } else {
    // U_{j+n,.} = sum_a Q_a(d) U_{j+n-a,.} + G_j with Q_a = -P_{n-a}/P_n expanded at infinity
    std::vector<std::map<int, Scalar>> q(static_cast<std::size_t>(n + 1));
    std::vector<int> top(static_cast<std::size_t>(n + 1), 0);
    for (int a = 1; a <= n; ++a) {
      ExactPoly num = ExactPoly() - p.coefficient(n - a);
      for (auto& [e, c] : detail::expand_at_infinity(num, pn, n2)) {
        q[static_cast<std::size_t>(a)].emplace(e, ScalarTraits<Scalar>::from_exact(c));
        top[static_cast<std::size_t>(a)] = std::max(top[static_cast<std::size_t>(a)], e);
      }
    }
    for (int j = 0; j + n <= n1; ++j) {
      int ext = std::min(n2, g.valid_i);
      for (int a = 1; a <= n; ++a)
        if (!q[static_cast<std::size_t>(a)].empty())
          ext = std::min(ext, extent[static_cast<std::size_t>(j + n - a)] - top[static_cast<std::size_t>(a)]);
      ext = std::max(ext, -1);
      extent[static_cast<std::size_t>(j + n)] = ext;
      Scalar rg = r1(j, j + n);
      for (int i = 0; i <= ext; ++i) {
        Scalar acc = g(j, i) * rg;
        for (int a = 1; a <= n; ++a) {
          int src = j + n - a;
          if (src < n) continue;  // zero Cauchy data
          Scalar ra = r1(src, j + n);
          for (auto& [e, c] : q[static_cast<std::size_t>(a)]) {
            if (i + e < 0) continue;
            const Scalar& v = u(src, i + e);
            if (ScalarTraits<Scalar>::is_zero(v)) continue;
            acc += c * v * ra * r2(i + e, i);
          }
        }
        u(j + n, i) = acc;
      }
    }
  }

  for (int j = 0; j <= n1; ++j)
    if (extent[static_cast<std::size_t>(j)] < prob.n2_out)
      throw PreconditionError("level " + std::to_string(j) + " is only valid up to z-index " +
                              std::to_string(extent[static_cast<std::size_t>(j)]));
  Series2<Scalar> out(typename Series2<Scalar>::Matrix(u.coeffs.topLeftCorner(n1 + 1, prob.n2_out + 1)));
  return out;
}

/// f = P_n(d_{m2,z}) g, or the right-hand side itself when it was given as f.
template <class Scalar>
Series2<Scalar> rhs_f(const CauchyProblem<Scalar>& prob) {
  if (prob.role == RhsRole::f) return prob.rhs;
  return apply_operator(zeta_operator(prob.p.coefficient(prob.p.n())), prob.m1, prob.m2, prob.rhs);
}

struct ResidualResult {
  double max_abs = 0.0;
  double scale = 0.0;  // largest |f| or |P u| coefficient on the window
  bool exact_zero = false;
  int window_j = -1;
  int window_i = -1;

  double relative() const { return scale > 0 ? max_abs / scale : max_abs; }
};

/// max |P(d) u - f| over the window where P(d) u is determined by u.
template <class Scalar>
ResidualResult residual(const CauchyProblem<Scalar>& prob, const Series2<Scalar>& u) {
  Series2<Scalar> lhs = apply_operator(prob.p.poly(), prob.m1, prob.m2, u);
  Series2<Scalar> f = rhs_f(prob);
  ResidualResult res;
  res.window_j = std::min(lhs.valid_j, f.valid_j);
  res.window_i = std::min(lhs.valid_i, f.valid_i);
  if (res.window_j < 0 || res.window_i < 0) throw PreconditionError("residual window is empty");
  res.exact_zero = true;
  for (int j = 0; j <= res.window_j; ++j)
    for (int i = 0; i <= res.window_i; ++i) {
      Scalar d = lhs(j, i) - f(j, i);
      if (!ScalarTraits<Scalar>::is_zero(d)) res.exact_zero = false;
      res.max_abs = std::max(res.max_abs, ScalarTraits<Scalar>::abs(d));
      res.scale = std::max({res.scale, ScalarTraits<Scalar>::abs(lhs(j, i)), ScalarTraits<Scalar>::abs(f(j, i))});
    }
  return res;
}

struct BranchOrder {
  Rational q;
  Rational order;  // max{q^+ (s2 + t2) - s1, t1}
};

struct TheoreticalOrders {
  std::vector<BranchOrder> per_branch;
  Rational t_order;  // max over branches
  Rational z_order;  // t2
};

/// Gevrey orders of the formal solution predicted from the branch pole orders.
/// Roots lambda = 0 (zero_roots > 0) count as pole order 0.
TheoreticalOrders theoretical_orders(const std::vector<CharBranch>& branches, int zero_roots, const Rational& s1,
                                     const Rational& s2, const Rational& t1, const Rational& t2);

}  // namespace mpde
