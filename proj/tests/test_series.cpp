#include "support.hpp"

#include "mpde/errors.hpp"
#include "mpde/series.hpp"
#include "mpde/sqrt_pi.hpp"

#include <doctest.h>

#include <sstream>

using namespace mpde;
using testing::Gen;

namespace {

const MomentFunction G1 = MomentFunction::gamma_s(1);
const MomentFunction G2 = MomentFunction::gamma_s(2);
const MomentFunction Gh = MomentFunction::gamma_s(Rational(1) / 2);

double max_rel(const Series2<Complex>& a, const Series2<Complex>& b) {
  REQUIRE(a.n1() == b.n1());
  REQUIRE(a.n2() == b.n2());
  double worst = 0;
  for (int j = 0; j <= a.n1(); ++j)
    for (int i = 0; i <= a.n2(); ++i) worst = std::max(worst, testing::rel_err(a(j, i), b(j, i)));
  return worst;
}

Series2<Complex> rows_from(const std::vector<double>& c0) {
  Series2<Complex> u(static_cast<int>(c0.size()) - 1, 0);
  for (std::size_t j = 0; j < c0.size(); ++j) u(static_cast<int>(j), 0) = c0[j];
  return u;
}

Series1<Complex> as_float(const Series1<ExactComplex>& e) {
  Series1<Complex> out(e.truncation(), e.kappa);
  for (int j = 0; j <= e.truncation(); ++j) out[j] = e[j].to_complex();
  return out;
}

template <class M>
bool same(const M& a, const M& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

}  // namespace

TEST_CASE("Borel transform examples") {
  Series1<Complex> fact(10);
  for (int j = 0; j <= 10; ++j) fact[j] = std::tgamma(j + 1.0);
  auto ones = borel(G1, fact);
  for (int j = 0; j <= 10; ++j) CHECK(std::abs(ones[j] - 1.0) < 1e-15);
  auto back = inv_borel(G1, ones);
  for (int j = 0; j <= 10; ++j) CHECK(back[j].real() == doctest::Approx(std::tgamma(j + 1.0)).epsilon(1e-15));

  Series1<ExactComplex> g2(12);
  for (int j = 0; j <= 12; ++j) g2[j] = testing::factorial(2 * j);
  auto ones2 = borel(G2, g2);
  for (int j = 0; j <= 12; ++j) CHECK(ones2[j] == ExactComplex(1));

  Gen gen(3);
  auto s = gen.series1<ExactComplex>(20);
  auto id = borel(G1 / G1, s);
  for (int j = 0; j <= 20; ++j) CHECK(id[j] == s[j]);
  auto twice = borel(G2, borel(G2.reciprocal(), s));
  for (int j = 0; j <= 20; ++j) CHECK(twice[j] == s[j]);
}

TEST_CASE("Borel round trip is bit-exact in exact mode") {
  Gen gen(17);
  for (const auto& m : {G1, G2, G1 * G1, G2 / G1}) {
    for (int trial = 0; trial < 5; ++trial) {
      int n = gen.integer(0, 50);
      auto s = gen.series1<ExactComplex>(n);
      auto r = inv_borel(m, borel(m, s));
      for (int j = 0; j <= n; ++j) CHECK(r[j] == s[j]);
      auto s2 = gen.series2<ExactComplex>(gen.integer(0, 8), gen.integer(0, 8));
      for (Axis ax : {Axis::t, Axis::z}) CHECK(same(inv_borel(m, borel(m, s2, ax), ax).coeffs, s2.coeffs));
    }
  }
  // half-integer gamma values are irrational: exact evaluation must refuse them
  CHECK_THROWS_AS(borel(Gh, gen.series1<ExactComplex>(3)), PreconditionError);
}

TEST_CASE("Borel round trip with half-integer gamma values") {
  Gen gen(23);
  for (const auto& m : {Gh, G1 * Gh, G2 / Gh}) {
    for (int trial = 0; trial < 5; ++trial) {
      int n = gen.integer(0, 40);
      auto e = gen.series1<ExactComplex>(n);
      Series1<SqrtPiExact> s(n);
      for (int j = 0; j <= n; ++j) s[j] = SqrtPiExact(e[j]);
      auto b = borel(m, s);
      auto r = inv_borel(m, b);
      for (int j = 0; j <= n; ++j) CHECK(r[j] == s[j]);
      // the exact transform agrees with the float one
      auto f = borel(m, as_float(e));
      for (int j = 0; j <= n; ++j) CHECK(testing::rel_err(b[j].to_complex(), f[j]) <= 1e-12);
    }
  }
  // Gamma(3/2) = sqrt(pi)/2
  SqrtPiExact g = SqrtPiExact::from_moment(Gh, Rational(1));
  CHECK(g == SqrtPiExact::monomial(ExactComplex(Rational(1, 2)), 1));
  CHECK_THROWS_AS(SqrtPiExact::from_moment(MomentFunction::gamma_s(Rational(1, 3)), Rational(1)), PreconditionError);
  CHECK_THROWS_AS(SqrtPiExact(1) / (SqrtPiExact(1) + g), PreconditionError);
}

TEST_CASE("Borel round trip in float mode") {
  Gen gen(19);
  for (const auto& m : {G1, Gh, G2, G1 * Gh}) {
    for (int trial = 0; trial < 5; ++trial) {
      int n = gen.integer(0, 50);
      auto s = gen.series1<Complex>(n);
      auto r = inv_borel(m, borel(m, s));
      for (int j = 0; j <= n; ++j) CHECK(testing::rel_err(r[j], s[j]) <= 1e-12);
    }
  }
}

TEST_CASE("moment derivative and integration") {
  Series1<ExactComplex> z4(4);
  z4[4] = 1;
  auto d = moment_diff(G1, z4, 1);
  CHECK(d.truncation() == 3);
  CHECK(d[3] == ExactComplex(4));
  for (int j = 0; j < 3; ++j) CHECK(d[j].is_zero());

  Series1<ExactComplex> one(6);
  one[0] = 1;
  auto t1 = moment_antidiff(G1, one, 1);
  CHECK(t1.truncation() == 6);
  CHECK(t1[1] == ExactComplex(1));
  auto t3 = moment_antidiff(G1, one, 3);
  CHECK(t3[3] == ExactComplex(Rational(1) / 6));

  CHECK_THROWS_AS(moment_diff(G1, one, 7), PreconditionError);

  // ramified Caputo case: normalized coefficients c_j Gamma(1 + j/4) shift by one
  Gen gen(23);
  auto s = gen.series1<Complex>(12, 2);
  auto ds = moment_diff(Gh, s, 1);
  for (int j = 0; j < 12; ++j) {
    double nj = std::tgamma(1 + j / 4.0), nj1 = std::tgamma(1 + (j + 1) / 4.0);
    CHECK(testing::rel_err(ds[j] * nj, s[j + 1] * nj1) < 1e-14);
  }
}

TEST_CASE("antidiff after diff restores series with vanishing head") {
  Gen gen(29);
  for (const auto& m : {G1, G2, G1 * G1}) {
    for (int times = 1; times <= 3; ++times) {
      auto s = gen.series1<ExactComplex>(15);
      for (int j = 0; j < times; ++j) s[j] = 0;
      auto r = moment_antidiff(m, moment_diff(m, s, times), times);
      for (int j = 0; j <= r.truncation(); ++j) CHECK(r[j] == s[j]);
    }
  }
}

TEST_CASE("operator application") {
  Gen gen(31);
  auto g = gen.series2<ExactComplex>(0, 6);
  Series2<ExactComplex> u(3, 6);
  for (int i = 0; i <= 6; ++i) u(1, i) = g(0, i);
  auto dt = apply_operator(BiPoly::monomial(1, 0), G1, G1, u);
  CHECK(dt.valid_j == 2);
  for (int i = 0; i <= 6; ++i) {
    CHECK(dt(0, i) == g(0, i));
    CHECK(dt(1, i).is_zero());
  }
  auto v = gen.series2<ExactComplex>(4, 4);
  CHECK(same(apply_operator(BiPoly::constant(1), G1, G2, v).coeffs, v.coeffs));
  CHECK_THROWS_AS(apply_operator(BiPoly::monomial(5, 0), G1, G1, v), PreconditionError);
}

TEST_CASE("commutation with Borel transforms") {
  Gen gen(37);
  const std::vector<MomentFunction> ms{G1, Gh, G2, G1 * Gh, MomentFunction::single(2, 1, 3)};
  for (int trial = 0; trial < 100; ++trial) {
    const auto& m = ms[static_cast<std::size_t>(gen.integer(0, 4))];
    const auto& mp = ms[static_cast<std::size_t>(gen.integer(0, 4))];
    auto s = gen.series1<Complex>(gen.integer(3, 20));
    int times = gen.integer(1, 3);
    auto lhs = borel(mp, moment_diff(m, s, times));
    auto rhs = moment_diff(m * mp, borel(mp, s), times);
    for (int j = 0; j <= lhs.truncation(); ++j) CHECK(testing::rel_err(lhs[j], rhs[j]) <= 1e-12);
  }
  for (int trial = 0; trial < 30; ++trial) {
    BiPoly p;
    for (int k = 0; k < 4; ++k) p = p + BiPoly::monomial(gen.integer(0, 2), gen.integer(0, 3), gen.gaussian());
    if (p.terms().empty()) continue;
    const auto& m1 = ms[static_cast<std::size_t>(gen.integer(0, 4))];
    const auto& m2 = ms[static_cast<std::size_t>(gen.integer(0, 4))];
    const auto& mp = ms[static_cast<std::size_t>(gen.integer(0, 4))];
    auto u = gen.series2<Complex>(8, 8);
    auto lt = borel(mp, apply_operator(p, m1, m2, u), Axis::t);
    auto rt = apply_operator(p, m1 * mp, m2, borel(mp, u, Axis::t));
    CHECK(max_rel(lt, rt) <= 1e-12);
    auto lz = borel(mp, apply_operator(p, m1, m2, u), Axis::z);
    auto rz = apply_operator(p, m1, m2 * mp, borel(mp, u, Axis::z));
    CHECK(max_rel(lz, rz) <= 1e-12);
  }
}

TEST_CASE("operations are linear") {
  Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = gen.series2<ExactComplex>(6, 6), b = gen.series2<ExactComplex>(6, 6);
    ExactComplex c = gen.gaussian();
    auto comb = a + c * b;
    auto p = BiPoly::monomial(1, 0) - BiPoly::monomial(0, 2, gen.gaussian());
    CHECK(same(borel(G1, comb, Axis::t).coeffs, (borel(G1, a, Axis::t) + c * borel(G1, b, Axis::t)).coeffs));
    CHECK(same(moment_diff(G2, comb, Axis::z, 2).coeffs, (moment_diff(G2, a, Axis::z, 2) + c * moment_diff(G2, b, Axis::z, 2)).coeffs));
    CHECK(same(moment_antidiff(G1, comb, Axis::t, 1).coeffs, (moment_antidiff(G1, a, Axis::t, 1) + c * moment_antidiff(G1, b, Axis::t, 1)).coeffs));
    CHECK(same(apply_operator(p, G1, G1, comb).coeffs, (apply_operator(p, G1, G1, a) + c * apply_operator(p, G1, G1, b)).coeffs));
  }
}

TEST_CASE("series arithmetic") {
  Series1<ExactComplex> a(3), b(5);
  for (int j = 0; j <= 3; ++j) a[j] = 1;
  for (int j = 0; j <= 5; ++j) b[j] = j;
  auto p = a * b;
  CHECK(p.truncation() == 3);
  CHECK(p[3] == ExactComplex(0 + 1 + 2 + 3));
  CHECK((a + b).truncation() == 3);
  Series1<Complex> geo(60);
  for (int j = 0; j <= 60; ++j) geo[j] = 1.0;
  CHECK(std::abs(evaluate(geo, 0.5) - 2.0) < 1e-15);
  Series1<Complex> ram(4, 2);
  ram[1] = 1.0;
  CHECK(std::abs(evaluate(ram, 4.0) - 2.0) < 1e-15);
}

TEST_CASE("Gevrey fit examples") {
  std::vector<double> fact, ones, g2;
  for (int j = 0; j <= 40; ++j) {
    fact.push_back(std::tgamma(j + 1.0));
    ones.push_back(1.0);
    g2.push_back(std::tgamma(2 * j + 1.0));
  }
  CHECK(std::abs(gevrey_fit(rows_from(fact)).s_hat - 1) <= 0.1);
  CHECK(std::abs(gevrey_fit(rows_from(ones)).s_hat) <= 0.05);
  auto fit2 = gevrey_fit(rows_from(g2));
  CHECK(std::abs(fit2.s_hat - 2) <= 0.1);
  CHECK(fit2.j_hi == 40);
  CHECK(fit2.j_lo == 20);
  CHECK(fit2.r == 0.1);
  CHECK_THROWS_AS(gevrey_fit(Series2<Complex>(40, 3)), EvaluationError);
  CHECK_THROWS_AS(gevrey_fit(rows_from(std::vector<double>(10, 1.0))), EvaluationError);
}

TEST_CASE("Gevrey order drops by one under a Gamma_1 Borel transform") {
  std::vector<double> g2;
  for (int j = 0; j <= 40; ++j) g2.push_back(std::tgamma(2 * j + 1.0));
  auto u = rows_from(g2);
  double before = gevrey_fit(u).s_hat;
  double after = gevrey_fit(borel(G1, u, Axis::t)).s_hat;
  CHECK(std::abs(after - (before - 1)) <= 0.15);
}

TEST_CASE("iterated moment derivatives of 1/(1-z) grow with order q") {
  for (int q : {1, 2}) {
    const int rows = 30, width = 20;
    Series1<Complex> phi(q * rows + width);
    for (int i = 0; i <= phi.truncation(); ++i) phi[i] = 1.0;
    Series2<Complex> a(rows, width);
    Series1<Complex> cur = phi;
    for (int j = 0; j <= rows; ++j) {
      for (int i = 0; i <= width; ++i) a(j, i) = cur[i];
      if (j < rows) cur = moment_diff(G1, cur, q);
    }
    CHECK(std::abs(gevrey_fit(a).s_hat - q) <= 0.2);
  }
}

TEST_CASE("fractional integral quadrature") {
  Series1<Complex> one(0);
  one[0] = 1.0;
  CHECK(std::abs(frac_integral_quadrature(one, 1, 1, 0.5) - 0.5) < 1e-10);
  CHECK(std::abs(frac_integral_quadrature(one, 1, 2, 1.0) - 0.5) < 1e-10);
  Series1<Complex> x(1);
  x[1] = 1.0;
  Series1<Complex> padded(3);
  for (int j = 0; j <= 1; ++j) padded[j] = x[j];
  auto integ = moment_antidiff(Gh, padded, 2);
  CHECK(testing::rel_err(frac_integral_quadrature(x, Rational(1) / 2, 2, 0.8), evaluate(integ, 0.8)) < 1e-6);
}

TEST_CASE("csv output") {
  Series2<ExactComplex> s(1, 1);
  s(0, 1) = ExactComplex(Rational(1) / 2, Rational(-3));
  s.valid_j = 0;
  std::ostringstream os;
  write_csv(os, s);
  CHECK(os.str() == "j,i,re,im\n0,0,0,0\n0,1,0.5,-3\n");
}
