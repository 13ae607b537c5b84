#include "support.hpp"

#include "mpde/char_roots.hpp"
#include "mpde/errors.hpp"
#include "mpde/solver.hpp"

#include <doctest.h>

using namespace mpde;
using testing::Gen;

namespace {

const MomentFunction G1 = MomentFunction::gamma_s(1);
const MomentFunction G2 = MomentFunction::gamma_s(2);

template <class Scalar>
CauchyProblem<Scalar> problem(const BiPoly& p, Series2<Scalar> rhs, int n1, int n2,
                              const MomentFunction& m1 = G1, const MomentFunction& m2 = G1,
                              SolveMode mode = SolveMode::direct, RhsRole role = RhsRole::g) {
  return CauchyProblem<Scalar>{CharPoly(p), m1, m2, std::move(rhs), role, Rational(0), Rational(0), n1, n2, mode};
}

template <class Scalar>
CauchyProblem<Scalar> geometric_problem(const BiPoly& p, int n1, int n2, const MomentFunction& m1 = G1,
                                        const MomentFunction& m2 = G1, SolveMode mode = SolveMode::direct) {
  CharPoly cp(p);
  auto [rj, ri] = required_rhs_window(cp, n1, n2);
  return problem<Scalar>(p, testing::geometric_in_z<Scalar>(std::max(rj, n1), ri), n1, n2, m1, m2, mode);
}

BiPoly heat() { return testing::linear_factor(1, 2); }
BiPoly transport() { return testing::linear_factor(1, 1); }
BiPoly twofactor() { return testing::linear_factor(1, 2) * testing::linear_factor(1, 3); }

/// Solve with margins so that the residual window covers (n1, n2).
template <class Scalar>
ResidualResult checked_residual(const BiPoly& p, int n1, int n2, const MomentFunction& m1 = G1,
                                const MomentFunction& m2 = G1, SolveMode mode = SolveMode::direct) {
  CharPoly cp(p);
  auto prob = geometric_problem<Scalar>(p, n1 + cp.n(), n2 + max_zeta_power(cp), m1, m2, mode);
  auto res = residual(prob, formal_solve(prob));
  CHECK(res.window_j >= n1);
  CHECK(res.window_i >= n2);
  return res;
}

}  // namespace

TEST_CASE("heat equation matches the closed form") {
  auto u = formal_solve(geometric_problem<ExactComplex>(heat(), 12, 15));
  CHECK(u.n1() == 12);
  CHECK(u.n2() == 15);
  for (int j = 0; j <= 12; ++j)
    for (int i = 0; i <= 15; ++i) CHECK(u(j, i) == ExactComplex(testing::heat_coefficient(j, i)));
  CHECK(u(1, 0) == ExactComplex(1));
  CHECK(u(2, 0) == ExactComplex(1));
  CHECK(u(3, 0) == ExactComplex(4));
  CHECK(u(4, 0) == ExactComplex(30));

  auto uf = formal_solve(geometric_problem<Complex>(heat(), 12, 15));
  for (int j = 0; j <= 12; ++j)
    for (int i = 0; i <= 15; ++i)
      CHECK(testing::rel_err(uf(j, i), to_double(testing::heat_coefficient(j, i))) < 1e-13);
}

TEST_CASE("transport with mixed moments matches the closed form") {
  auto u = formal_solve(geometric_problem<ExactComplex>(transport(), 10, 10));
  for (int j = 0; j <= 10; ++j)
    for (int i = 0; i <= 10; ++i) CHECK(u(j, i) == ExactComplex(testing::transport_coefficient(j, i)));
  // m1 = Gamma_1, m2 = Gamma_2: u_{j,i} = (2(i+j-1))! / (j! (2i)!)
  auto v = formal_solve(geometric_problem<ExactComplex>(transport(), 8, 8, G1, G2));
  for (int j = 1; j <= 8; ++j)
    for (int i = 0; i <= 8; ++i)
      CHECK(v(j, i) == ExactComplex(testing::factorial(2 * (i + j - 1)) /
                                    (testing::factorial(j) * testing::factorial(2 * i))));
}

TEST_CASE("zero right-hand side gives zero solution") {
  auto prob = geometric_problem<ExactComplex>(twofactor(), 6, 6);
  prob.rhs.coeffs.setZero();
  auto u = formal_solve(prob);
  for (int j = 0; j <= 6; ++j)
    for (int i = 0; i <= 6; ++i) CHECK(u(j, i).is_zero());
}

TEST_CASE("initial data vanish") {
  auto u = formal_solve(geometric_problem<ExactComplex>(twofactor(), 6, 6));
  for (int i = 0; i <= 6; ++i) {
    CHECK(u(0, i).is_zero());
    CHECK(u(1, i).is_zero());
  }
}

TEST_CASE("exact residual vanishes on the shipped examples") {
  for (const BiPoly& p : {heat(), transport(), twofactor()}) {
    auto res = checked_residual<ExactComplex>(p, 10, 20);
    CHECK(res.exact_zero);
    CHECK(res.max_abs == 0.0);
  }
}

TEST_CASE("exact residual on random operators with constant top coefficient") {
  Gen gen(79);
  for (int trial = 0; trial < 25; ++trial) {
    int n = gen.integer(1, 3);
    BiPoly p = BiPoly::monomial(n, 0, gen.nonzero_rational());
    for (int k = 0; k < 4; ++k) p = p + BiPoly::monomial(gen.integer(0, n - 1), gen.integer(0, 3), gen.gaussian());
    CharPoly cp(p);
    int n1 = 6, n2 = 6;
    auto [rj, ri] = required_rhs_window(cp, n1 + n, n2 + max_zeta_power(cp));
    Series2<ExactComplex> g(std::max(rj, n1 + n), ri);
    // polynomial rhs
    for (int k = 0; k < 5; ++k) g(gen.integer(0, 2), gen.integer(0, 4)) = gen.gaussian();
    const MomentFunction& m2 = gen.coin() ? G1 : G2;
    auto prob = problem<ExactComplex>(p, g, n1 + n, n2 + max_zeta_power(cp), G1, m2);
    auto res = residual(prob, formal_solve(prob));
    CHECK(res.exact_zero);
  }
}

TEST_CASE("float residual is small relative to the coefficients") {
  Gen gen(83);
  for (int trial = 0; trial < 20; ++trial) {
    int n = gen.integer(1, 3);
    BiPoly p = BiPoly::monomial(n, 0, ExactComplex(gen.integer(1, 3)));
    for (int k = 0; k < 4; ++k) p = p + BiPoly::monomial(gen.integer(0, n - 1), gen.integer(0, 2), gen.gaussian());
    CharPoly cp(p);
    int n1 = 8 + n, n2 = 8 + max_zeta_power(cp);
    auto [rj, ri] = required_rhs_window(cp, n1, n2);
    Series2<Complex> g(std::max(rj, n1), ri);
    for (int k = 0; k < 5; ++k) g(gen.integer(0, 2), gen.integer(0, 4)) = gen.complex();
    auto prob = problem<Complex>(p, g, n1, n2);
    auto u = formal_solve(prob);
    auto res = residual(prob, u);
    double biggest = u.coeffs.cwiseAbs().maxCoeff();
    CHECK(res.max_abs < 1e-10 * std::max(biggest, 1.0));
  }
}

TEST_CASE("residual detects a perturbed coefficient") {
  auto prob = geometric_problem<ExactComplex>(heat(), 7, 8);
  auto u = formal_solve(prob);
  CHECK(residual(prob, u).exact_zero);
  u(3, 2) += ExactComplex(Rational(1) / 1000);
  auto res = residual(prob, u);
  CHECK_FALSE(res.exact_zero);
  CHECK(res.max_abs > 0);
}

TEST_CASE("solution is linear in the right-hand side") {
  Gen gen(89);
  CharPoly cp(twofactor());
  auto [rj, ri] = required_rhs_window(cp, 6, 6);
  for (int trial = 0; trial < 5; ++trial) {
    auto g1 = gen.series2<ExactComplex>(std::max(rj, 6), ri), g2 = gen.series2<ExactComplex>(std::max(rj, 6), ri);
    ExactComplex c = gen.gaussian();
    auto u1 = formal_solve(problem<ExactComplex>(twofactor(), g1, 6, 6));
    auto u2 = formal_solve(problem<ExactComplex>(twofactor(), g2, 6, 6));
    auto u = formal_solve(problem<ExactComplex>(twofactor(), g1 + c * g2, 6, 6));
    auto combo = u1 + c * u2;
    CHECK(static_cast<bool>(u.coeffs == combo.coeffs));
  }
}

TEST_CASE("solution does not depend on the order terms were entered") {
  Gen gen(97);
  std::vector<std::tuple<int, int, ExactComplex>> terms{{2, 0, ExactComplex(1)},
                                                        {1, 3, ExactComplex(-2)},
                                                        {0, 1, ExactComplex(Rational(1), Rational(1))},
                                                        {1, 0, ExactComplex(5)}};
  Series2<ExactComplex>::Matrix first;
  for (int perm = 0; perm < 6; ++perm) {
    std::shuffle(terms.begin(), terms.end(), gen.engine());
    BiPoly p;
    for (auto& [a, b, c] : terms) p = p + BiPoly::monomial(a, b, c);
    auto u = formal_solve(geometric_problem<ExactComplex>(p, 6, 6));
    if (perm == 0)
      first = u.coeffs;
    else
      CHECK(static_cast<bool>(u.coeffs == first));
  }
}

TEST_CASE("g from f") {
  Gen gen(101);
  auto f = gen.series2<ExactComplex>(3, 8);
  CHECK(static_cast<bool>(g_from_f(ExactPoly({ExactComplex(1)}), G1, f).coeffs == f.coeffs));

  Series2<ExactComplex> one(0, 4);
  one(0, 0) = 1;
  auto g = g_from_f(ExactPoly({ExactComplex(0), ExactComplex(1)}), G1, one);
  CHECK(g(0, 1) == ExactComplex(1));
  CHECK(g(0, 0).is_zero());
  for (int i = 2; i <= 4; ++i) CHECK(g(0, i).is_zero());

  Series2<Complex> z2(0, 12);
  z2(0, 2) = 1.0;
  ExactPoly p0({ExactComplex(1), ExactComplex(0), ExactComplex(1)});
  auto gz = g_from_f(p0, G1, z2);
  auto back = apply_operator(zeta_operator(p0), G1, G1, gz);
  for (int i = 0; i <= back.valid_i; ++i) CHECK(std::abs(back(0, i) - z2(0, i)) < 1e-12);

  auto fx = gen.series2<ExactComplex>(2, 10);
  auto gx = g_from_f(p0, G2, fx);
  auto bx = apply_operator(zeta_operator(p0), G1, G2, gx);
  for (int j = 0; j <= bx.valid_j; ++j)
    for (int i = 0; i <= bx.valid_i; ++i) CHECK(bx(j, i) == fx(j, i));
}

TEST_CASE("f as right-hand side") {
  auto gprob = geometric_problem<ExactComplex>(heat(), 6, 6);
  auto fprob = gprob;
  fprob.role = RhsRole::f;
  CHECK(static_cast<bool>(formal_solve(gprob).coeffs == formal_solve(fprob).coeffs));
}

TEST_CASE("pseudo mode for a non-constant top coefficient") {
  // (zeta^2 + 1)(lambda - zeta)
  BiPoly p = (BiPoly::monomial(0, 2) + BiPoly::constant(1)) * transport();
  auto direct = geometric_problem<Complex>(p, 6, 6);
  CHECK_THROWS_AS(formal_solve(direct), PreconditionError);
  auto res = checked_residual<Complex>(p, 12, 12, G1, G1, SolveMode::pseudo);
  CHECK(res.relative() < 1e-8);
  auto exact = checked_residual<ExactComplex>(p, 8, 8, G1, G1, SolveMode::pseudo);
  CHECK(exact.relative() < 1e-8);

  // pseudo mode reduces to the direct recursion when the top coefficient is constant
  auto a = formal_solve(geometric_problem<ExactComplex>(twofactor(), 6, 6));
  auto b = formal_solve(geometric_problem<ExactComplex>(twofactor(), 6, 6, G1, G1, SolveMode::pseudo));
  CHECK(static_cast<bool>(a.coeffs == b.coeffs));
}

TEST_CASE("expansion at infinity") {
  // zeta / (zeta^2 + 1) = w - w^3 + w^5 - ...
  auto q = detail::expand_at_infinity(ExactPoly({ExactComplex(0), ExactComplex(1)}),
                                      ExactPoly({ExactComplex(1), ExactComplex(0), ExactComplex(1)}), 6);
  CHECK(q.at(-1) == ExactComplex(1));
  CHECK(q.at(-3) == ExactComplex(-1));
  CHECK(q.at(-5) == ExactComplex(1));
  CHECK(q.count(-2) == 0);
  // (zeta^3 + 2) / zeta = zeta^2 + 2 w
  auto r = detail::expand_at_infinity(ExactPoly({ExactComplex(2), ExactComplex(0), ExactComplex(0), ExactComplex(1)}),
                                      ExactPoly({ExactComplex(0), ExactComplex(1)}), 4);
  CHECK(r.at(2) == ExactComplex(1));
  CHECK(r.at(-1) == ExactComplex(2));
  CHECK(r.size() == 2);
}

TEST_CASE("insufficient right-hand side data is rejected") {
  auto prob = problem<ExactComplex>(heat(), testing::geometric_in_z<ExactComplex>(5, 5), 5, 5);
  CHECK_THROWS_AS(formal_solve(prob), PreconditionError);
}

TEST_CASE("required window grows with the zeta degree") {
  CharPoly cp(heat());
  CHECK(internal_n2(cp, 20, 60) == 100);
  auto w = required_rhs_window(cp, 20, 60);
  CHECK(w.first == 19);
  CHECK(w.second == 100);
}

TEST_CASE("theoretical Gevrey orders") {
  auto orders = [](const BiPoly& p, Rational t1) {
    CharPoly cp(p);
    return theoretical_orders(branches_at_infinity(cp), cp.zero_root_multiplicity(), 1, 1, t1, 0);
  };
  auto h = orders(heat(), 0);
  CHECK(h.t_order == 1);
  CHECK(h.z_order == 0);
  REQUIRE(h.per_branch.size() == 1);
  CHECK(h.per_branch[0].order == 1);
  CHECK(orders(transport(), 0).t_order == 0);
  CHECK(orders(heat(), 2).t_order == 2);
  auto two = orders(twofactor(), 0);
  CHECK(two.t_order == 2);
  REQUIRE(two.per_branch.size() == 2);
  CHECK(two.per_branch[0].order == 2);
  CHECK(two.per_branch[1].order == 1);
  // negative pole order is clipped at zero
  CHECK(orders(BiPoly::monomial(1, 1) - BiPoly::constant(1), 0).t_order == 0);
}

TEST_CASE("transport solution is convergent") {
  auto u = formal_solve(geometric_problem<Complex>(transport(), 40, 10));
  CHECK(std::abs(gevrey_fit(u).s_hat) < 0.15);
}
