#pragma once

#include "mpde/moment.hpp"
#include "mpde/polynomial.hpp"
#include "mpde/rational.hpp"
#include "mpde/series.hpp"
#include "mpde/solver.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace mpde {

struct CoeffEntry {
  int j;
  int i;
  ExactComplex value;
};

/// Right-hand side data: explicit coefficients, or num(t,z)/den(t,z) with
/// den(0,0) != 0 expanded as a power series (lambda slot = t power, zeta slot = z power).
struct RhsSpec {
  enum class Kind { coeffs, rational } kind = Kind::coeffs;
  std::vector<CoeffEntry> coeffs;
  BiPoly num;
  BiPoly den;
};

struct ProblemFile {
  std::string operator_text;
  BiPoly op;
  std::string m1_text = "Gamma(1)";
  std::string m2_text = "Gamma(1)";
  MomentFunction m1;
  MomentFunction m2;
  RhsSpec rhs;
  RhsRole role = RhsRole::g;
  Rational t1{0};
  Rational t2{0};
  int n1 = 20;
  int n2 = 20;
  std::vector<double> directions{0.0};
  SolveMode mode = SolveMode::direct;
  bool exact = false;
};

/// Parses the JSON problem description; unknown keys and malformed fields throw ParseError.
ProblemFile parse_problem(const std::string& json_text);
ProblemFile load_problem(const std::string& path);

template <class Scalar>
Series2<Scalar> expand_rhs(const RhsSpec& spec, int n1, int n2) {
  Series2<Scalar> out(n1, n2);
  if (spec.kind == RhsSpec::Kind::coeffs) {
    for (const auto& e : spec.coeffs)
      if (e.j >= 0 && e.j <= n1 && e.i >= 0 && e.i <= n2) out(e.j, e.i) += ScalarTraits<Scalar>::from_exact(e.value);
    return out;
  }
  const ExactComplex& d00 = spec.den.coeff(0, 0);
  if (d00.is_zero()) throw PreconditionError("rational right-hand side needs a denominator with nonzero constant term");
  Scalar inv = Scalar(1) / ScalarTraits<Scalar>::from_exact(d00);
  struct Term {
    int a, b;
    Scalar c;
  };
  std::vector<Term> den;
  for (auto& [k, v] : spec.den.terms())
    if (k != BiPoly::Key{0, 0}) den.push_back({k.first, k.second, ScalarTraits<Scalar>::from_exact(v)});
  for (int j = 0; j <= n1; ++j)
    for (int i = 0; i <= n2; ++i) {
      Scalar acc = ScalarTraits<Scalar>::from_exact(spec.num.coeff(j, i));
      for (auto& t : den)
        if (t.a <= j && t.b <= i) acc -= t.c * out(j - t.a, i - t.b);
      out(j, i) = acc * inv;
    }
  return out;
}

/// Cauchy problem for the output window (n1_out, n2_out), right-hand side
/// expanded to the window the solver needs.
template <class Scalar>
CauchyProblem<Scalar> make_problem(const ProblemFile& pf, int n1_out, int n2_out) {
  CharPoly p(pf.op);
  auto [rj, ri] = required_rhs_window(p, n1_out, n2_out);
  return CauchyProblem<Scalar>{p,  pf.m1,  pf.m2,  expand_rhs<Scalar>(pf.rhs, std::max(rj, n1_out), ri),
                               pf.role, pf.t1, pf.t2, n1_out, n2_out, pf.mode};
}

template <class Scalar>
struct SolveOutcome {
  Series2<Scalar> u;
  ResidualResult residual;
};

/// Solves on an enlarged grid so that the operator residual covers the whole
/// requested (n1, n2) window, then trims the solution to that window.
template <class Scalar>
SolveOutcome<Scalar> solve_checked(const ProblemFile& pf, int n1, int n2) {
  CharPoly p(pf.op);
  auto prob = make_problem<Scalar>(pf, n1 + p.n(), n2 + max_zeta_power(p));
  Series2<Scalar> big = formal_solve(prob);
  ResidualResult res = residual(prob, big);
  Series2<Scalar> u(typename Series2<Scalar>::Matrix(big.coeffs.topLeftCorner(n1 + 1, n2 + 1)));
  return {std::move(u), res};
}

}  // namespace mpde
