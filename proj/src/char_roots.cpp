#include "mpde/char_roots.hpp"

#include "mpde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mpde {

CharPoly::CharPoly(BiPoly p) : p_(std::move(p)), n_(p_.lambda_degree()) {
  if (p_.is_zero()) throw PreconditionError("characteristic polynomial is identically zero");
  if (n_ < 1) throw PreconditionError("operator has lambda-degree 0 (no time derivative)");
  for (auto& [k, v] : p_.terms())
    if (k.first < 0 || k.second < 0) throw PreconditionError("negative exponent in operator");
  for (int i = 0; i <= n_; ++i) coeffs_.push_back(p_.lambda_coefficient(i));
}

int CharPoly::zero_root_multiplicity() const {
  int i = 0;
  while (coeffs_[static_cast<std::size_t>(i)].is_zero()) ++i;
  return i;
}

Eigen::VectorXcd CharPoly::lambda_coefficients_at(Complex zeta) const {
  Eigen::VectorXcd out(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    out[i] = c.is_zero() ? Complex(0.0, 0.0) : horner(c.to_complex(), zeta);
  }
  return out;
}

int CharBranch::total_multiplicity() const {
  int m = 0;
  for (auto& l : leading) m += l.mult;
  return m;
}

namespace {

// Continued-fraction approximation with bounded denominator.
std::optional<Rational> best_rational(double x, long max_den) {
  if (!std::isfinite(x) || std::abs(x) > 1e9) return std::nullopt;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return std::nullopt;
  return Rational(h1) / k1;
}

ExactComplex evaluate_exact(const ExactPoly& p, const ExactComplex& x) {
  ExactComplex acc(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

constexpr long kMaxDenominator = 100000;
constexpr double kAxisTolerance = 1e-12;

LeadingTerm make_leading_term(const ExactPoly& factor, Complex root, int mult) {
  LeadingTerm t;
  t.mult = mult;
  t.value = root;
  auto re = best_rational(root.real(), kMaxDenominator);
  auto im = best_rational(root.imag(), kMaxDenominator);
  if (std::abs(root.imag()) <= kAxisTolerance * std::abs(root)) im = Rational(0);
  if (std::abs(root.real()) <= kAxisTolerance * std::abs(root)) re = Rational(0);
  if (re && im) {
    ExactComplex candidate(*re, *im);
    if (evaluate_exact(factor, candidate).is_zero()) {
      t.exact = candidate;
      t.value = candidate.to_complex();
    }
  }
  // Snap numerically real or imaginary roots onto the axis.
  if (std::abs(t.value.imag()) <= kAxisTolerance * std::abs(t.value)) t.value = {t.value.real(), 0.0};
  if (std::abs(t.value.real()) <= kAxisTolerance * std::abs(t.value)) t.value = {0.0, t.value.imag()};
  if (t.value.imag() == 0.0)
    t.arg_over_pi = t.value.real() > 0 ? Rational(0) : Rational(1);
  else if (t.value.real() == 0.0)
    t.arg_over_pi = t.value.imag() > 0 ? Rational(1, 2) : Rational(3, 2);
  return t;
}

double arg_0_2pi(Complex z) {
  double a = std::arg(z);
  return a < 0 ? a + 2 * M_PI : a;
}

}  // namespace

std::vector<CharBranch> branches_at_infinity(const CharPoly& p) {
  struct Pt {
    long i, d;
  };
  std::vector<Pt> pts;
  for (int i = 0; i <= p.n(); ++i)
    if (!p.coefficient(i).is_zero()) pts.push_back({i, p.coefficient(i).degree()});

  std::vector<Pt> hull;
  for (auto& c : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull.back();
      long cross = (b.i - a.i) * (c.d - b.d) - (b.d - a.d) * (c.i - b.i);
      if (cross < 0) break;
      hull.pop_back();
    }
    hull.push_back(c);
  }

  std::vector<CharBranch> branches;
  for (std::size_t e = 1; e < hull.size(); ++e) {
    const Pt& lo = hull[e - 1];
    const Pt& hi = hull[e];
    CharBranch br;
    br.q = Rational(lo.d - hi.d) / (hi.i - lo.i);
    br.kappa = static_cast<int>(to_long(denominator_of(br.q)));

    std::vector<ExactComplex> edge(static_cast<std::size_t>(hi.i - lo.i + 1));
    for (long i = lo.i; i <= hi.i; ++i) {
      const auto& c = p.coefficient(static_cast<int>(i));
      if (c.is_zero()) continue;
      // on the edge iff d_i matches the line through lo and hi
      if ((c.degree() - lo.d) * (hi.i - lo.i) == (hi.d - lo.d) * (i - lo.i))
        edge[static_cast<std::size_t>(i - lo.i)] = c.leading();
    }
    ExactPoly e_poly(std::move(edge));
    for (auto& [mult, factor] : squarefree_decomposition(e_poly)) {
      for (Complex r : polynomial_roots(factor.to_complex())) {
        br.leading.push_back(make_leading_term(factor, r, mult));
        if (mult > 1) br.resolved = false;
      }
    }
    std::sort(br.leading.begin(), br.leading.end(), [](const LeadingTerm& a, const LeadingTerm& b) {
      double aa = a.arg_over_pi ? to_double(*a.arg_over_pi) * M_PI : arg_0_2pi(a.value);
      double ab = b.arg_over_pi ? to_double(*b.arg_over_pi) * M_PI : arg_0_2pi(b.value);
      if (std::abs(aa - ab) > 1e-12) return aa < ab;
      return std::abs(a.value) < std::abs(b.value);
    });
    branches.push_back(std::move(br));
  }
  std::reverse(branches.begin(), branches.end());
  return branches;
}

int common_kappa(const std::vector<CharBranch>& branches) {
  int k = 1;
  for (auto& b : branches) k = std::lcm(k, b.kappa);
  return k;
}

ValidationReport validate_numeric(const CharPoly& p, const std::vector<CharBranch>& branches,
                                  const std::vector<double>& radii, double ray_angle) {
  ValidationReport report;
  int zeros = p.zero_root_multiplicity();
  std::vector<double> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  for (double radius : sorted) {
    if (!(radius > 0)) throw DomainError("validation radii must be positive");
    Complex zeta = std::polar(radius, ray_angle);
    std::vector<Complex> roots = aberth_roots(p.lambda_coefficients_at(zeta));
    BranchDeviation dev{radius, std::vector<double>(branches.size(), 0.0)};
    // aberth_roots lists exact zero roots first
    for (std::size_t r = static_cast<std::size_t>(zeros); r < roots.size(); ++r) {
      double best = INFINITY;
      std::size_t best_branch = 0;
      for (std::size_t b = 0; b < branches.size(); ++b) {
        double q = to_double(branches[b].q);
        Complex scale = std::polar(std::pow(radius, q), q * ray_angle);
        for (auto& lt : branches[b].leading) {
          double d = std::abs(roots[r] / scale - lt.value) / std::abs(lt.value);
          if (d < best) {
            best = d;
            best_branch = b;
          }
        }
      }
      if (best > 0.5) report.consistent = false;
      if (!branches.empty()) dev.max_rel_deviation[best_branch] = std::max(dev.max_rel_deviation[best_branch], best);
    }
    report.per_radius.push_back(std::move(dev));
  }
  report.monotone.assign(branches.size(), true);
  for (std::size_t k = 1; k < report.per_radius.size(); ++k)
    for (std::size_t b = 0; b < branches.size(); ++b) {
      double prev = report.per_radius[k - 1].max_rel_deviation[b];
      double cur = report.per_radius[k].max_rel_deviation[b];
      if (cur > std::max(1.1 * prev, 1e-12)) report.monotone[b] = false;
    }
  return report;
}

}  // namespace mpde
