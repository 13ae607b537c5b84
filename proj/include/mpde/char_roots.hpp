#pragma once

#include "mpde/polynomial.hpp"
#include "mpde/rational.hpp"
#include "mpde/scalar.hpp"

#include <optional>
#include <vector>

namespace mpde {

/// Characteristic polynomial P(lambda, zeta) = sum_i P_i(zeta) lambda^i of
/// lambda-degree n >= 1.
class CharPoly {
 public:
  explicit CharPoly(BiPoly p);

  const BiPoly& poly() const { return p_; }
  int n() const { return n_; }
  /// Coefficient of lambda^i as a polynomial in zeta.
  const ExactPoly& coefficient(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  /// Multiplicity of the root lambda = 0 (lowest lambda power present).
  int zero_root_multiplicity() const;
  /// Evaluates P_i(zeta0) for i = 0..n.
  Eigen::VectorXcd lambda_coefficients_at(Complex zeta) const;

 private:
  BiPoly p_;
  int n_;
  std::vector<ExactPoly> coeffs_;
};

struct LeadingTerm {
  Complex value;
  int mult = 1;
  /// Set when the root was recognised as a Gaussian rational and verified exactly.
  std::optional<ExactComplex> exact;
  /// arg(value)/pi in [0, 2) when known exactly (real or purely imaginary roots).
  std::optional<Rational> arg_over_pi;
};

/// One class of roots lambda(zeta) ~ lambda0 zeta^q at zeta = infinity.
struct CharBranch {
  Rational q;
  int kappa = 1;  // denominator of q
  std::vector<LeadingTerm> leading;
  bool resolved = true;  // false when some leading term has multiplicity > 1

  int total_multiplicity() const;
};

/// Branch classes from the upper convex hull of (i, deg P_i), ordered by
/// decreasing q. Roots lambda = 0 are not part of any branch; see
/// CharPoly::zero_root_multiplicity.
std::vector<CharBranch> branches_at_infinity(const CharPoly& p);

/// Common ramification: lcm of the branch kappas.
int common_kappa(const std::vector<CharBranch>& branches);

struct BranchDeviation {
  double radius;
  std::vector<double> max_rel_deviation;  // one per branch, 0 if no root was assigned
};

struct ValidationReport {
  std::vector<BranchDeviation> per_radius;
  std::vector<bool> monotone;  // per branch, over increasing radii
  bool consistent = true;      // every root assignable with deviation <= 0.5
};

/// Solves P(lambda, R e^{i angle}) = 0 numerically for each radius and
/// attributes each nonzero root to the leading term minimising
/// |lambda/zeta0^q - lambda0| / |lambda0|.
ValidationReport validate_numeric(const CharPoly& p, const std::vector<CharBranch>& branches,
                                  const std::vector<double>& radii, double ray_angle = 0.0);

}  // namespace mpde
