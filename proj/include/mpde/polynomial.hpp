#pragma once

#include "mpde/scalar.hpp"

#include <Eigen/Core>

#include <map>
#include <utility>
#include <vector>

namespace mpde {

/// Dense univariate polynomial over the Gaussian rationals, ascending powers.
/// Trailing zero coefficients are trimmed; the zero polynomial is empty.
class ExactPoly {
 public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<ExactComplex> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<ExactComplex>& coeffs() const { return c_; }
  const ExactComplex& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  ExactComplex coeff(int i) const;
  const ExactComplex& leading() const { return c_.back(); }

  ExactPoly derivative() const;
  ExactPoly monic() const;
  Eigen::VectorXcd to_complex() const;

  friend bool operator==(const ExactPoly&, const ExactPoly&) = default;

 private:
  void trim();
  std::vector<ExactComplex> c_;
};

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);

/// Euclidean division a = q*b + r with deg r < deg b.
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b);

/// Monic greatest common divisor.
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);

/// Yun's square-free decomposition: returns (multiplicity, factor) pairs with
/// square-free, pairwise coprime, non-constant factors whose product (with
/// multiplicities) equals the monic input.
std::vector<std::pair<int, ExactPoly>> squarefree_decomposition(const ExactPoly& p);

/// Roots of a polynomial with complex coefficients (ascending order) from
/// the eigenvalues of its companion matrix, polished with Newton steps.
/// Leading zero coefficients are ignored.
std::vector<Complex> polynomial_roots(const Eigen::VectorXcd& coeffs);

/// Simultaneous Aberth-Ehrlich iteration started from circles whose radii come
/// from the Newton polygon of log|coefficients|. Keeps relative accuracy when
/// root magnitudes span many orders (unlike an unbalanced companion matrix).
std::vector<Complex> aberth_roots(const Eigen::VectorXcd& coeffs, int max_iterations = 1000);

Complex horner(const Eigen::VectorXcd& coeffs, Complex x);

/// Sparse bivariate polynomial sum p_{ab} lambda^a zeta^b with exact
/// coefficients; zero coefficients are never stored.
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (power of lambda, power of zeta)
  using Table = std::map<Key, ExactComplex>;

  BiPoly() = default;
  explicit BiPoly(Table terms);
  static BiPoly constant(const ExactComplex& c);
  static BiPoly monomial(int a, int b, const ExactComplex& c = ExactComplex(1));

  const Table& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExactComplex coeff(int a, int b) const;

  int lambda_degree() const;  // -1 for zero
  int zeta_degree() const;    // max b over the support
  /// Coefficient polynomial of lambda^a as a polynomial in zeta.
  ExactPoly lambda_coefficient(int a) const;
  /// Substitutes zeta -> c * zeta.
  BiPoly scale_zeta(const ExactComplex& c) const;

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

 private:
  void add_term(int a, int b, const ExactComplex& c);
  Table terms_;
  friend BiPoly operator+(const BiPoly&, const BiPoly&);
  friend BiPoly operator*(const BiPoly&, const BiPoly&);
};

BiPoly operator+(const BiPoly& p, const BiPoly& q);
BiPoly operator-(const BiPoly& p);
BiPoly operator-(const BiPoly& p, const BiPoly& q);
BiPoly operator*(const BiPoly& p, const BiPoly& q);
BiPoly pow(const BiPoly& p, unsigned k);

}  // namespace mpde
