#include "mpde/polynomial.hpp"

#include "mpde/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpde {

ExactPoly::ExactPoly(std::vector<ExactComplex> coeffs) : c_(std::move(coeffs)) { trim(); }

void ExactPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ExactComplex ExactPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return ExactComplex(0);
  return c_[static_cast<std::size_t>(i)];
}

ExactPoly ExactPoly::derivative() const {
  std::vector<ExactComplex> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[static_cast<std::size_t>(i)] * ExactComplex(i));
  return ExactPoly(std::move(d));
}

ExactPoly ExactPoly::monic() const {
  if (is_zero()) return *this;
  ExactComplex lc = leading();
  std::vector<ExactComplex> m(c_);
  for (auto& x : m) x /= lc;
  return ExactPoly(std::move(m));
}

Eigen::VectorXcd ExactPoly::to_complex() const {
  Eigen::VectorXcd v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[static_cast<Eigen::Index>(i)] = c_[i].to_complex();
  return v;
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  std::vector<ExactComplex> r(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (int i = 0; i <= a.degree(); ++i) r[static_cast<std::size_t>(i)] += a[i];
  for (int i = 0; i <= b.degree(); ++i) r[static_cast<std::size_t>(i)] += b[i];
  return ExactPoly(std::move(r));
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
  std::vector<ExactComplex> r(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (int i = 0; i <= a.degree(); ++i) r[static_cast<std::size_t>(i)] += a[i];
  for (int i = 0; i <= b.degree(); ++i) r[static_cast<std::size_t>(i)] -= b[i];
  return ExactPoly(std::move(r));
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ExactComplex> r(static_cast<std::size_t>(a.degree() + b.degree() + 1));
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  return ExactPoly(std::move(r));
}

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<ExactComplex> rem(a.coeffs());
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {ExactPoly(), a};
  std::vector<ExactComplex> q(static_cast<std::size_t>(dq + 1));
  for (int k = dq; k >= 0; --k) {
    ExactComplex f = rem[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = f;
    if (f.is_zero()) continue;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= f * b[i];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {ExactPoly(std::move(q)), ExactPoly(std::move(rem))};
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly x = a, y = b;
  while (!y.is_zero()) {
    ExactPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<int, ExactPoly>> squarefree_decomposition(const ExactPoly& p) {
  if (p.degree() < 1) return {};
  ExactPoly f = p.monic();
  ExactPoly fp = f.derivative();
  ExactPoly a = gcd(f, fp);
  ExactPoly b = divmod(f, a).first;
  ExactPoly c = divmod(fp, a).first;
  ExactPoly d = c - b.derivative();
  std::vector<std::pair<int, ExactPoly>> out;
  for (int i = 1; b.degree() >= 1; ++i) {
    ExactPoly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(i, g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

Complex horner(const Eigen::VectorXcd& coeffs, Complex x) {
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<Complex> polynomial_roots(const Eigen::VectorXcd& coeffs) {
  Eigen::Index n = coeffs.size() - 1;
  while (n >= 0 && coeffs[n] == Complex(0.0, 0.0)) --n;
  if (n < 0) throw DomainError("roots of the zero polynomial");
  if (n == 0) return {};
  Eigen::VectorXcd c = coeffs.head(n + 1) / coeffs[n];
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  if (es.info() != Eigen::Success) throw EvaluationError("companion eigenvalue iteration did not converge");

  Eigen::VectorXcd dc(n);
  for (Eigen::Index i = 1; i <= n; ++i) dc[i - 1] = c[i] * static_cast<double>(i);
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    Complex z = es.eigenvalues()[r];
    for (int it = 0; it < 4; ++it) {
      Complex fz = horner(c, z);
      Complex dz = horner(dc, z);
      if (dz == Complex(0.0, 0.0)) break;
      Complex step = fz / dz;
      // Only accept steps that reduce the residual; clustered roots make Newton erratic.
      Complex z2 = z - step;
      if (std::abs(horner(c, z2)) >= std::abs(fz)) break;
      z = z2;
    }
    roots.push_back(z);
  }
  return roots;
}

BiPoly::BiPoly(Table terms) {
  for (auto& [k, v] : terms)
    if (!v.is_zero()) terms_.emplace(k, v);
}

BiPoly BiPoly::constant(const ExactComplex& c) { return monomial(0, 0, c); }

BiPoly BiPoly::monomial(int a, int b, const ExactComplex& c) {
  BiPoly p;
  p.add_term(a, b, c);
  return p;
}

void BiPoly::add_term(int a, int b, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactComplex BiPoly::coeff(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? ExactComplex(0) : it->second;
}

int BiPoly::lambda_degree() const {
  int d = -1;
  for (auto& [k, v] : terms_) d = std::max(d, k.first);
  return d;
}

int BiPoly::zeta_degree() const {
  int d = -1;
  for (auto& [k, v] : terms_) d = std::max(d, k.second);
  return d;
}

ExactPoly BiPoly::lambda_coefficient(int a) const {
  std::vector<ExactComplex> c;
  for (auto& [k, v] : terms_) {
    if (k.first != a) continue;
    if (static_cast<int>(c.size()) <= k.second) c.resize(static_cast<std::size_t>(k.second + 1));
    c[static_cast<std::size_t>(k.second)] = v;
  }
  return ExactPoly(std::move(c));
}

BiPoly BiPoly::scale_zeta(const ExactComplex& c) const {
  BiPoly out;
  for (auto& [k, v] : terms_) {
    ExactComplex f = v;
    for (int i = 0; i < k.second; ++i) f *= c;
    out.add_term(k.first, k.second, f);
  }
  return out;
}

BiPoly operator+(const BiPoly& p, const BiPoly& q) {
  BiPoly r = p;
  for (auto& [k, v] : q.terms_) r.add_term(k.first, k.second, v);
  return r;
}

BiPoly operator-(const BiPoly& p) {
  BiPoly::Table t;
  for (auto& [k, v] : p.terms()) t.emplace(k, -v);
  return BiPoly(std::move(t));
}

BiPoly operator-(const BiPoly& p, const BiPoly& q) { return p + (-q); }

BiPoly operator*(const BiPoly& p, const BiPoly& q) {
  BiPoly r;
  for (auto& [k1, v1] : p.terms_)
    for (auto& [k2, v2] : q.terms_) r.add_term(k1.first + k2.first, k1.second + k2.second, v1 * v2);
  return r;
}

BiPoly pow(const BiPoly& p, unsigned k) {
  BiPoly r = BiPoly::constant(ExactComplex(1));
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

}  // namespace mpde

namespace mpde {

namespace {

// p(z)/p'(z); for |z| > 1 the reversed polynomial avoids overflow and
// cancellation: p/p' = z / (n - w r'(w)/r(w)) with w = 1/z.
Complex newton_correction(const Eigen::VectorXcd& c, Complex z) {
  Eigen::Index n = c.size() - 1;
  if (std::abs(z) <= 1.0) {
    Complex p = c[n], dp(0.0, 0.0);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    return p / dp;
  }
  Complex w = 1.0 / z;
  Complex r = c[0], dr(0.0, 0.0);
  for (Eigen::Index i = 1; i <= n; ++i) {
    dr = dr * w + r;
    r = r * w + c[i];
  }
  return z / (static_cast<double>(n) - w * dr / r);
}

std::vector<Complex> initial_guesses(const Eigen::VectorXcd& c) {
  Eigen::Index n = c.size() - 1;
  std::vector<std::pair<Eigen::Index, double>> pts;
  for (Eigen::Index i = 0; i <= n; ++i)
    if (c[i] != Complex(0.0, 0.0)) pts.emplace_back(i, std::log(std::abs(c[i])));
  std::vector<std::pair<Eigen::Index, double>> hull;
  for (auto& p : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull.back();
      double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross < 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<Complex> z;
  const double offset = 0.7;  // avoids symmetric starts that stall the iteration
  for (std::size_t e = 1; e < hull.size(); ++e) {
    auto m = hull[e].first - hull[e - 1].first;
    double radius = std::exp((hull[e - 1].second - hull[e].second) / static_cast<double>(m));
    for (Eigen::Index k = 0; k < m; ++k) {
      double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m) + offset + 0.3 * static_cast<double>(e);
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> aberth_roots(const Eigen::VectorXcd& coeffs, int max_iterations) {
  Eigen::Index n = coeffs.size() - 1;
  while (n >= 0 && coeffs[n] == Complex(0.0, 0.0)) --n;
  if (n < 0) throw DomainError("roots of the zero polynomial");
  Eigen::Index zeros = 0;
  while (coeffs[zeros] == Complex(0.0, 0.0)) ++zeros;
  Eigen::VectorXcd c = coeffs.segment(zeros, n - zeros + 1);
  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex(0.0, 0.0));
  if (c.size() == 1) return roots;

  std::vector<Complex> z = initial_guesses(c);
  std::vector<bool> done(z.size(), false);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      Complex ratio = newton_correction(c, z[k]);
      Complex sum(0.0, 0.0);
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      Complex step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      if (std::abs(step) <= 4.0 * eps * std::abs(z[k]) || !std::isfinite(std::abs(step)))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  for (auto& r : z)
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw EvaluationError("Aberth iteration diverged");
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace mpde
