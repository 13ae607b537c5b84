#include "mpde/series.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstdio>

namespace mpde {

Complex evaluate(const Series1<Complex>& s, Complex x) {
  Complex root = s.kappa == 1 ? x : std::pow(x, 1.0 / s.kappa);
  Complex acc(0.0, 0.0);
  for (int j = s.truncation(); j >= 0; --j) acc = acc * root + s[j];
  return acc;
}

namespace detail {

GevreyFit fit_log_growth(const std::vector<double>& log_a, const std::vector<bool>& nonzero, int n1,
                         const GevreyFitOptions& opt) {
  int j_lo = static_cast<int>(std::ceil(opt.j_min * n1));
  std::vector<int> js;
  for (int j = std::max(j_lo, 0); j <= n1; ++j)
    if (nonzero[static_cast<std::size_t>(j)]) js.push_back(j);
  if (js.size() < 8)
    throw EvaluationError("Gevrey fit needs at least 8 nonzero levels in the fit range, found " +
                          std::to_string(js.size()));

  Eigen::Index rows = static_cast<Eigen::Index>(js.size());
  Eigen::MatrixXd basis(rows, 3);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    int j = js[static_cast<std::size_t>(r)];
    basis(r, 0) = 1.0;
    basis(r, 1) = j;
    basis(r, 2) = std::lgamma(1.0 + j);
    y[r] = log_a[static_cast<std::size_t>(j)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::VectorXd beta = qr.solve(y);
  Eigen::VectorXd resid = y - basis * beta;
  double dof = std::max<double>(1.0, static_cast<double>(rows) - 3.0);
  double sigma2 = resid.squaredNorm() / dof;
  Eigen::MatrixXd cov = sigma2 * (basis.transpose() * basis).inverse();

  GevreyFit fit;
  fit.s_hat = beta[2];
  fit.stderr_ = std::sqrt(std::max(0.0, cov(2, 2)));
  fit.j_lo = js.front();
  fit.j_hi = js.back();
  fit.r = opt.r;
  return fit;
}

}  // namespace detail

Complex frac_integral_quadrature(const Series1<Complex>& phi, const Rational& s, int k, double x) {
  if (s <= 0) throw DomainError("fractional integration needs s > 0");
  if (k < 1) throw DomainError("fractional integration needs k >= 1");
  if (x <= 0) throw DomainError("fractional integration needs x > 0");
  double sd = to_double(s);
  double ks = k * sd;
  double big_x = std::pow(x, 1.0 / sd);
  double norm = ks / std::tgamma(1.0 + ks);
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto part = [&](bool imag) {
    auto f = [&](double y, double complement) {
      // complement = X - y, supplied accurately near the right endpoint
      double dist = complement > 0 ? complement : big_x - y;
      Complex v = evaluate(phi, Complex(std::pow(y, sd), 0.0));
      return (imag ? v.imag() : v.real()) * std::pow(dist, ks - 1.0);
    };
    return integrator.integrate(f, 0.0, big_x, 1e-12);
  };
  return norm * Complex(part(false), part(true));
}

void write_csv(std::ostream& os, const Series2<Complex>& s) {
  os << "j,i,re,im\n";
  char buf[96];
  for (int j = 0; j <= s.valid_j; ++j)
    for (int i = 0; i <= s.valid_i; ++i) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", j, i, s(j, i).real(), s(j, i).imag());
      os << buf;
    }
}

}  // namespace mpde
