#include "mpde/summability.hpp"

#include "mpde/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace mpde {

namespace {

// Rational enclosure of pi, 30 correct digits on each side.
const Rational& pi_lo() {
  static const Rational r = parse_rational("3.141592653589793238462643383279");
  return r;
}
const Rational& pi_hi() {
  static const Rational r = parse_rational("3.141592653589793238462643383280");
  return r;
}

double wrap_2pi(double a) {
  double r = std::fmod(a, 2 * M_PI);
  if (r < 0) r += 2 * M_PI;
  if (r >= 2 * M_PI) r = 0.0;
  return r;
}

Rational mu_of(const Rational& q) { return Rational(numerator_of(q)); }

struct SectorContext {
  double d;
  Rational K;
  Rational z_growth_factor;  // z growth is q * z_growth_factor
  bool disc_replacement;
};

void branch_sectors(std::vector<SectorRequirement>& out, const CharBranch& br, int alpha, const SectorContext& ctx) {
  long mu = to_long(mu_of(br.q));
  double q = to_double(br.q);
  for (std::size_t beta = 0; beta < br.leading.size(); ++beta) {
    const auto& lt = br.leading[beta];
    for (long k = 0; k < mu; ++k) {
      SectorRequirement s;
      s.var = 'z';
      s.alpha = alpha;
      s.beta = static_cast<int>(beta) + 1;
      s.k = static_cast<int>(k);
      s.growth = br.q * ctx.z_growth_factor;
      if (ctx.d == 0.0 && lt.arg_over_pi) {
        Rational over_pi = mod((*lt.arg_over_pi + 2 * k) / br.q, Rational(2));
        s.dir_over_pi = over_pi;
        s.dir = to_double(over_pi) * M_PI;
      } else {
        double arg = lt.arg_over_pi ? to_double(*lt.arg_over_pi) * M_PI : std::arg(lt.value);
        s.dir = wrap_2pi((ctx.d + arg + 2.0 * M_PI * static_cast<double>(k)) / q);
      }
      out.push_back(std::move(s));
    }
  }
  SectorRequirement t;
  t.var = 't';
  t.alpha = alpha;
  t.growth = ctx.K;
  t.dir = wrap_2pi(ctx.d);
  if (ctx.d == 0.0) t.dir_over_pi = Rational(0);
  t.disc_replacement = ctx.disc_replacement;
  out.push_back(std::move(t));
}

Hypothesis hyp(std::string name, bool holds) { return {std::move(name), holds}; }

bool all_hold(const std::vector<Hypothesis>& hs) {
  return std::all_of(hs.begin(), hs.end(), [](const Hypothesis& h) { return h.holds; });
}

int alpha_of(const std::vector<CharBranch>& branches, const CharBranch& b) {
  return static_cast<int>(&b - branches.data()) + 1;
}

double direction_at(const std::vector<double>& dirs, std::size_t k) {
  if (dirs.empty()) return 0.0;
  return dirs.size() == 1 ? dirs[0] : dirs.at(k);
}

}  // namespace

std::string to_string(SummabilityCase c) {
  switch (c) {
    case SummabilityCase::simple_sum_I: return "simple_sum_I";
    case SummabilityCase::simple_sum_II: return "simple_sum_II";
    case SummabilityCase::sum_I: return "sum_I";
    case SummabilityCase::sum_II: return "sum_II";
    case SummabilityCase::multi1_I: return "multi1_I";
    case SummabilityCase::multi1_II: return "multi1_II";
    case SummabilityCase::none: return "none";
  }
  return "none";
}

LevelSet levels(const std::vector<CharBranch>& branches, int zero_roots, const GevreyData& g) {
  LevelSet lv;
  lv.n_tilde = static_cast<int>(branches.size()) + (zero_roots > 0 ? 1 : 0);
  Rational denom = g.s2 + g.t2;
  if (denom <= 0) return lv;
  lv.applicable = true;
  lv.threshold = max(g.s1, g.s1 + g.t1) / denom;
  for (std::size_t b = 0; b < branches.size(); ++b)
    if (branches[b].q > lv.threshold)
      lv.levels.push_back({branches[b].q, Rational(1) / (branches[b].q * denom - g.s1), b});
  std::sort(lv.levels.begin(), lv.levels.end(), [](const Level& a, const Level& b) { return a.q < b.q; });
  if (g.t1 > 0 && static_cast<int>(lv.levels.size()) < lv.n_tilde) lv.tilde_K = Rational(1) / g.t1;
  return lv;
}

std::vector<SectorRequirement> required_sectors(const std::vector<CharBranch>& branches, const LevelSet& lv,
                                                const std::vector<double>& directions, const GevreyData& g) {
  std::vector<SectorRequirement> out;
  for (std::size_t l = 0; l < lv.levels.size(); ++l) {
    const auto& level = lv.levels[l];
    const auto& br = branches[level.branch];
    branch_sectors(out, br, alpha_of(branches, br), {direction_at(directions, l), level.K, level.K, g.t1 <= 0});
  }
  return out;
}

AdmissibilityResult admissible(const std::vector<double>& directions, const std::vector<Rational>& lv) {
  if (directions.size() != lv.size()) throw PreconditionError("multidirection and level list differ in length");
  AdmissibilityResult res;
  for (std::size_t j = 1; j < lv.size(); ++j) {
    if (!(lv[j] < lv[j - 1]) || lv[j] <= 0) throw PreconditionError("levels must be positive and strictly decreasing");
    Rational gap = abs(from_double(directions[j]) - from_double(directions[j - 1]));
    Rational width = (Rational(1) / lv[j] - Rational(1) / lv[j - 1]) / 2;
    // gap <= pi*width decided with pi enclosed in [pi_lo, pi_hi]
    bool ok;
    if (gap <= pi_lo() * width)
      ok = true;
    else if (gap > pi_hi() * width)
      ok = false;
    else
      ok = to_double(gap) <= M_PI * to_double(width);  // within 1e-30 of the boundary
    res.admissible = res.admissible && ok;
    res.margins.push_back(M_PI * to_double(width) - to_double(gap));
  }
  return res;
}

SummabilityReport classify(const std::vector<CharBranch>& branches, int zero_roots, const GevreyData& g,
                           const std::vector<double>& directions) {
  SummabilityReport rep;
  const Rational s2t = g.s2 + g.t2;
  const double d0 = direction_at(directions, 0);

  auto single_class = branches.size() == 1 && zero_roots == 0;
  if (single_class) {
    const CharBranch& br = branches.front();
    const Rational& q = br.q;
    const Rational e = q * s2t - g.s1;
    bool simple = br.leading.size() == 1;
    rep.hypotheses.push_back(hyp("q>0", q > 0));
    std::vector<Hypothesis> h1{hyp(simple ? "q(s2+t2)-s1>=t1" : "q(s2+t2)>=s1+t1", e >= g.t1),
                               hyp("q(s2+t2)-s1>0", e > 0), hyp("s2+t2>0", s2t > 0)};
    std::vector<Hypothesis> h2{hyp("q(s2+t2)-s1<=t1", e <= g.t1), hyp("t1>0", g.t1 > 0),
                               hyp("s1+t1>0", g.s1 + g.t1 > 0)};
    rep.hypotheses.insert(rep.hypotheses.end(), h1.begin(), h1.end());
    rep.hypotheses.insert(rep.hypotheses.end(), h2.begin(), h2.end());
    if (q > 0 && all_hold(h1)) {
      rep.which = simple ? SummabilityCase::simple_sum_I : SummabilityCase::sum_I;
      Rational K = Rational(1) / e;
      rep.levels.push_back({q, K, 0});
      bool iff = g.s1 == q * g.s2 && g.t2 > 0;
      rep.hypotheses.push_back(hyp("s1=q*s2", g.s1 == q * g.s2));
      rep.hypotheses.push_back(hyp("s1<=q*s2", g.s1 <= q * g.s2));
      rep.hypotheses.push_back(hyp("t2>0", g.t2 > 0));
      rep.iff = iff;
      branch_sectors(rep.sectors, br, 1, {d0, K, K, g.t1 <= 0});
      rep.requirements.push_back("G = B_{Gamma_" + to_string(e) + ",t} B_{Gamma_" + to_string(g.t2) +
                                 ",z} g extends to the listed t- and z-sectors with growth orders (K, qK)");
      if (g.s1 <= q * g.s2 && g.t2 > 0)
        rep.requirements.push_back("then u is (K, 1/t2)-summable in the listed (t, z) directions");
      if (iff) rep.requirements.push_back("u is (K, 1/t2)-summable iff g is, in the same directions");
      if (g.t1 <= 0) rep.requirements.push_back("the t-sector may be replaced by a disc");
      return rep;
    }
    if (q > 0 && all_hold(h2)) {
      rep.which = simple ? SummabilityCase::simple_sum_II : SummabilityCase::sum_II;
      Rational K = Rational(1) / g.t1;
      rep.levels.push_back({q, K, 0});
      rep.iff = g.s1 >= q * s2t;
      rep.hypotheses.push_back(hyp("s1>=q(s2+t2)", rep.iff));
      branch_sectors(rep.sectors, br, 1, {d0, K, K, false});
      rep.requirements.push_back("G = B_{Gamma_" + to_string(g.t1) + ",t} B_{Gamma_" +
                                 to_string((g.s1 + g.t1) / q - g.s2) +
                                 ",z} g extends to the listed t- and z-sectors with growth orders (K, qK)");
      if (rep.iff) rep.requirements.push_back("u is K-summable in direction d iff g is");
      return rep;
    }
    return rep;
  }

  // several root classes: sum II when every pole order is positive and below the t1 bound
  std::vector<Hypothesis> h2{hyp("t1>0", g.t1 > 0), hyp("s1+t1>0", g.s1 + g.t1 > 0),
                             hyp("no zero roots", zero_roots == 0)};
  for (std::size_t a = 0; a < branches.size(); ++a) {
    const Rational& q = branches[a].q;
    std::string idx = std::to_string(a + 1);
    h2.push_back(hyp("q_" + idx + ">0", q > 0));
    h2.push_back(hyp("q_" + idx + "(s2+t2)-s1<=t1", q * s2t - g.s1 <= g.t1));
  }
  if (all_hold(h2)) {
    rep.which = SummabilityCase::sum_II;
    rep.hypotheses = h2;
    Rational K = Rational(1) / g.t1;
    bool iff = true;
    for (std::size_t a = 0; a < branches.size(); ++a) {
      rep.levels.push_back({branches[a].q, K, a});
      iff = iff && g.s1 >= branches[a].q * s2t;
      branch_sectors(rep.sectors, branches[a], static_cast<int>(a) + 1, {d0, K, K, false});
    }
    rep.iff = iff;
    rep.hypotheses.push_back(hyp("s1>=q_a(s2+t2) for all a", iff));
    rep.requirements.push_back("G_a = B_{Gamma_t1,t} B_{Gamma_{(s1+t1)/q_a-s2},z} g extends to the listed sectors");
    return rep;
  }

  LevelSet lv = levels(branches, zero_roots, g);
  rep.hypotheses.push_back(hyp("s2+t2>0", lv.applicable));
  int n_levels = static_cast<int>(lv.levels.size());
  rep.hypotheses.push_back(hyp("N>=1", n_levels >= 1));
  if (!lv.applicable || n_levels == 0) {
    rep.hypotheses.insert(rep.hypotheses.end(), h2.begin(), h2.end());
    return rep;
  }
  rep.levels = lv.levels;
  bool case_one = g.t1 <= 0 || n_levels == lv.n_tilde;
  rep.hypotheses.push_back(hyp("t1<=0 or N=n_tilde", case_one));

  std::vector<Rational> ks;
  std::vector<double> dirs;
  if (case_one) {
    rep.which = SummabilityCase::multi1_I;
    if (directions.size() > 1 && static_cast<int>(directions.size()) != n_levels)
      throw PreconditionError("multidirection needs " + std::to_string(n_levels) + " angles (d_N, ..., d_1)");
    for (int l = 0; l < n_levels; ++l) {
      ks.push_back(lv.levels[static_cast<std::size_t>(l)].K);
      dirs.push_back(direction_at(directions, static_cast<std::size_t>(l)));
    }
  } else {
    rep.which = SummabilityCase::multi1_II;
    rep.tilde_K = lv.tilde_K;
    if (directions.size() > 1 && static_cast<int>(directions.size()) != n_levels + 1)
      throw PreconditionError("multidirection needs " + std::to_string(n_levels + 1) +
                              " angles (d_tilde, d_N, ..., d_1)");
    ks.push_back(*lv.tilde_K);
    dirs.push_back(direction_at(directions, 0));
    for (int l = 0; l < n_levels; ++l) {
      ks.push_back(lv.levels[static_cast<std::size_t>(l)].K);
      dirs.push_back(direction_at(directions, static_cast<std::size_t>(l) + 1));
    }
  }
  std::size_t offset = case_one ? 0 : 1;
  for (int l = 0; l < n_levels; ++l) {
    const auto& level = lv.levels[static_cast<std::size_t>(l)];
    const auto& br = branches[level.branch];
    branch_sectors(rep.sectors, br, alpha_of(branches, br),
                   {dirs[static_cast<std::size_t>(l) + offset], level.K, level.K, false});
  }
  if (!case_one) {
    bool positive = zero_roots == 0;
    Rational K0 = *lv.tilde_K;
    for (std::size_t a = 0; a < branches.size(); ++a) {
      if (branches[a].q > lv.threshold) continue;
      positive = positive && branches[a].q > 0;
      if (branches[a].q > 0) branch_sectors(rep.sectors, branches[a], static_cast<int>(a) + 1, {dirs[0], K0, K0, false});
    }
    rep.hypotheses.push_back(hyp("q_a>0 for the classes below the threshold", positive));
    rep.requirements.push_back("G_0 = B_{Gamma_t1,t} B_{Gamma_t2,z} g extends with growth (1/t1, q_a/t1)");
  }
  rep.requirements.push_back("G_a = B_{Gamma_{q_a(s2+t2)-s1},t} B_{Gamma_t2,z} g extends with growth (K_a, q_a K_a)");
  auto adm = admissible(dirs, ks);
  rep.admissible = adm.admissible;
  rep.admissibility_margins = adm.margins;
  rep.hypotheses.push_back(hyp("admissible multidirection", adm.admissible));
  return rep;
}

ProbeResult singular_direction_probe(const Series2<Complex>& u, const Rational& K, Complex z_eval) {
  if (K <= 0) throw PreconditionError("probe level K must be positive");
  int n = u.valid_j;
  if (n < 19) throw PreconditionError("singular-direction probe needs at least 20 valid t-levels");
  double inv_k = 1.0 / to_double(K);

  std::vector<Complex> b(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    Complex acc(0.0, 0.0), zp(1.0, 0.0);
    for (int i = 0; i <= u.valid_i; ++i) {
      acc += u(j, i) * zp;
      zp *= z_eval;
    }
    b[static_cast<std::size_t>(j)] = acc * std::exp(-std::lgamma(1.0 + j * inv_k));
  }

  ProbeResult res;
  int lo = n / 2;
  std::vector<int> js;
  std::vector<Complex> ratios;
  for (int j = lo; j < n; ++j) {
    Complex bj = b[static_cast<std::size_t>(j)];
    if (bj == Complex(0.0, 0.0) || !std::isfinite(std::abs(bj))) {
      res.note = "vanishing or non-finite Borel coefficient at level " + std::to_string(j);
      return res;
    }
    js.push_back(j);
    ratios.push_back(b[static_cast<std::size_t>(j + 1)] / bj);
  }

  // ratio_j ~ L + C/j (Domb-Sykes); fit on the whole tail and on its two halves
  auto fit = [&](std::size_t from, std::size_t to) {
    Eigen::Index rows = static_cast<Eigen::Index>(to - from);
    Eigen::MatrixXd basis(rows, 2);
    Eigen::MatrixXd y(rows, 2);
    for (Eigen::Index r = 0; r < rows; ++r) {
      std::size_t k = from + static_cast<std::size_t>(r);
      basis(r, 0) = 1.0;
      basis(r, 1) = 1.0 / js[k];
      y(r, 0) = ratios[k].real();
      y(r, 1) = ratios[k].imag();
    }
    Eigen::MatrixXd coef = basis.colPivHouseholderQr().solve(y);
    return Complex(coef(0, 0), coef(0, 1));
  };
  std::size_t m = ratios.size();
  Complex limit = fit(0, m);
  Complex first = fit(0, m / 2);
  Complex second = fit(m / 2, m);
  res.limit_ratio = limit;

  const double tiny = 1e-3;  // Borel radius beyond 1000: nothing within unit scale
  if (std::abs(limit) < tiny && std::abs(second) < tiny) {
    res.status = ProbeStatus::none;
    res.note = "Borel series converges beyond radius " + std::to_string(1.0 / std::max(std::abs(limit), 1e-300));
    return res;
  }
  if (std::abs(first - second) > 0.05 * std::abs(limit)) {
    res.note = "ratio sequence does not settle";
    return res;
  }
  res.status = ProbeStatus::found;
  res.directions.push_back(wrap_2pi(-std::arg(limit)));
  return res;
}

}  // namespace mpde
