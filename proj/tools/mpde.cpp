#include "mpde/char_roots.hpp"
#include "mpde/errors.hpp"
#include "mpde/newton_polygon.hpp"
#include "mpde/problem.hpp"
#include "mpde/report.hpp"
#include "mpde/summability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;
using namespace mpde;

constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitVerification = 3;
constexpr int kExitNumeric = 4;

struct Options {
  std::string problem;
  std::string out;
  std::string svg;
  std::optional<int> n1, n2;
  double tol = 1e-8;
  std::string arithmetic;
};

ProblemFile load(const Options& o) {
  ProblemFile pf = load_problem(o.problem);
  if (o.n1) pf.n1 = *o.n1;
  if (o.n2) pf.n2 = *o.n2;
  if (o.arithmetic == "exact") pf.exact = true;
  if (o.arithmetic == "float") pf.exact = false;
  if (pf.n1 < 0 || pf.n2 < 0) throw PreconditionError("truncation must be nonnegative");
  return pf;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw PreconditionError("cannot write '" + path + "'");
  return file;
}

const char* mode_name(SolveMode m) { return m == SolveMode::direct ? "direct" : "pseudo"; }

json residual_json(const ResidualResult& r) {
  return {{"max_abs", r.max_abs},
          {"relative", r.relative()},
          {"exact_zero", r.exact_zero},
          {"window", {r.window_j, r.window_i}}};
}

int cmd_analyze(const Options& o) {
  ProblemFile pf = load(o);
  std::ofstream file;
  open_out(o.out, file) << analyze_report(pf).dump(2) << "\n";
  return 0;
}

template <class Scalar>
int solve_as(const Options& o, const ProblemFile& pf) {
  auto outcome = solve_checked<Scalar>(pf, pf.n1, pf.n2);
  std::ofstream file;
  write_csv(open_out(o.out, file), outcome.u);
  json side{{"valid_window", {pf.n1, pf.n2}},
            {"mode", mode_name(pf.mode)},
            {"arithmetic", pf.exact ? "exact" : "float"},
            {"residual", residual_json(outcome.residual)}};
  if (o.out.empty()) {
    std::cerr << side.dump(2) << "\n";
  } else {
    std::ofstream sf(o.out + ".json");
    sf << side.dump(2) << "\n";
  }
  return 0;
}

int cmd_solve(const Options& o) {
  ProblemFile pf = load(o);
  return pf.exact ? solve_as<ExactComplex>(o, pf) : solve_as<Complex>(o, pf);
}

int cmd_newton(const Options& o) {
  ProblemFile pf = load(o);
  NewtonPolygon np = build(pf.op, order(pf.m1), order(pf.m2));
  std::ofstream file;
  write_vertices_csv(open_out(o.out, file), np);
  std::string svg = o.svg.empty() && !o.out.empty() ? o.out + ".svg" : o.svg;
  if (!svg.empty()) {
    std::ofstream sf(svg);
    if (!sf) throw PreconditionError("cannot write '" + svg + "'");
    write_svg(sf, np);
  }
  return 0;
}

int cmd_probe(const Options& o) {
  ProblemFile pf = load(o);
  CharPoly p(pf.op);
  auto branches = branches_at_infinity(p);
  int zero_roots = p.zero_root_multiplicity();
  Rational s1 = order(pf.m1), s2 = order(pf.m2);
  auto u = solve_checked<Complex>(pf, pf.n1, pf.n2).u;

  json out;
  try {
    GevreyFit fit = gevrey_fit(u);
    out["gevrey_fit"] = {{"s_hat", fit.s_hat}, {"stderr", fit.stderr_}, {"j_range", {fit.j_lo, fit.j_hi}}, {"r", fit.r}};
  } catch (const EvaluationError& e) {
    out["gevrey_fit"] = {{"error", e.what()}};
  }
  TheoreticalOrders th = theoretical_orders(branches, zero_roots, s1, s2, pf.t1, pf.t2);
  out["theoretical_t_order"] = to_string(th.t_order);

  LevelSet lv = levels(branches, zero_roots, GevreyData{s1, s2, pf.t1, pf.t2});
  if (lv.levels.empty()) {
    out["probe"] = nullptr;
  } else {
    const Rational& K = lv.levels.back().K;
    ProbeResult pr = singular_direction_probe(u, K, Complex(0.0, 0.0));
    const char* status = pr.status == ProbeStatus::found ? "found" : pr.status == ProbeStatus::none ? "none" : "inconclusive";
    out["probe"] = {{"K", to_string(K)},
                    {"z_eval", {0.0, 0.0}},
                    {"status", status},
                    {"directions", pr.directions},
                    {"limit_ratio", {pr.limit_ratio.real(), pr.limit_ratio.imag()}},
                    {"note", pr.note}};
  }
  std::ofstream file;
  open_out(o.out, file) << out.dump(2) << "\n";
  return 0;
}

template <class Scalar>
ResidualResult verify_as(const ProblemFile& pf) {
  return solve_checked<Scalar>(pf, pf.n1, pf.n2).residual;
}

int cmd_verify(const Options& o) {
  ProblemFile pf = load(o);
  ResidualResult r = pf.exact ? verify_as<ExactComplex>(pf) : verify_as<Complex>(pf);
  bool pass = r.exact_zero || r.relative() <= o.tol;
  json out = residual_json(r);
  out["tol"] = o.tol;
  out["pass"] = pass;
  std::ofstream file;
  open_out(o.out, file) << out.dump(2) << "\n";
  return pass ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal solutions and summability analysis for moment partial differential equations"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("problem", o.problem, "problem description (JSON)")->required();
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--n1", o.n1, "truncation order in t");
    sub->add_option("--n2", o.n2, "truncation order in z");
    sub->add_option("--arithmetic", o.arithmetic, "float or exact")->check(CLI::IsMember({"float", "exact"}));
  };
  auto* analyze = app.add_subcommand("analyze", "characteristic branches, Newton polygon, levels and sectors");
  auto* solve = app.add_subcommand("solve", "formal solution coefficients as CSV");
  auto* newton = app.add_subcommand("newton", "Newton polygon vertices as CSV, optionally SVG");
  auto* probe = app.add_subcommand("probe", "Gevrey-order fit and singular-direction estimate");
  auto* verify = app.add_subcommand("verify", "residual check of the formal solution");
  for (auto* sub : {analyze, solve, newton, probe, verify}) add_common(sub);
  newton->add_option("--svg", o.svg, "SVG output file");
  verify->add_option("--tol", o.tol, "relative residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*solve) return cmd_solve(o);
    if (*newton) return cmd_newton(o);
    if (*probe) return cmd_probe(o);
    if (*verify) return cmd_verify(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
