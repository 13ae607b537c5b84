#include "mpde/report.hpp"

#include "mpde/char_roots.hpp"
#include "mpde/newton_polygon.hpp"
#include "mpde/parser.hpp"
#include "mpde/summability.hpp"

namespace mpde {

namespace {

using nlohmann::json;

json opt_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

json branch_json(const CharBranch& b) {
  json leading = json::array();
  for (auto& lt : b.leading) {
    json e{{"re", lt.value.real()}, {"im", lt.value.imag()}, {"mult", lt.mult}};
    if (lt.exact) e["exact"] = to_string(*lt.exact);
    e["arg_over_pi"] = opt_rational(lt.arg_over_pi);
    leading.push_back(e);
  }
  return {{"q", to_string(b.q)}, {"kappa", b.kappa}, {"leading", leading}, {"resolved", b.resolved}};
}

json polygon_json(const CharPoly& p, const std::vector<CharBranch>& branches, const Rational& s1,
                  const Rational& s2) {
  if (s1 <= 0 || s2 <= 0) return nullptr;
  NewtonPolygon np = build(p.poly(), s1, s2);
  json vertices = json::array();
  for (auto& v : np.vertices) {
    json gens = json::array();
    for (auto& g : v.generators) gens.push_back({g.i, to_string(g.j)});
    vertices.push_back({{"x", to_string(v.x)}, {"y", to_string(v.y)}, {"generators", gens}});
  }
  json sl = json::array();
  for (auto& r : slopes(np)) sl.push_back(to_string(r));
  CrossCheckReport cc = cross_check(np, p, branches, s1, s2);
  return {{"vertices", vertices},
          {"slopes", sl},
          {"cross_check",
           {{"ok", cc.ok()},
            {"slopes_match", cc.slopes_match},
            {"integrality", cc.integrality},
            {"vertices_match", cc.vertices_match},
            {"diffs", cc.diffs}}}};
}

}  // namespace

json analyze_report(const ProblemFile& pf) {
  CharPoly p(pf.op);
  auto branches = branches_at_infinity(p);
  int zero_roots = p.zero_root_multiplicity();
  Rational s1 = order(pf.m1), s2 = order(pf.m2);
  GevreyData g{s1, s2, pf.t1, pf.t2};

  json out;
  out["operator"] = print_operator(pf.op);
  out["n"] = p.n();
  out["m1"] = to_string(pf.m1);
  out["m2"] = to_string(pf.m2);
  out["s1"] = to_string(s1);
  out["s2"] = to_string(s2);
  out["rhs_gevrey"] = {to_string(pf.t1), to_string(pf.t2)};
  out["directions"] = pf.directions;

  json bs = json::array();
  for (auto& b : branches) bs.push_back(branch_json(b));
  out["branches"] = bs;
  out["zero_roots"] = zero_roots;
  out["kappa"] = common_kappa(branches);
  out["newton_polygon"] = polygon_json(p, branches, s1, s2);

  TheoreticalOrders th = theoretical_orders(branches, zero_roots, s1, s2, pf.t1, pf.t2);
  json per = json::array();
  for (auto& bo : th.per_branch) per.push_back({{"q", to_string(bo.q)}, {"Q", to_string(bo.order)}});
  out["gevrey"] = {{"per_branch", per}, {"t_order", to_string(th.t_order)}, {"z_order", to_string(th.z_order)}};

  SummabilityReport rep = classify(branches, zero_roots, g, pf.directions);
  out["case"] = to_string(rep.which);
  json lv = json::array();
  for (auto& l : rep.levels) lv.push_back({{"K", to_string(l.K)}, {"q", to_string(l.q)}});
  out["levels"] = lv;
  out["tilde_K"] = opt_rational(rep.tilde_K);
  out["iff"] = rep.iff;
  json sectors = json::array();
  for (auto& s : rep.sectors)
    sectors.push_back({{"var", std::string(1, s.var)},
                       {"dir", s.dir},
                       {"dir_over_pi", opt_rational(s.dir_over_pi)},
                       {"growth", to_double(s.growth)},
                       {"growth_exact", to_string(s.growth)},
                       {"branch", {s.alpha, s.beta, s.k}},
                       {"disc_replacement", s.disc_replacement}});
  out["sectors"] = sectors;
  json hyps = json::array();
  for (auto& h : rep.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}});
  out["hypotheses"] = hyps;
  out["admissible"] = rep.admissible;
  out["admissibility_margins"] = rep.admissibility_margins;
  out["requirements"] = rep.requirements;
  return out;
}

}  // namespace mpde
