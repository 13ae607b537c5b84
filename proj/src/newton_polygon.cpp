#include "mpde/newton_polygon.hpp"

#include "mpde/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace mpde {

NewtonPolygon build(const std::vector<SupportPoint>& support, const Rational& s1, const Rational& s2) {
  if (support.empty()) throw PreconditionError("Newton polygon of an empty support");
  if (s1 <= 0 || s2 <= 0) throw PreconditionError("Newton polygon needs s1 > 0 and s2 > 0");

  std::map<std::pair<Rational, Rational>, std::vector<SupportPoint>> points;
  for (const auto& sp : support) points[{sp.i * s1 + sp.j * s2, Rational(-sp.i)}].push_back(sp);

  std::vector<NewtonVertex> pareto;
  for (auto& [p, gens] : points) {
    bool dominated = false;
    for (auto& [o, og] : points)
      if (o != p && o.first >= p.first && o.second <= p.second) {
        dominated = true;
        break;
      }
    if (!dominated) pareto.push_back({p.first, p.second, gens});
  }
  // map order already sorts by x; Pareto-maximal points then have increasing y

  std::vector<NewtonVertex> chain;
  auto slope = [](const NewtonVertex& a, const NewtonVertex& b) { return (b.y - a.y) / (b.x - a.x); };
  for (auto& v : pareto) {
    while (chain.size() >= 2 && slope(chain[chain.size() - 2], chain.back()) >= slope(chain.back(), v))
      chain.pop_back();
    chain.push_back(std::move(v));
  }

  NewtonPolygon np;
  np.vertices = std::move(chain);
  for (std::size_t k = 1; k < np.vertices.size(); ++k)
    np.segments.push_back({k - 1, k, slope(np.vertices[k - 1], np.vertices[k])});
  return np;
}

NewtonPolygon build(const BiPoly& p, const Rational& s1, const Rational& s2) {
  std::vector<SupportPoint> support;
  for (auto& [k, v] : p.terms()) support.push_back({k.first, Rational(k.second)});
  return build(support, s1, s2);
}

std::vector<Rational> slopes(const NewtonPolygon& np) {
  std::vector<Rational> out;
  for (auto& s : np.segments) out.push_back(s.slope);
  return out;
}

CrossCheckReport cross_check(const NewtonPolygon& np, const CharPoly& p, const std::vector<CharBranch>& branches,
                             const Rational& s1, const Rational& s2) {
  CrossCheckReport report;

  std::vector<const CharBranch*> steep;
  for (auto& b : branches)
    if (b.q * s2 > s1) steep.push_back(&b);
  std::sort(steep.begin(), steep.end(), [](auto* a, auto* b) { return a->q > b->q; });

  std::vector<Rational> expected;
  for (auto* b : steep) expected.push_back(Rational(1) / (b->q * s2 - s1));
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  auto actual = slopes(np);
  if (expected != actual) {
    report.slopes_match = false;
    std::string e, a;
    for (auto& r : expected) e += " " + to_string(r);
    for (auto& r : actual) a += " " + to_string(r);
    report.diffs.push_back("slopes: expected [" + e + " ] got [" + a + " ]");
  }

  for (auto* b : steep) {
    Rational nq = b->q * b->total_multiplicity();
    if (!is_integer(nq)) {
      report.integrality = false;
      report.diffs.push_back("n*q = " + to_string(nq) + " is not an integer for q = " + to_string(b->q));
    }
  }

  int n = p.n();
  Rational x = n * s1 + p.coefficient(n).degree() * s2;
  Rational y = -n;
  std::vector<std::pair<Rational, Rational>> predicted{{x, y}};
  for (auto* b : steep) {
    int m = b->total_multiplicity();
    x += -m * s1 + m * b->q * s2;
    y += m;
    predicted.emplace_back(x, y);
  }
  bool same = predicted.size() == np.vertices.size();
  for (std::size_t k = 0; same && k < predicted.size(); ++k)
    same = predicted[k].first == np.vertices[k].x && predicted[k].second == np.vertices[k].y;
  if (!same) {
    report.vertices_match = false;
    std::string e, a;
    for (auto& [px, py] : predicted) e += " (" + to_string(px) + "," + to_string(py) + ")";
    for (auto& v : np.vertices) a += " (" + to_string(v.x) + "," + to_string(v.y) + ")";
    report.diffs.push_back("vertices: expected [" + e + " ] got [" + a + " ]");
  }
  return report;
}

void write_svg(std::ostream& os, const NewtonPolygon& np) {
  const double width = 600, height = 400, margin = 60;
  double xmin = 0, xmax = 1, ymin = -1, ymax = 0;
  if (!np.vertices.empty()) {
    xmin = xmax = to_double(np.vertices.front().x);
    ymin = ymax = to_double(np.vertices.front().y);
    for (auto& v : np.vertices) {
      xmin = std::min(xmin, to_double(v.x));
      xmax = std::max(xmax, to_double(v.x));
      ymin = std::min(ymin, to_double(v.y));
      ymax = std::max(ymax, to_double(v.y));
    }
  }
  // leave room for the half-lines on the left and at the top
  xmin -= 1;
  ymax += 1;
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymin = ymax - 1;
  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\" viewBox=\"0 0 600 400\">\n";
  os << "<rect width=\"600\" height=\"400\" fill=\"white\"/>\n";
  if (!np.vertices.empty()) {
    double x0 = to_double(np.vertices.front().x), y0 = to_double(np.vertices.front().y);
    double xn = to_double(np.vertices.back().x), yn = to_double(np.vertices.back().y);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n",
                  px(xmin), py(y0), px(x0), py(y0));
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n",
                  px(xn), py(yn), px(xn), py(ymax));
    os << buf;
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < np.vertices.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", k ? " " : "", px(to_double(np.vertices[k].x)),
                    py(to_double(np.vertices[k].y)));
      os << buf;
    }
    os << "\"/>\n";
    for (auto& v : np.vertices) {
      double vx = px(to_double(v.x)), vy = py(to_double(v.y));
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"black\"/>\n", vx, vy);
      os << buf;
      std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">(%s, %s)</text>\n", vx + 8,
                    vy + 16, to_string(v.x).c_str(), to_string(v.y).c_str());
      os << buf;
    }
  }
  os << "</svg>\n";
}

void write_vertices_csv(std::ostream& os, const NewtonPolygon& np) {
  os << "x,y\n";
  char buf[96];
  for (auto& v : np.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", to_double(v.x), to_double(v.y));
    os << buf;
  }
}

}  // namespace mpde
