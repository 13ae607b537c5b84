#pragma once

#include "mpde/char_roots.hpp"
#include "mpde/polynomial.hpp"
#include "mpde/rational.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace mpde {

/// Monomial lambda^i zeta^j of an operator support; j may be rational for
/// pseudodifferential symbols.
struct SupportPoint {
  int i;
  Rational j;
  friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
};

struct NewtonVertex {
  Rational x;
  Rational y;
  std::vector<SupportPoint> generators;  // support points mapped onto this vertex
};

struct NewtonSegment {
  std::size_t from;
  std::size_t to;
  Rational slope;
};

/// Boundary of the convex hull of the quarter planes {x <= i s1 + j s2, y >= -i}:
/// a horizontal half-line into the first vertex, segments of strictly
/// increasing positive slope, and a vertical half-line out of the last vertex.
struct NewtonPolygon {
  std::vector<NewtonVertex> vertices;  // x and y strictly increasing
  std::vector<NewtonSegment> segments;
};

NewtonPolygon build(const std::vector<SupportPoint>& support, const Rational& s1, const Rational& s2);
NewtonPolygon build(const BiPoly& p, const Rational& s1, const Rational& s2);

/// Finite positive segment slopes, increasing.
std::vector<Rational> slopes(const NewtonPolygon& np);

struct CrossCheckReport {
  bool slopes_match = true;
  bool integrality = true;
  bool vertices_match = true;
  std::vector<std::string> diffs;

  bool ok() const { return slopes_match && integrality && vertices_match; }
};

/// Compares the polygon with the branch data of the same operator: slope set
/// {1/(q s2 - s1) : q > s1/s2}, integrality of n_q q, and the vertex chain
/// predicted from the lowest vertex and the (q, n_q) pairs in decreasing q.
CrossCheckReport cross_check(const NewtonPolygon& np, const CharPoly& p, const std::vector<CharBranch>& branches,
                             const Rational& s1, const Rational& s2);

/// 600x400 SVG: boundary polyline, dashed half-lines, labelled vertices.
void write_svg(std::ostream& os, const NewtonPolygon& np);
/// Header `x,y`, one vertex per line.
void write_vertices_csv(std::ostream& os, const NewtonPolygon& np);

}  // namespace mpde
