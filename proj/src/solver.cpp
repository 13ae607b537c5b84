#include "mpde/solver.hpp"

namespace mpde {

TheoreticalOrders theoretical_orders(const std::vector<CharBranch>& branches, int zero_roots, const Rational& s1,
                                     const Rational& s2, const Rational& t1, const Rational& t2) {
  TheoreticalOrders out;
  auto order_of = [&](const Rational& q) { return max(max(q, Rational(0)) * (s2 + t2) - s1, t1); };
  bool first = true;
  for (auto& b : branches) {
    Rational o = order_of(b.q);
    out.per_branch.push_back({b.q, o});
    out.t_order = first ? o : max(out.t_order, o);
    first = false;
  }
  if (zero_roots > 0) {
    Rational o = order_of(Rational(0));
    out.t_order = first ? o : max(out.t_order, o);
  }
  out.z_order = t2;
  return out;
}

}  // namespace mpde
