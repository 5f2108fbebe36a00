#include "omin/census.hpp"

#include <algorithm>

namespace omin {

namespace {

bool holds_at(const MemberSet& m, const std::vector<UPoly>& polys, const std::vector<int8_t>& scratch_in,
              const std::function<int(const UPoly&)>& sign) {
  std::vector<int8_t> s = scratch_in;
  for (size_t a = 0; a < polys.size(); ++a) s[a] = static_cast<int8_t>(sign(polys[a]));
  return eval_on_signs(m.formula_x, s.data());
}

}  // namespace

IntervalSet realize_on_line(const MemberSet& m) {
  if (m.k() != 1) throw DimensionMismatch("realize_on_line needs a k = 1 member");
  if (m.numeric()) throw NonExactMember("member has numeric-only atoms");
  std::vector<UPoly> polys;
  for (auto& p : m.polys()) polys.push_back(p.to_upoly());
  std::vector<RealAlg> pts;
  for (auto& p : polys)
    if (p.degree() >= 1)
      for (auto& x : RealAlg::roots_of(p)) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<int8_t> scratch(polys.size());
  auto at_q = [&](const Q& x) {
    return holds_at(m, polys, scratch, [&](const UPoly& p) { return sgn(p.eval(x)); });
  };
  std::vector<Piece> pieces;
  int N = static_cast<int>(pts.size());
  for (int r = 0; r <= 2 * N; ++r) {
    if (r % 2 == 1) {
      const RealAlg& x = pts[r / 2];
      if (holds_at(m, polys, scratch, [&](const UPoly& p) { return x.sign_of(p); })) pieces.push_back(Piece::at(x));
      continue;
    }
    int i = r / 2;
    Q s;
    if (N == 0)
      s = 0;
    else if (i == 0)
      s = floor_q(pts[0].lo()) - 1;
    else if (i == N)
      s = ceil_q(pts[N - 1].hi()) + 1;
    else
      s = rational_between(pts[i - 1], pts[i]);
    if (!at_q(s)) continue;
    XReal lo = i == 0 ? XReal::neg_inf() : XReal(pts[i - 1]);
    XReal hi = i == N ? XReal::pos_inf() : XReal(pts[i]);
    pieces.push_back(Piece::open(lo, hi));
  }
  return IntervalSet::normalize(pieces);
}

BettiVector member_betti(const MemberSet& m) {
  if (m.k() == 1) return {b0_1d(realize_on_line(m)), 0};
  if (m.k() != 2) throw DimensionMismatch("member_betti supports k <= 2");
  auto arr = PlaneArrangement::build({m});
  return betti_of_membership(arr, [](const std::vector<bool>& v) { return v[0]; });
}

BettiCensus betti_type_census(const FamilyTemplate& t, const std::vector<ParameterPoint>& params) {
  BettiCensus c;
  for (auto& y : params) {
    BettiVector b = member_betti(instantiate(t, y));
    c.vectors.push_back(b);
    ++c.distinct[b];
    c.max_b = std::max(c.max_b, b.b0 + b.b1);
  }
  return c;
}

}  // namespace omin
