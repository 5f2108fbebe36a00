#include <random>

#include "doctest.h"
#include "omin/interval_set.hpp"

using namespace omin;

namespace {

IntervalSet S(const std::string& t) { return IntervalSet::parse(t); }

Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

// Random set with endpoints on the grid k/2, k in [-8, 8].
IntervalSet random_set(std::mt19937_64& rng) {
  std::vector<Piece> raw;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    long a = static_cast<long>(rng() % 17) - 8;
    if (rng() % 3 == 0) {
      raw.push_back(Piece::at(XReal(frac(a, 2))));
    } else {
      long b = a + 1 + static_cast<long>(rng() % 6);
      XReal lo = rng() % 10 == 0 ? XReal::neg_inf() : XReal(frac(a, 2));
      XReal hi = rng() % 10 == 0 ? XReal::pos_inf() : XReal(frac(b, 2));
      raw.push_back(Piece::open(lo, hi));
      if (rng() % 2 && lo.finite()) raw.push_back(Piece::at(lo));
      if (rng() % 2 && hi.finite()) raw.push_back(Piece::at(hi));
    }
  }
  return IntervalSet::normalize(raw);
}

// probe points k/4 covering every elementary region of the grid
std::vector<Q> probes() {
  std::vector<Q> out;
  for (long k = -44; k <= 44; ++k) out.emplace_back(k, 4);
  for (auto& q : out) q.canonicalize();
  return out;
}

Q dist_to(const IntervalSet& X, const Q& x) {
  // brute oracle on the grid: X has endpoints in (1/2)Z, so the distance is
  // the minimum over closed components
  Q best = -1;
  for (auto& c : X.components()) {
    IntervalSet cl = c.closure();
    auto& p = cl.breakpoints();
    bool left_inf = cl.regions().front(), right_inf = cl.regions().back();
    Q lo = p.empty() ? Q(0) : p.front().value(), hi = p.empty() ? Q(0) : p.back().value();
    Q d;
    if ((left_inf || x >= lo) && (right_inf || x <= hi))
      d = 0;
    else if (!left_inf && x < lo)
      d = lo - x;
    else
      d = x - hi;
    if (best < 0 || d < best) best = d;
  }
  return best;
}

}  // namespace

TEST_CASE("normalize examples") {
  std::vector<Piece> raw = {Piece::open(XReal(0), XReal(1)), Piece::open(XReal(1), XReal(2)), Piece::at(XReal(1))};
  CHECK(IntervalSet::normalize(raw) == IntervalSet::open(XReal(0), XReal(2)));
  auto b = IntervalSet::normalize({Piece::at(XReal(3)), Piece::open(XReal(0), XReal(1))});
  CHECK(b.str() == "{(0,1) {3}}");
  auto c = IntervalSet::normalize({Piece::open(XReal(0), XReal(1)), Piece::open(XReal(Q(1, 2)), XReal(Q(3, 4)))});
  CHECK(c.str() == "{(0,1)}");
  CHECK_THROWS_AS(IntervalSet::open(XReal(1), XReal(1)), MalformedPiece);
  CHECK(IntervalSet::normalize(raw) == IntervalSet::normalize(IntervalSet::normalize(raw).pieces()));
}

TEST_CASE("boolean examples") {
  CHECK(S("{(0,1)}").complement().str() == "{(-oo,0] [1,oo)}");
  CHECK(S("{(0,1)}").closure().str() == "{[0,1]}");
  CHECK(S("{(0,1)}").closure().pieces().size() == 3);
  CHECK((S("{[0,2]}") & S("{[1,3]}")) == S("{[1,2]}"));
  CHECK(b0_1d(S("{(0,1) {1} (1,2)}")) == 1);
  CHECK(b0_1d(S("{(0,1) {2}}")) == 2);
  CHECK(b0_1d(IntervalSet::empty()) == 0);
}

TEST_CASE("text round trip") {
  for (std::string t : {"{}", "{(0,1) [2,3] {4}}", "{(-oo,-1/2] (0,oo)}", "{(-oo,oo)}", "{[1,2) (5/3,7]}"}) {
    auto s = S(t);
    CHECK(S(s.str()) == s);
    CHECK(S(s.str()).str() == s.str());
  }
  IntervalSet r = IntervalSet::point(RealAlg::roots_of(UPoly(std::vector<Q>{-2, 0, 1}))[1]);
  CHECK(S(r.str()) == r);
}

TEST_CASE("random expressions agree with pointwise semantics") {
  std::mt19937_64 rng(1);
  auto pr = probes();
  for (int t = 0; t < 2000; ++t) {
    IntervalSet a = random_set(rng), b = random_set(rng);
    IntervalSet u = a | b, i = a & b, d = a - b, c = a.complement(), cl = a.closure();
    for (auto& x : pr) {
      bool ia = a.contains(x), ib = b.contains(x);
      REQUIRE(u.contains(x) == (ia || ib));
      REQUIRE(i.contains(x) == (ia && ib));
      REQUIRE(d.contains(x) == (ia && !ib));
      REQUIRE(c.contains(x) == !ia);
      // closure on the grid: x or a neighbour at distance 1/8 is in a
      bool near = ia || a.contains(Q(x - Q(1, 8))) || a.contains(Q(x + Q(1, 8)));
      REQUIRE(cl.contains(x) == near);
    }
    REQUIRE((a | b).complement() == (a.complement() & b.complement()));
    REQUIRE(IntervalSet::normalize(u.pieces()) == u);
    REQUIRE(S(u.str()) == u);
  }
}

TEST_CASE("tube examples") {
  IntervalSet R = IntervalSet::line(), O = S("{{0}}");
  CHECK(tube(TubeKind::OT, O, R, Q(1, 2)) == S("{(-1/2,1/2)}"));
  CHECK(tube(TubeKind::BT, O, R, Q(1, 2)) == S("{{-1/2} {1/2}}"));
  IntervalSet V = S("{[-1,1]}");
  IntervalSet ann = tube(TubeKind::Ann, O, V, Q(1, 2), Q(1, 4));
  CHECK((V - ann) == S("{[-1,-1/2] [-1/4,1/4] [1/2,1]}"));
  CHECK_THROWS_AS(tube(TubeKind::OT, S("{(0,1)}"), R, Q(1)), NotClosed);
  CHECK_THROWS_AS(tube(TubeKind::Ann, O, R, Q(1, 4), Q(1, 2)), RadiusOrder);
}

TEST_CASE("tube identities and distance oracle") {
  std::mt19937_64 rng(2);
  auto pr = probes();
  int done = 0;
  while (done < 300) {
    IntervalSet X = random_set(rng).closure();
    if (X.is_empty()) continue;
    ++done;
    Q e1 = frac(1 + static_cast<long>(rng() % 8), 8), e2 = e1 / 2;
    IntervalSet R = IntervalSet::line();
    IntervalSet ot = tube(TubeKind::OT, X, R, e1), ct = tube(TubeKind::CT, X, R, e1);
    IntervalSet bt = tube(TubeKind::BT, X, R, e1), ann = tube(TubeKind::Ann, X, R, e1, e2);
    IntervalSet annbar = tube(TubeKind::AnnBar, X, R, e1, e2);
    REQUIRE(ot.subset_of(ct));
    REQUIRE(bt == (ct - ot));
    REQUIRE(ann == (ot - tube(TubeKind::CT, X, R, e2)));
    for (long k = -400; k <= 400; k += 3) {
      Q x(k, 32);
      x.canonicalize();
      Q d = dist_to(X, x);
      REQUIRE(ot.contains(x) == (d < e1));
      REQUIRE(ct.contains(x) == (d <= e1));
      REQUIRE(bt.contains(x) == (d == e1));
      REQUIRE(ann.contains(x) == (d > e2 && d < e1));
      REQUIRE(annbar.contains(x) == (d >= e2 && d <= e1));
    }
    auto cr = critical_radii(X, IntervalSet::empty());
    Q small = cr.empty() ? Q(1) : Q(cr.front().lo() / 2);
    if (!cr.empty() && cr.front().is_rational()) small = cr.front().value() / 2;
    REQUIRE(b0_1d(tube(TubeKind::CT, X, R, small)) == b0_1d(X));
  }
}

TEST_CASE("critical radii examples") {
  auto r = critical_radii(S("{{0}}"), S("{{1}}"));
  REQUIRE(r.size() == 2);
  CHECK(compare(r[0], Q(1, 2)) == 0);
  CHECK(compare(r[1], Q(1)) == 0);
  CHECK(critical_radii(S("{{0}}"), S("{{0}}")).empty());
  auto s = critical_radii(S("{{0} {1}}"), IntervalSet::empty());
  REQUIRE(s.size() == 1);
  CHECK(compare(s[0], Q(1, 2)) == 0);
}
