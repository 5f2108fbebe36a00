#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "omin/homotopy.hpp"

using namespace omin;

namespace {

Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

IntervalSet seg(const Q& a, const Q& b) { return IntervalSet::closed(RealAlg(a), RealAlg(b)); }

MemberSet circle(const Q& cx, const Q& cy, const Q& r) { return instantiate(templates::circle(), {cx, cy, r}); }
MemberSet disk(const Q& cx, const Q& cy, const Q& r) { return instantiate(templates::disk(), {cx, cy, r}); }

PlanarSet member_cells(const std::shared_ptr<const PlaneArrangement>& arr, const std::vector<int>& all_of) {
  PlanarSet s{arr, std::vector<bool>(arr->num_cells())};
  for (int c = 0; c < arr->num_cells(); ++c) {
    bool in = true;
    for (int i : all_of) in = in && arr->in_member(c, i);
    s.cells[c] = in;
  }
  return s;
}

std::shared_ptr<const PlaneArrangement> arrangement(const std::vector<MemberSet>& ms) {
  return std::make_shared<const PlaneArrangement>(PlaneArrangement::build(ms));
}

// Closed segments with half-integer endpoints; b0 by merging, independent of the engine.
struct SegList {
  std::vector<std::pair<Q, Q>> segs;
  IntervalSet set() const {
    IntervalSet s;
    for (auto& [a, b] : segs) s = s | seg(a, b);
    return s;
  }
  long merged_count() const {
    auto v = segs;
    std::sort(v.begin(), v.end());
    long count = 0;
    Q hi;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i == 0 || v[i].first > hi) {
        ++count;
        hi = v[i].second;
      } else {
        hi = std::max(hi, v[i].second);
      }
    }
    return count;
  }
};

SegList random_segs(std::mt19937_64& rng, int max_pieces, long lo, long hi) {
  SegList s;
  int pieces = static_cast<int>(rng() % (max_pieces + 1));
  for (int p = 0; p < pieces; ++p) {
    long a = 2 * lo + static_cast<long>(rng() % (2 * (hi - lo) + 1));
    long len = rng() % 3 == 0 ? 0 : 1 + static_cast<long>(rng() % 6);
    s.segs.push_back({frac(a, 2), frac(std::min(a + len, 2 * hi), 2)});
  }
  return s;
}

}  // namespace

TEST_CASE("Mayer-Vietoris examples") {
  auto r = mv_pair_check(seg(0, 2), seg(1, 3));
  CHECK(r.mv1[0].lhs == 2);
  CHECK(r.mv1[0].rhs == 2);
  CHECK(r.mv1[0].pass);

  auto arr = arrangement({circle(0, 0, 1), circle(1, 0, 1)});
  PlanarSet c1 = member_cells(arr, {0}), c2 = member_cells(arr, {1});
  auto same = mv_pair_check(c1, c1);
  CHECK(same.mv1[1].lhs == 2);
  CHECK(same.mv1[1].rhs == 2);

  // two circles crossing twice: union has b1 = 3, intersection is 2 points
  CHECK(betti(set_union(c1, c2)) == BettiVector{1, 3});
  CHECK(betti(set_intersection(c1, c2)) == BettiVector{2, 0});
  auto crossing = mv_pair_check(c1, c2);
  CHECK(crossing.mv2[1].lhs == 3);
  CHECK(crossing.mv2[1].rhs == 4);
  CHECK(crossing.mv2[1].pass);

  CHECK_THROWS_AS(mv_pair_check(seg(0, 1), c1), UnsupportedEngine);
  auto other = arrangement({circle(0, 0, 1)});
  CHECK_THROWS_AS(mv_pair_check(c1, member_cells(other, {0})), UnsupportedEngine);
  CHECK_THROWS_AS(mv_from_betti({1, 0}, {1, 0}, {3, 0}, {0, 0}), AssertionFailure);
}

TEST_CASE("Mayer-Vietoris on random line sets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    SegList a = random_segs(rng, 3, -5, 5), b = random_segs(rng, 3, -5, 5);
    IntervalSet A = a.set(), B = b.set();
    REQUIRE(betti(A).b0 == a.merged_count());
    SegList u = a;
    u.segs.insert(u.segs.end(), b.segs.begin(), b.segs.end());
    REQUIRE(betti(set_union(A, B)).b0 == u.merged_count());
    auto r = mv_pair_check(A, B);
    for (auto* lines : {&r.mv1, &r.mv2, &r.mv3})
      for (auto& l : *lines) REQUIRE(l.pass);
  }
}

TEST_CASE("Mayer-Vietoris on random planar pairs") {
  std::mt19937_64 rng(8);
  auto pick = [&](int kind) {
    Q cx = frac(static_cast<long>(rng() % 9) - 4, 2), cy = frac(static_cast<long>(rng() % 9) - 4, 2);
    Q r = frac(1 + static_cast<long>(rng() % 6), 2);
    if (kind == 0) return circle(cx, cy, r);
    if (kind == 1) return disk(cx, cy, r);
    Q dx = static_cast<long>(rng() % 5) - 2, dy = 1 + static_cast<long>(rng() % 3);
    return instantiate(templates::plane_segment(), {cx, cy, Q(cx + dx), Q(cy + dy)});
  };
  // b of one member alone: circle (1,1), disk (1,0), segment (1,0)
  const BettiVector expect[3] = {{1, 1}, {1, 0}, {1, 0}};
  for (int trial = 0; trial < 1000; ++trial) {
    int k1 = static_cast<int>(rng() % 3), k2 = static_cast<int>(rng() % 3);
    auto arr = arrangement({pick(k1), pick(k2)});
    PlanarSet s1 = member_cells(arr, {0}), s2 = member_cells(arr, {1});
    REQUIRE(betti(s1) == expect[k1]);
    REQUIRE(betti(s2) == expect[k2]);
    REQUIRE(is_closed(s1));
    auto r = mv_pair_check(s1, s2);
    for (auto* lines : {&r.mv1, &r.mv2, &r.mv3})
      for (auto& l : *lines) REQUIRE(l.pass);
  }
}

TEST_CASE("union and intersection bounds") {
  std::vector<BettiSet> two = {seg(0, 2), seg(1, 3)};
  auto t2 = build_betti_table(two, seg(-10, 10), 2);
  auto u = mv_union_bound(t2, 0, 2);
  CHECK(u.bound == 2);
  CHECK(*u.actual == 1);
  CHECK(u.pass);

  // single set: equality in every degree
  auto arr = arrangement({circle(0, 0, 1), circle(1, 0, 1), circle(frac(1, 2), 1, 1), disk(0, 0, 5)});
  std::vector<BettiSet> one = {member_cells(arr, {0})};
  auto t1 = build_betti_table(one, member_cells(arr, {3}), 1);
  for (int i = 0; i <= 1; ++i) {
    auto b = mv_union_bound(t1, i, 1);
    CHECK(b.bound == *b.actual);
  }

  // three generic circles, i = 1: 6 pairwise points + 3 loops; union has b1 = 12 - 6 + 1
  std::vector<BettiSet> three = {member_cells(arr, {0}), member_cells(arr, {1}), member_cells(arr, {2})};
  auto t3 = build_betti_table(three, member_cells(arr, {3}), 2);
  auto b3 = mv_union_bound(t3, 1, 3);
  CHECK(b3.bound == 9);
  CHECK(*b3.actual == 7);
  CHECK(b3.pass);
  auto t3small = build_betti_table(three, member_cells(arr, {3}), 1);
  CHECK_THROWS_AS(mv_union_bound(t3small, 1, 3), MissingEntry);

  // k' = 1, i = 1: empty double sum
  auto ti = mv_intersection_bound(t3, 1, 3, 1);
  CHECK(ti.bound == betti_at(t3.ambient, 1));

  // two closed arcs on the unit circle V meet in 2 points
  auto arcs = arrangement({circle(0, 0, 1), instantiate(templates::halfplane(), {0, -1, 0}),
                           instantiate(templates::halfplane(), {0, 1, 0})});
  PlanarSet V = member_cells(arcs, {0});
  std::vector<BettiSet> halves = {member_cells(arcs, {0, 1}), member_cells(arcs, {0, 2})};
  REQUIRE(betti(V) == BettiVector{1, 1});
  auto ta = build_betti_table(halves, V, 1);
  auto ia = mv_intersection_bound(ta, 0, 2, 1);
  CHECK(ia.bound == 1 + (1 + 1) + (1 + 1));
  CHECK(*ia.actual == 2);
  CHECK(ia.pass);

  // three segments in V = [0, 10]
  std::vector<BettiSet> segs = {seg(0, 4), seg(3, 7), seg(2, 9)};
  auto ts = build_betti_table(segs, seg(0, 10), 1);
  auto is = mv_intersection_bound(ts, 0, 3, 1);
  CHECK(is.bound == 3);
  CHECK(*is.actual == 1);  // [3, 4]
  CHECK_THROWS_AS(mv_intersection_bound(ts, 0, 3, 2), MissingEntry);
}

TEST_CASE("bounds hold on random families") {
  std::mt19937_64 rng(9);
  IntervalSet V = seg(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<BettiSet> sets;
    for (int i = 0; i < n; ++i) sets.push_back(random_segs(rng, 3, -5, 5).set() & V);
    auto t = build_betti_table(sets, V, n);
    REQUIRE(mv_union_bound(t, 0, n).pass);
    REQUIRE(mv_union_bound(t, 1, n).pass);
    REQUIRE(mv_intersection_bound(t, 0, n, 1).pass);
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<MemberSet> ms;
    for (int i = 0; i < 3; ++i)
      ms.push_back(circle(frac(static_cast<long>(rng() % 9) - 4, 2), frac(static_cast<long>(rng() % 9) - 4, 2),
                          frac(1 + static_cast<long>(rng() % 6), 2)));
    ms.push_back(disk(0, 0, 12));
    auto arr = arrangement(ms);
    std::vector<BettiSet> sets = {member_cells(arr, {0}), member_cells(arr, {1}), member_cells(arr, {2})};
    auto t = build_betti_table(sets, member_cells(arr, {3}), 3);
    for (int i = 0; i <= 1; ++i) REQUIRE(mv_union_bound(t, i, 3).pass);
    REQUIRE(mv_intersection_bound(t, 0, 3, 2).pass);
  }
}

TEST_CASE("line cells") {
  auto cells = line_cells({IntervalSet::point(RealAlg(0))}, seg(-1, 1));
  REQUIRE(cells.size() == 3);
  CHECK(cells[1].I == std::vector<int>{0});
  CHECK(cells[1].set == IntervalSet::point(RealAlg(0)));
  CHECK(cells[0].I.empty());
  CHECK(cells[0].set == IntervalSet::normalize({Piece::at(XReal(-1)), Piece::open(XReal(-1), XReal(0))}));
  CHECK(line_cells({}, seg(-1, 1)).size() == 1);
}

TEST_CASE("ladders") {
  std::vector<RealAlg> pts = {RealAlg(-1), RealAlg(0), RealAlg(1)};
  auto L = admissible_ladder(pts, 2);
  REQUIRE(L.eps.size() == 2);
  CHECK(L.eps[0] < L.eps[1]);
  CHECK(L.eps[1] == frac(1, 8));  // half gap 1/2, divided by 4
  for (size_t j = 0; j < 2; ++j) CHECK(compare(L.certificate[j], L.eps[j]) > 0);
  CHECK_NOTHROW(certify_ladder(pts, L.eps));
  CHECK_THROWS_AS(certify_ladder(pts, {frac(1, 8), frac(1, 2)}), InadmissibleLadder);
  CHECK_THROWS_AS(certify_ladder(pts, {frac(1, 8), frac(1, 8)}), InadmissibleLadder);
  CHECK_THROWS_AS(certify_ladder(pts, {Q(0), frac(1, 8)}), InadmissibleLadder);
  // eps_1 must also clear the points offset by eps_2
  CHECK_THROWS_AS(certify_ladder(pts, {frac(1, 10), frac(1, 8)}), InadmissibleLadder);
}

TEST_CASE("GV replacement on the line") {
  std::vector<IntervalSet> A = {IntervalSet::point(RealAlg(0))};
  IntervalSet V = seg(-1, 1);
  auto L = admissible_ladder(line_endpoints(A, V), 2);
  auto r = gv_replace(A, V, {{}}, L);
  Q e1 = L.eps[0];
  CHECK(std::get<IntervalSet>(r.x_prime) == (seg(-1, Q(-e1)) | seg(e1, 1)));
  REQUIRE(r.trace.size() == 3);
  CHECK(std::get<IntervalSet>(r.trace[1]) == V);
  CHECK(r.before == BettiVector{2, 0});
  CHECK(r.after == BettiVector{2, 0});
  CHECK(r.closed);
  CHECK(r.bounded);

  // already closed input
  auto c = gv_replace({seg(0, 1)}, seg(-2, 2), {{0}}, admissible_ladder(line_endpoints({seg(0, 1)}, seg(-2, 2)), 2));
  CHECK(c.before == BettiVector{1, 0});
  CHECK(c.after == c.before);

  CHECK_THROWS_AS(gv_replace(A, V, {{}}, admissible_ladder(line_endpoints(A, V), 3)), InadmissibleLadder);
  EpsilonLadder bad{{frac(1, 8), frac(3, 4)}, {}};
  CHECK_THROWS_AS(gv_replace(A, V, {{}}, bad), InadmissibleLadder);
  CHECK_THROWS_AS(gv_replace(A, IntervalSet::line(), {{}}, L), UnsupportedTubes);
}

TEST_CASE("GV replacement: random line instances") {
  std::mt19937_64 rng(10);
  IntervalSet V = seg(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    int n = static_cast<int>(rng() % 4);
    std::vector<IntervalSet> A;
    for (int i = 0; i < n; ++i) A.push_back(random_segs(rng, 2, -4, 4).set());
    std::set<std::vector<int>> in_sets;
    for (auto& c : line_cells(A, V)) in_sets.insert(c.I);
    std::vector<std::vector<int>> sigma;
    for (auto& I : in_sets)
      if (rng() % 2) sigma.push_back(I);
    auto L = admissible_ladder(line_endpoints(A, V), 2 * n);
    auto r = gv_replace(A, V, sigma, L);
    INFO("trial " << trial << " X = " << std::get<IntervalSet>(r.trace[0]).str());
    REQUIRE(r.closed);
    REQUIRE(r.bounded);
    REQUIRE(r.trace.size() == static_cast<size_t>(n + 2));
    REQUIRE(std::get<IntervalSet>(r.x_prime).subset_of(V));
    REQUIRE(r.after == r.before);
  }
}

TEST_CASE("GV replacement in the plane") {
  MemberSet V = disk(0, 0, 3);
  // open unit disk: inside the disk member, off the circle member
  auto r = gv_replace_planar({circle(0, 0, 1), disk(0, 0, 1)}, V, {{1}});
  CHECK(r.before == BettiVector{1, 0});
  CHECK(r.after == BettiVector{1, 0});
  CHECK(r.closed);
  CHECK(r.bounded);
  CHECK(r.trace.size() == 4);
  CHECK(r.ladder.eps.size() == 4);

  // V minus a circle: an open disk and a half-open annulus
  auto a = gv_replace_planar({circle(0, 0, 1)}, V, {{}});
  CHECK(a.before == BettiVector{2, 1});
  CHECK(a.after == a.before);
  CHECK(a.closed);

  // 1 < |x| <= 2 from two nested disks
  auto n = gv_replace_planar({disk(0, 0, 1), disk(0, 0, 2)}, V, {{1}});
  CHECK(n.before == BettiVector{1, 1});
  CHECK(n.after == n.before);
  CHECK(n.closed);

  // two crossing circles, everything off them inside V
  auto x = gv_replace_planar({circle(0, 0, 1), circle(1, 0, 1)}, V, {{}});
  CHECK(x.before == BettiVector{4, 1});
  CHECK(x.after == x.before);

  auto fixed = gv_replace_planar({circle(0, 0, 1)}, V, {{}}, {frac(1, 64), frac(1, 16)});
  CHECK(fixed.after == BettiVector{2, 1});
  CHECK_THROWS_AS(gv_replace_planar({circle(0, 0, 1)}, V, {{}}, {frac(1, 2), Q(2)}), InadmissibleLadder);
  CHECK_THROWS_AS(gv_replace_planar({instantiate(templates::hyperplane(), {1, 0, 0})}, V, {{}}), UnsupportedTubes);
  CHECK_THROWS_AS(gv_replace_planar({circle(0, 0, 1)}, circle(0, 0, 3), {{}}), UnsupportedTubes);
}

TEST_CASE("annulus reduction") {
  auto r = annulus_reduction({IntervalSet::point(RealAlg(0))}, seg(-1, 1), frac(1, 4), frac(1, 8));
  CHECK(r.components.size() == 3);
  CHECK(r.cells.size() == 3);
  CHECK(r.components[1] == seg(frac(-1, 8), frac(1, 8)));
  CHECK(r.match == std::vector<int>{0, 1, 2});

  auto e = annulus_reduction({}, seg(-1, 1), frac(1, 4), frac(1, 8));
  CHECK(e.components.size() == 1);
  CHECK(e.components[0] == seg(-1, 1));

  std::vector<IntervalSet> two = {IntervalSet::point(RealAlg(0)), IntervalSet::point(RealAlg(1))};
  auto t = annulus_reduction(two, seg(-2, 2), frac(1, 8), frac(1, 16));
  CHECK(t.components.size() == 5);
  CHECK(t.cells.size() == 5);
  CHECK_THROWS_AS(annulus_reduction(two, seg(-2, 2), frac(1, 2), frac(1, 4)), EpsilonTooLarge);
  CHECK_THROWS_AS(annulus_reduction(two, seg(-2, 2), frac(1, 8), frac(1, 4)), RadiusOrder);

  std::mt19937_64 rng(11);
  IntervalSet V = seg(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(rng() % 4);
    std::vector<IntervalSet> A;
    for (int i = 0; i < n; ++i) A.push_back(random_segs(rng, 2, -4, 4).set());
    // endpoints are half-integers, so every gap is at least 1/2
    auto a = annulus_reduction(A, V, frac(1, 8), frac(1, 16));
    REQUIRE(a.components.size() == a.cells.size());
    long total = 0;
    for (auto& K : a.components) total += b0_1d(K);
    REQUIRE(total == static_cast<long>(a.cells.size()));
  }
}

TEST_CASE("tube family decomposition") {
  // [-2,-2e], (-2e,-e), {-e}, (-e,0), [0,1], (1,1+e), {1+e}, (1+e,1+2e), [1+2e,2]
  auto r = tube_family_decomposition({seg(0, 1)}, seg(-2, 2), {frac(1, 8)}, {seg(0, 1), IntervalSet()});
  CHECK(r.family.size() == 3);
  CHECK(r.census == 9);
  CHECK(r.b_tests == std::vector<long>{1, 0});
  CHECK(r.ok);

  std::vector<IntervalSet> crossing = {seg(0, 2), seg(1, 3)};
  auto c = tube_family_decomposition(crossing, seg(-1, 4), {frac(1, 8), frac(1, 64)}, {seg(0, 3), seg(1, 2)});
  CHECK(c.b_tests == std::vector<long>{1, 1});
  CHECK(c.ok);
  CHECK(c.census >= 9);

  CHECK_THROWS_AS(tube_family_decomposition({seg(0, 1)}, seg(-2, 2), {frac(1, 2)}, {}), EpsilonTooLarge);
  CHECK_THROWS_AS(tube_family_decomposition(crossing, seg(-1, 4), {frac(1, 8), frac(1, 32)}, {}), EpsilonTooLarge);
  CHECK_THROWS_AS(tube_family_decomposition({seg(0, 1)}, seg(-2, 2), {frac(1, 8)},
                                            {IntervalSet::open(XReal(0), XReal(1))}),
                  NotClosed);
}
