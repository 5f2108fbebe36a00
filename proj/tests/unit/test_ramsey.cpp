#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "omin/ramsey.hpp"

using namespace omin;

namespace {

Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

std::vector<std::vector<Q>> random_points(std::mt19937_64& rng, int n, long box, long denom) {
  std::vector<std::vector<Q>> pts;
  for (int i = 0; i < n; ++i)
    pts.push_back({frac(static_cast<long>(rng() % (box * denom + 1)), denom),
                   frac(static_cast<long>(rng() % (box * denom + 1)), denom)});
  return pts;
}

Q dist2(const std::vector<Q>& a, const std::vector<Q>& b) {
  Q dx = a[0] - b[0], dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

// Crossing lists seen by a rational grid: a region with grid points both
// inside and outside one 2-cell must cross it; grid points inside rule out
// "disjoint".
void grid_consistent(const CuttingResult& c, const std::vector<std::vector<Q>>& pts, const Relation& rel, long lo,
                     long hi, long denom) {
  const Cad& cad = *c.tree.cad;
  int n = static_cast<int>(pts.size());
  std::vector<std::vector<char>> in(cad.num_cells(), std::vector<char>(n, 0)), out = in;
  for (long a = lo * denom; a <= hi * denom; ++a)
    for (long b = lo * denom; b <= hi * denom; ++b) {
      std::vector<Q> z{frac(a, denom), frac(b, denom)};
      int cell = cell_of_point(cad, z);
      for (int i = 0; i < n; ++i) (dist2(z, pts[i]) <= 4 ? in : out)[cell][i] = 1;
    }
  for (int cell = 0; cell < cad.num_cells(); ++cell) {
    std::set<int> cr(c.crossing[cell].begin(), c.crossing[cell].end());
    std::set<int> co(c.containing[cell].begin(), c.containing[cell].end());
    for (int i = 0; i < n; ++i) {
      if (in[cell][i] && out[cell][i]) REQUIRE(cr.count(i));
      if (in[cell][i]) REQUIRE((cr.count(i) || co.count(i)));
      if (out[cell][i]) REQUIRE(!co.count(i));
    }
  }
  (void)rel;
}

}  // namespace

TEST_CASE("compiled relations") {
  Relation disks = compile_relation(templates::unit_disk());
  CHECK(disks.region.closed);
  std::mt19937_64 rng(31);
  auto pts = random_points(rng, 40, 6, 4);
  for (auto& a : pts)
    for (auto& b : pts) REQUIRE(disks.holds(a, b) == (dist2(a, b) <= 4));
  // tangent unit disks meet
  CHECK(disks.holds({Q(0), Q(0)}, {Q(2), Q(0)}));
  CHECK(!disks.holds({Q(0), Q(0)}, {frac(201, 100), Q(0)}));
  auto xr = disks.x_range({Q(3), Q(1)});
  CHECK(xr.first == 1);
  CHECK(xr.second == 5);

  Relation squares = compile_relation(templates::unit_square());
  for (auto& a : pts)
    for (auto& b : pts) {
      // two side-1 squares overlap iff their projections overlap on both axes
      bool overlap = true;
      for (int t = 0; t < 2; ++t)
        overlap = overlap && std::max(a[t], b[t]) - Q(1, 2) <= std::min(a[t], b[t]) + Q(1, 2);
      REQUIRE(squares.holds(a, b) == overlap);
    }

  Relation same = compile_relation(templates::plane_point());
  CHECK(same.holds({Q(1), Q(2)}, {Q(1), Q(2)}));
  CHECK(!same.holds({Q(1), Q(2)}, {Q(1), frac(5, 2)}));

  CHECK_THROWS_AS(compile_relation(templates::circle()), NoIntersectionPredicate);
  register_intersection_predicate("circle", [] { return compile_relation(templates::unit_disk()); });
  CHECK(compile_relation(templates::circle()).name == "unit-disks");
}

TEST_CASE("one sampled region") {
  Relation disks = compile_relation(templates::unit_disk());
  std::vector<std::vector<Q>> pts = {{Q(0), Q(0)}};
  auto c = build_cutting(pts, disks, 1, 5);
  // two points and three intervals below; 1 + 3 + 5 + 3 + 1 cells
  CHECK(c.tree.num_cells() == 13);
  CHECK(c.max_crossing == 0);
  CHECK(c.points_in[c.heavy] == std::vector<int>{0});
  auto h = homogeneous_pairs(pts, disks, 1, 5);
  CHECK(h.polarity == Polarity::All);
  CHECK(h.f1 == std::vector<int>{0});
  CHECK(h.f2 == std::vector<int>{0});
  CHECK(h.eps_achieved == 1);

  // a second region three units to the right: crosses the disk's interior
  // and the cells right of it
  std::vector<std::vector<Q>> two = {{Q(0), Q(0)}, {Q(3), Q(0)}};
  auto c2 = build_cutting(two, disks, 1, 0);
  int sampled = c2.sample[0], other = 1 - sampled;
  int inside_cell = c2.point_cell[sampled];
  std::set<int> cr(c2.crossing[inside_cell].begin(), c2.crossing[inside_cell].end());
  CHECK(cr.count(other) == 1);
  grid_consistent(c2, two, disks, -6, 6, 2);
  CHECK_THROWS_AS(build_cutting(two, disks, 3, 0), std::invalid_argument);
}

TEST_CASE("sampling everything leaves nothing crossing") {
  Relation disks = compile_relation(templates::unit_disk());
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    auto pts = random_points(rng, 5, 6, 2);
    auto c = build_cutting(pts, disks, 5, trial);
    CHECK(c.max_crossing == 0);
    long placed = 0;
    for (auto& f : c.points_in) placed += static_cast<long>(f.size());
    CHECK(placed == 5);
  }
}

TEST_CASE("crossing lists: windowed and full decompositions agree and match the grid") {
  Relation disks = compile_relation(templates::unit_disk());
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 6; ++trial) {
    auto pts = random_points(rng, 12, 10, 2);
    CuttingOptions full;
    full.windowed = false;
    auto a = build_cutting(pts, disks, 3, trial);
    auto b = build_cutting(pts, disks, 3, trial, full);
    REQUIRE(a.sample == b.sample);
    for (int cell = 0; cell < a.tree.num_cells(); ++cell) {
      auto x = a.crossing[cell], y = b.crossing[cell];
      REQUIRE(x == y);
      REQUIRE(a.containing[cell] == b.containing[cell]);
    }
    grid_consistent(a, pts, disks, -3, 13, 2);
  }
}

TEST_CASE("homogeneous pairs") {
  Relation disks = compile_relation(templates::unit_disk());

  SUBCASE("complete relation") {
    std::vector<std::vector<Q>> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({frac(i, 100), frac(i * i, 100)});
    auto h = homogeneous_pairs(pts, disks, 6, 1);
    CHECK(h.polarity == Polarity::All);
    CHECK(h.eps_achieved == 1);
    CHECK(verify_homogeneity(pts, h.f1, h.f2, disks).ok);
  }

  SUBCASE("two far clusters") {
    for (int m : {10, 25}) {
      std::vector<std::vector<Q>> pts;
      for (int k = 0; k < m; ++k) pts.push_back({Q(0), frac(k, m)});
      for (int k = 0; k < m; ++k) pts.push_back({Q(100), frac(k, m)});
      for (uint64_t seed = 0; seed < 4; ++seed) {
        auto h = homogeneous_pairs(pts, disks, 10, seed);
        CHECK(h.polarity == Polarity::None);
        CHECK(4 * static_cast<long>(h.f1.size()) >= 2 * m);
        CHECK(4 * static_cast<long>(h.f2.size()) >= 2 * m);
        CHECK(h.eps_achieved >= Q(1, 4));
        auto rep = verify_homogeneity(pts, h.f1, h.f2, disks);
        CHECK(rep.ok);
        CHECK(rep.polarity == Polarity::None);
        // each family within one cluster
        for (auto* f : {&h.f1, &h.f2}) {
          bool left = (*f)[0] < m;
          for (int i : *f) CHECK((i < m) == left);
        }
      }
    }
  }

  SUBCASE("determinism") {
    std::mt19937_64 rng(34);
    auto pts = random_points(rng, 30, 12, 2);
    auto a = homogeneous_pairs(pts, disks, 6, 99);
    auto b = homogeneous_pairs(pts, disks, 6, 99);
    CHECK(a.f1 == b.f1);
    CHECK(a.f2 == b.f2);
    CHECK(a.polarity == b.polarity);
    CHECK(a.eps_achieved == b.eps_achieved);
  }
}

TEST_CASE("random instances are homogeneous with the stated sizes") {
  Relation disks = compile_relation(templates::unit_disk());
  Relation squares = compile_relation(templates::unit_square());
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng() % 20);
    int r = 1 + static_cast<int>(rng() % std::min(n, 5));
    auto pts = random_points(rng, n, 8, 2);
    const Relation& rel = trial % 3 == 2 ? squares : disks;
    auto cut = build_cutting(pts, rel, r, trial);
    auto h = homogeneous_pairs(pts, rel, r, trial);
    auto rep = verify_homogeneity(pts, h.f1, h.f2, rel);
    REQUIRE(rep.ok);
    REQUIRE(!rep.degenerate);
    REQUIRE(rep.polarity == h.polarity);
    // pigeonhole over cells, and the majority of the non-crossing regions
    REQUIRE(static_cast<long>(h.f1.size()) * cut.tree.num_cells() >= n);
    REQUIRE(2 * static_cast<long>(h.f2.size()) >= n - cut.max_crossing);
    REQUIRE(h.eps_achieved * n == static_cast<long>(std::min(h.f1.size(), h.f2.size())));
  }
}

TEST_CASE("verify_homogeneity") {
  Relation disks = compile_relation(templates::unit_disk());
  std::vector<std::vector<Q>> pts = {{Q(0), Q(0)}, {Q(1), Q(0)}, {frac(5, 2), Q(0)}};
  auto bad = verify_homogeneity(pts, {0, 1}, {2}, disks);
  CHECK(!bad.ok);
  CHECK(bad.witness == std::pair<int, int>{1, 2});
  auto far = verify_homogeneity(pts, {0}, {2}, disks);
  CHECK(far.ok);
  CHECK(far.polarity == Polarity::None);
  auto empty = verify_homogeneity(pts, {0, 1}, {}, disks);
  CHECK(empty.ok);
  CHECK(empty.degenerate);
}

TEST_CASE("cutting retries and failure") {
  Relation disks = compile_relation(templates::unit_disk());
  std::mt19937_64 rng(36);
  auto pts = random_points(rng, 12, 4, 2);
  CuttingOptions strict;
  strict.c1 = Q(1, 1000);
  strict.retries = 2;
  try {
    build_cutting(pts, disks, 2, 3, strict);
    FAIL("expected CuttingFailed");
  } catch (const CuttingFailed& e) {
    CHECK(e.best_max_crossing > 0);
  }
}

TEST_CASE("default r") {
  // beta is negative up to r = 26 with c1 = 8, after which alpha decreases
  CHECK(default_r(Q(8), Q(13)) == 27);
  CHECK(default_r(Q(1), Q(13)) == 4);
}
