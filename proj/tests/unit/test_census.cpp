#include <random>

#include "doctest.h"
#include "omin/census.hpp"

using namespace omin;

namespace {

Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("realize_on_line agrees with pointwise evaluation") {
  CHECK(realize_on_line(instantiate(templates::segment(), {0, 2})) == IntervalSet::parse("{[0,2]}"));
  CHECK(realize_on_line(instantiate(templates::interval(), {0, 2})) == IntervalSet::parse("{(0,2)}"));
  CHECK(realize_on_line(instantiate(templates::interval(), {2, 0})).is_empty());
  auto t = FamilyTemplate::parse("k=1 l=1 closed=false\n(or (< (* x1 x1) y1) (= x1 3))");
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    MemberSet m = instantiate(t, {frac(static_cast<long>(rng() % 9), 2)});
    IntervalSet s = realize_on_line(m);
    for (long i = -40; i <= 40; ++i) {
      Q x = frac(i, 8);
      REQUIRE(s.contains(x) == (sign_eval(m, {x}, 53).member == Tri::True));
    }
  }
}

TEST_CASE("betti_type_census examples") {
  std::mt19937_64 rng(41);
  std::vector<ParameterPoint> circles;
  for (int i = 0; i < 5; ++i)
    circles.push_back({frac(static_cast<long>(rng() % 9) - 4, 2), frac(static_cast<long>(rng() % 9) - 4, 2),
                       frac(1 + static_cast<long>(rng() % 8), 2)});
  auto c = betti_type_census(templates::circle(), circles);
  CHECK(c.size() == 1);
  CHECK(c.distinct.count({1, 1}) == 1);
  CHECK(c.max_b == 2);

  circles.push_back({1, 1, 0});
  auto c2 = betti_type_census(templates::circle(), circles);
  CHECK(c2.size() == 2);
  CHECK(c2.distinct.at({1, 0}) == 1);

  auto iv = betti_type_census(templates::interval(), {{0, 1}, {3, 2}, {-1, 5}});
  CHECK(iv.size() == 2);
  CHECK(iv.distinct.at({1, 0}) == 2);
  CHECK(iv.distinct.at({0, 0}) == 1);
}

TEST_CASE("census size does not grow with the sample") {
  std::mt19937_64 rng(43);
  auto draw = [&](int count) {
    std::vector<ParameterPoint> ps;
    for (int i = 0; i < count; ++i)
      ps.push_back({frac(static_cast<long>(rng() % 9) - 4, 2), frac(static_cast<long>(rng() % 9) - 4, 2),
                    frac(static_cast<long>(rng() % 9) - 4, 2)});
    return ps;
  };
  // disks of signed radius: r^2 = 0 gives a point, otherwise a disk
  auto small = betti_type_census(templates::disk(), draw(100));
  auto large = betti_type_census(templates::disk(), draw(200));
  CHECK(small.size() <= 2);
  CHECK(large.size() == small.size());
  CHECK(large.max_b == 1);
}
