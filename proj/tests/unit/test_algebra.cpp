#include <cmath>
#include <random>

#include "doctest.h"
#include "omin/bpoly.hpp"
#include "omin/numfield.hpp"
#include "omin/real_algebraic.hpp"

using namespace omin;

namespace {

UPoly P(std::initializer_list<long> cs) {
  std::vector<Q> v;
  for (long c : cs) v.emplace_back(c);
  return UPoly(v);
}

// (x - cx)^2 + (y - cy)^2 - r2
BPoly circle(Q cx, Q cy, Q r2) {
  BPoly X = BPoly::x() - BPoly(cx), Y = BPoly::y() - BPoly(cy);
  return X * X + Y * Y - BPoly(r2);
}

}  // namespace

TEST_CASE("simplest rationals") {
  CHECK(simplest_closed(Q(1, 3), Q(2, 3)) == Q(1, 2));
  CHECK(simplest_closed(Q(2), Q(5)) == Q(2));
  CHECK(simplest_closed(Q(-5), Q(-2)) == Q(-2));
  CHECK(simplest_closed(Q(-1), Q(1)) == Q(0));
  CHECK(simplest_open(Q(0), Q(1)) == Q(1, 2));
  CHECK(simplest_open(Q(1), Q(2)) == Q(3, 2));
  CHECK(simplest_open(Q(3, 10), Q(1, 3)) == Q(4, 13));
  // brute oracle: smallest denominator in the open interval
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    long a = static_cast<long>(rng() % 200) - 100, b = a + 1 + static_cast<long>(rng() % 50);
    long d = 1 + static_cast<long>(rng() % 30);
    Q lo(a, d), hi(b, d);
    lo.canonicalize();
    hi.canonicalize();
    Q s = simplest_open(lo, hi);
    CHECK(lo < s);
    CHECK(s < hi);
    for (long den = 1; den < s.get_den().get_si(); ++den) {
      Q k = ceil_q(lo * den);
      if (k == lo * den) k += 1;
      CHECK(Q(k / den) >= hi);
    }
  }
}

TEST_CASE("parse rationals") {
  CHECK(parse_rational("3") == Q(3));
  CHECK(parse_rational("-3/4") == Q(-3, 4));
  CHECK(parse_rational("0.25") == Q(1, 4));
  CHECK(parse_rational("1e-3") == Q(1, 1000));
  CHECK(parse_rational("-2.5e1") == Q(-25));
}

TEST_CASE("root isolation against floating roots") {
  // (x-1)(x-2)(x+3)(x^2-2)
  UPoly p = UPoly::linear_root(1) * UPoly::linear_root(2) * UPoly::linear_root(-3) * P({-2, 0, 1});
  auto rs = isolate_real_roots(p);
  REQUIRE(rs.size() == 5);
  double want[] = {-3, -std::sqrt(2.0), 1, std::sqrt(2.0), 2};
  for (int i = 0; i < 5; ++i) {
    CHECK(rs[i].lo.get_d() <= want[i] + 1e-12);
    CHECK(rs[i].hi.get_d() >= want[i] - 1e-12);
  }
  CHECK(count_real_roots(p * p) == 5);
  CHECK(count_real_roots(P({1, 0, 1})) == 0);
}

TEST_CASE("random products of linear factors isolate exactly") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<Q> roots;
    UPoly p(1);
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      Q r(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
      r.canonicalize();
      roots.push_back(r);
      p = p * UPoly::linear_root(r);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    auto rs = isolate_real_roots(p);
    REQUIRE(rs.size() == roots.size());
    for (size_t i = 0; i < rs.size(); ++i) {
      RealAlg a = RealAlg::from_root(p, rs[i]);
      CHECK(compare(a, roots[i]) == 0);
    }
  }
}

TEST_CASE("resultant of two circles has degree 2") {
  BPoly a = circle(0, 0, 1), b = circle(1, 0, 1);
  UPoly r = resultant_y(a, b);
  CHECK(r.degree() == 2);
  // both circles meet over x = 1/2
  CHECK(r.eval(Q(1, 2)) == 0);
  UPoly d = discriminant_y(a);
  auto rs = RealAlg::roots_of(d);
  REQUIRE(rs.size() == 2);
  CHECK(compare(rs[0], Q(-1)) == 0);
  CHECK(compare(rs[1], Q(1)) == 0);
}

TEST_CASE("bivariate gcd and exact division") {
  BPoly a = circle(0, 0, 1), b = BPoly::y() - BPoly::x();
  BPoly ab = a * b;
  BPoly g = gcd(ab, b * b);
  CHECK(normalize(g) == normalize(b));
  CHECK(exact_div(ab, b) == a);
  CHECK(divides(b, ab));
  CHECK_FALSE(divides(a, b));
  CHECK(normalize(squarefree_primitive(a * a * b)) == normalize(a * b));
}

TEST_CASE("real algebraic compare and arithmetic") {
  auto r2 = RealAlg::roots_of(P({-2, 0, 1}));
  auto r3 = RealAlg::roots_of(P({-3, 0, 1}));
  CHECK(r2[1] < r3[1]);
  CHECK(r2[0] > r3[0]);
  CHECK(compare(r2[1], Q(141, 100)) > 0);
  CHECK(compare(r2[1], Q(142, 100)) < 0);
  RealAlg s = add(r2[1], r3[1]);
  CHECK(std::abs(s.approx() - (std::sqrt(2.0) + std::sqrt(3.0))) < 1e-12);
  RealAlg z = sub(r2[1], r2[1]);
  CHECK(compare(z, Q(0)) == 0);
  // sqrt(8) = 2 sqrt(2) found from a different polynomial
  auto r8 = RealAlg::roots_of(P({-8, 0, 1}));
  CHECK(r8[1] == r2[1].mul(Q(2)));
  CHECK(r2[1].sign_of(P({-2, 0, 1})) == 0);
  CHECK(r2[1].sign_of(P({-1, 1})) > 0);
}

TEST_CASE("arithmetic in Q(sqrt 2)") {
  auto r = RealAlg::roots_of(P({-2, 0, 1}));
  AlgCtx k(r[1]);
  UPoly a = UPoly::x();  // alpha
  CHECK(k.sign(a * a - UPoly(2)) == 0);
  CHECK(k.sign(a - UPoly(Q(3, 2))) < 0);
  UPoly inv = k.inv(a);
  CHECK(k.is_zero(k.mul(inv, a) - UPoly(1)));
  // y^2 - alpha has roots +-2^(1/4)
  APoly f = {-a, UPoly(), UPoly(1)};
  auto rs = a_isolate(k, f);
  REQUIRE(rs.size() == 2);
  double q = std::pow(2.0, 0.25);
  CHECK(rs[1].lo.get_d() <= q);
  CHECK(rs[1].hi.get_d() >= q);
  // compare y^2 - alpha's positive root with y - 6/5 (2^(1/4) ~ 1.189)
  APoly g = {UPoly(Q(-6, 5)), UPoly(1)};
  auto gs = a_isolate(k, g);
  REQUIRE(gs.size() == 1);
  CHECK(a_compare_roots(k, f, rs[1], g, gs[0]) < 0);
  CHECK(a_sign_at_root(k, f, rs[1], g) < 0);
  // same root via y^4 - 2
  APoly h = {UPoly(-2), UPoly(), UPoly(), UPoly(), UPoly(1)};
  auto hs = a_isolate(k, h);
  REQUIRE(hs.size() == 2);
  CHECK(a_compare_roots(k, f, rs[1], h, hs[1]) == 0);
  CHECK(a_sign_at_root(k, f, rs[0], h) == 0);
}

TEST_CASE("dynamic splitting of a reducible modulus") {
  // alpha = 1 given through (x-1)(x^2-3) on interval (0, 3/2)
  UPoly p = UPoly::linear_root(1) * P({-3, 0, 1});
  RealAlg al = RealAlg::from_root(p, Q(0), Q(3, 2));
  CHECK(compare(al, Q(1)) == 0);
  auto r = RealAlg::roots_of(p);
  AlgCtx k(r[2]);  // sqrt 3
  CHECK_FALSE(k.is_zero(UPoly::x() - UPoly(1)));
  CHECK(k.sign(UPoly::x() * UPoly::x() - UPoly(3)) == 0);
}
