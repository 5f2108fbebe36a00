#include <random>

#include "doctest.h"
#include "omin/family.hpp"

using namespace omin;

namespace {

Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

Q rand_q(std::mt19937_64& rng, long span, long den) {
  return frac(static_cast<long>(rng() % (2 * span * den + 1)) - span * den, den);
}

std::vector<std::vector<Q>> pts(std::initializer_list<std::pair<long, long>> xy) {
  std::vector<std::vector<Q>> out;
  for (auto [x, y] : xy) out.push_back({Q(x), Q(y)});
  return out;
}

bool in_disk(const std::vector<Q>& p, const std::vector<Q>& w) {
  Q dx = p[0] - w[0], dy = p[1] - w[1];
  return dx * dx + dy * dy <= w[2];
}

}  // namespace

TEST_CASE("formula parse and print round trip") {
  for (std::string t : {"(= (+ (^ x1 2) (^ x2 2) (- (^ y3 2))) 0)", "(and (> x1 y1) (not (<= x1 -3/4)))",
                        "(or true (!= (* 2 x1 x2) (exp (log x1))))"}) {
    Formula f = parse_formula(t);
    CHECK(f.str() == t);
    CHECK(parse_formula(f.str()) == f);
  }
  CHECK_THROWS_AS(parse_formula("(= x1"), ParseError);
  CHECK_THROWS_AS(parse_formula("(= x1 0) x2"), ParseError);
  CHECK_THROWS_AS(parse_formula("(foo x1 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(= (^ x1 y1) 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(= x0 0)"), ParseError);
}

TEST_CASE("template invariants") {
  CHECK_THROWS_AS(FamilyTemplate::parse("k=2 l=1 closed=true\n(< x1 y1)"), InvalidTemplate);
  CHECK_NOTHROW(FamilyTemplate::parse("k=2 l=1 closed=true\n(not (< x1 y1))"));
  CHECK_THROWS_AS(FamilyTemplate::parse("k=1 l=1 closed=false\n(= x2 y1)"), InvalidTemplate);
  CHECK_THROWS_AS(FamilyTemplate::parse("k=1 l=1 closed=false\n(= x1 y2)"), InvalidTemplate);
  CHECK_THROWS_AS(FamilyTemplate::parse("k=1 l=1 closed=false\n(= (exp x1) y1)"), InvalidTemplate);
  CHECK_THROWS_AS(FamilyTemplate::parse("l=1 closed=false\n(= x1 y1)"), ParseError);
  auto e = templates::exp_monomial();
  CHECK(e.has_numeric_atoms());
  CHECK(FamilyTemplate::parse(e.str()).str() == e.str());
}

TEST_CASE("instantiate examples") {
  MemberSet h = instantiate(templates::hyperplane(), {1, 0, 0});
  CHECK(h.formula_x.str() == "(= x1 0)");
  REQUIRE(h.atoms.size() == 1);
  CHECK(h.atoms[0].poly == MPoly::var(2, 0));

  MemberSet c = instantiate(templates::circle(), {0, 0, 1});
  MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
  CHECK(c.atoms[0].poly == x * x + y * y - MPoly::constant(2, 1));
  CHECK_FALSE(c.numeric());

  MemberSet e = instantiate(templates::exp_monomial(), {1, -2, 1, 0});
  CHECK(e.numeric());
  CHECK_THROWS_AS(instantiate(templates::circle(), {0, 0}), DimensionMismatch);
}

TEST_CASE("sign_eval examples") {
  MemberSet c = instantiate(templates::circle(), {0, 0, 1});
  auto a = sign_eval(c, {0, 0}, 53);
  CHECK(a.signs[0] == kNeg);
  CHECK(a.member == Tri::False);
  auto b = sign_eval(c, {frac(3, 5), frac(4, 5)}, 53);
  CHECK(b.signs[0] == kZero);
  CHECK(b.member == Tri::True);

  auto t = FamilyTemplate::parse("k=1 l=1 closed=false name=e\n(box (x1 -4 4))\n(> (exp x1) 2)");
  MemberSet m = instantiate(t, {0});
  CHECK(sign_eval(m, {1}, 2).signs[0] == kUnknown);
  CHECK(sign_eval(m, {1}, 2).member == Tri::Unknown);
  CHECK(sign_eval(m, {1}, 64).signs[0] == kPos);
  CHECK(sign_eval(m, {1}, 64).member == Tri::True);
  CHECK(sign_eval(m, {0}, 64).signs[0] == kNeg);
  CHECK_THROWS_AS(sign_eval(m, {5}, 64), DomainViolation);
  CHECK_THROWS_AS(sign_eval(m, {1, 1}, 64), DimensionMismatch);

  // x^1 - 2 x^0 on x > 0: the exponents become exp(log x) and exp(0)
  MemberSet em = instantiate(templates::exp_monomial(), {1, -2, 1, 0});
  CHECK(sign_eval(em, {3}, 64).signs[1] == kPos);
  CHECK(sign_eval(em, {1}, 64).signs[1] == kNeg);
  CHECK(sign_eval(em, {2}, 64).member != Tri::False);
}

TEST_CASE("polynomial signs are precision independent") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    MemberSet d = instantiate(templates::disk(), {rand_q(rng, 3, 4), rand_q(rng, 3, 4), rand_q(rng, 2, 3)});
    std::vector<Q> p = {rand_q(rng, 4, 8), rand_q(rng, 4, 8)};
    auto lo = sign_eval(d, p, 2), hi = sign_eval(d, p, 300);
    REQUIRE(lo.signs == hi.signs);
    REQUIRE(lo.member == hi.member);
    REQUIRE(lo.signs[0] != kUnknown);
  }
}

TEST_CASE("union of families") {
  auto circ = templates::circle(), line = templates::hyperplane(), seg = templates::segment();
  FamilyTemplate u1 = union_of_families({circ});
  CHECK(u1.l == 4);
  FamilyTemplate u2 = union_of_families({line, circ});
  CHECK(u2.l == 5);
  MemberSet direct = instantiate(circ, {1, 2, 3});
  MemberSet via = instantiate(u2, {1, 2, 3, 0, 1});
  CHECK(via.formula_x == direct.formula_x);
  CHECK(instantiate(u2, {1, 2, 3, 1, 0}).formula_x == instantiate(line, {1, 2, 3}).formula_x);
  // off the unit vectors the fiber is empty
  CHECK(instantiate(u2, {1, 2, 3, 1, 1}).formula_x.kind == Formula::False);

  FamilyTemplate u3 = union_of_families({circ, templates::disk(), line});
  CHECK(u3.l == 6);
  CHECK(u3.closed);
  CHECK(u3.formula.syntactically_closed());
  CHECK_THROWS_AS(union_of_families({circ, seg}), AmbientMismatch);

  // round trip by sign agreement on random points
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    std::vector<Q> y = {rand_q(rng, 2, 2), rand_q(rng, 2, 2), rand_q(rng, 2, 2)};
    MemberSet a = instantiate(templates::disk(), y);
    std::vector<Q> ye = y;
    ye.push_back(1);
    MemberSet b = instantiate(union_of_families({templates::disk()}), ye);
    std::vector<Q> p = {rand_q(rng, 3, 4), rand_q(rng, 3, 4)};
    REQUIRE(sign_eval(a, p, 53).member == sign_eval(b, p, 53).member);
  }
}

TEST_CASE("shatter examples") {
  auto disk = templates::disk();
  CHECK(shatter_check(disk, pts({{0, 0}, {1, 0}, {0, 1}})));
  CHECK_FALSE(shatter_check(disk, pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
  CHECK(shatter_check(disk, {}));
  CHECK(shatter_check(templates::circle(), {}));
  CHECK_THROWS_AS(shatter_check(templates::circle(), pts({{0, 0}})), NoRealizationOracle);
  // the unrealizable pair of the square is a diagonal
  auto sq = pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK_FALSE(disk_realizes(sq, 0b0101));
  CHECK(disk_realizes(sq, 0b0011));

  auto hp = templates::halfplane();
  CHECK(shatter_check(hp, pts({{0, 0}, {1, 0}, {0, 1}})));
  CHECK_FALSE(shatter_check(hp, pts({{0, 0}, {2, 0}, {0, 2}, {1, 1}})));
  CHECK_FALSE(shatter_check(hp, pts({{0, 0}, {1, 0}, {2, 0}})));

  auto seg = templates::segment();
  CHECK(shatter_check(seg, {{Q(0)}, {Q(1)}}));
  CHECK_FALSE(shatter_check(seg, {{Q(0)}, {Q(1)}, {Q(2)}}));
}

TEST_CASE("disk realizability against witnesses and a grid search") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    int n = 3 + static_cast<int>(rng() % 3);
    std::vector<std::vector<Q>> p;
    while (static_cast<int>(p.size()) < n) {
      std::vector<Q> q = {Q(static_cast<long>(rng() % 5) - 2), Q(static_cast<long>(rng() % 5) - 2)};
      if (std::find(p.begin(), p.end(), q) == p.end()) p.push_back(q);
    }
    std::vector<bool> grid(1u << n, false);
    // closed disks centred on a grid, radius through one of the points
    for (long cx = -24; cx <= 24; ++cx)
      for (long cy = -24; cy <= 24; ++cy) {
        std::vector<Q> c = {frac(cx, 8), frac(cy, 8)};
        for (auto& r : p) {
          Q dx = r[0] - c[0], dy = r[1] - c[1];
          std::vector<Q> w = {c[0], c[1], dx * dx + dy * dy};
          unsigned s = 0;
          for (int i = 0; i < n; ++i)
            if (in_disk(p[i], w)) s |= 1u << i;
          grid[s] = true;
        }
      }
    grid[0] = true;
    for (unsigned s = 0; s < (1u << n); ++s) {
      std::vector<Q> w;
      bool ok = disk_realizes(p, s, &w);
      if (grid[s]) REQUIRE(ok);
      if (!ok) continue;
      REQUIRE(w[2] >= 0);
      for (int i = 0; i < n; ++i) REQUIRE(in_disk(p[i], w) == (((s >> i) & 1u) != 0));
    }
  }
}

TEST_CASE("shattering is monotone under taking subsets") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 80; ++t) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<std::vector<Q>> p;
    while (static_cast<int>(p.size()) < n) {
      std::vector<Q> q = {rand_q(rng, 2, 2), rand_q(rng, 2, 2)};
      if (std::find(p.begin(), p.end(), q) == p.end()) p.push_back(q);
    }
    for (auto& tmpl : {templates::disk(), templates::halfplane()}) {
      if (!shatter_check(tmpl, p)) continue;
      for (int drop = 0; drop < n; ++drop) {
        auto sub = p;
        sub.erase(sub.begin() + drop);
        REQUIRE(shatter_check(tmpl, sub));
      }
    }
  }
}
