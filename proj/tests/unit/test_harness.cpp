#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "omin/census.hpp"
#include "omin/harness.hpp"

using namespace omin;

namespace {

BoundFormula bf(BoundId id, BoundParams p) { return {id, p}; }

// binom(n, j) from Pascal's triangle
Q pascal(long n, long j) {
  std::vector<Q> row{1};
  for (long t = 0; t < n; ++t) {
    std::vector<Q> next(row.size() + 1, 0);
    for (size_t s = 0; s < row.size(); ++s) {
      next[s] += row[s];
      next[s + 1] += row[s];
    }
    row = next;
  }
  return j < static_cast<long>(row.size()) ? row[j] : Q(0);
}

// Cells of a segment arrangement on the line: walk the regions left to right
// (open gaps and endpoints) and count maximal runs with the same index set.
long segment_cells(const std::vector<std::pair<Q, Q>>& segs) {
  std::vector<Q> pts;
  for (auto& [a, b] : segs) {
    pts.push_back(a);
    pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Q> probes;
  if (pts.empty()) return 1;
  probes.push_back(pts.front() - 1);
  for (size_t t = 0; t < pts.size(); ++t) {
    probes.push_back(pts[t]);
    probes.push_back(t + 1 < pts.size() ? Q((pts[t] + pts[t + 1]) / 2) : Q(pts[t] + 1));
  }
  long runs = 0;
  std::vector<bool> prev;
  for (auto& x : probes) {
    std::vector<bool> I;
    for (auto& [a, b] : segs) I.push_back(a <= x && x <= b);
    if (runs == 0 || I != prev) ++runs;
    prev = I;
  }
  return runs;
}

}  // namespace

TEST_CASE("bound evaluators") {
  // term by term: (1 + 3*4 + 3*16) * 2 * 3
  CHECK(evaluate_bound(bf(BoundId::EQ2, {.n = 3, .k = 2, .i = 0, .d = 2})) == 366);
  CHECK(evaluate_bound(bf(BoundId::BETTI_MCELLS, {.n = 10, .k = 2, .m = 5, .C = 1})) == 15);
  CHECK(evaluate_bound(bf(BoundId::CDCD, {.n = 4, .k = 1, .C = 5})) == 80);
  CHECK(evaluate_bound(bf(BoundId::EQ1, {.n = 2, .k = 2, .d = 3, .C = 1})) == 144);
  CHECK(evaluate_bound(bf(BoundId::PROJECTION, {.n = 3, .k1 = 2, .k2 = 2, .C = 1})) == 729);
  CHECK(evaluate_bound(bf(BoundId::ASETS_GENERAL, {.n = 3, .kp = 2, .C = 2})) == 162);
  CHECK(evaluate_bound(bf(BoundId::ASETS_IMPROVED, {.n = 3, .kp = 2, .C = 2})) == 18);
  CHECK(evaluate_bound(bf(BoundId::VARIETY, {.n = 5, .k = 2, .kp = 1, .i = 0, .C = Q(1, 2)})) == Q(5, 2));

  CHECK_THROWS_AS(evaluate_bound(bf(BoundId::EQ2, {.n = 3, .k = 2, .i = 3, .d = 2})), InvalidParameters);
  CHECK_THROWS_AS(evaluate_bound(bf(BoundId::BETTI_KI, {.n = -1, .k = 2, .C = 1})), InvalidParameters);
  CHECK_THROWS_AS(evaluate_bound(bf(BoundId::CDCD, {.n = 4, .k = 1, .C = 0})), InvalidParameters);
  CHECK_THROWS_AS(evaluate_bound(bf(BoundId::VARIETY, {.n = 4, .k = 1, .kp = 2, .C = 1})), InvalidParameters);
  CHECK_THROWS_AS(parse_bound_id("EQ3"), InvalidParameters);
  for (auto id : all_bounds()) CHECK(parse_bound_id(bound_name(id)) == id);
}

TEST_CASE("EQ2 against the Pascal oracle, and monotonicity of every bound") {
  for (long n = 0; n <= 12; ++n)
    for (long d = 1; d <= 4; ++d)
      for (long k = 1; k <= 3; ++k)
        for (long i = 0; i <= k; ++i) {
          Q want = 0;
          for (long j = 0; j <= k - i; ++j) {
            Q term = pascal(n, j);
            for (long t = 0; t < j; ++t) term *= 4;
            term *= d;
            for (long t = 0; t < k - 1; ++t) term *= 2 * d - 1;
            want += term;
          }
          REQUIRE(evaluate_bound(bf(BoundId::EQ2, {.n = n, .k = k, .i = i, .d = d})) == want);
          if (d > 1) REQUIRE(evaluate_bound(bf(BoundId::EQ2, {.n = n, .k = k, .i = i, .d = d - 1})) <= want);
        }
  std::mt19937_64 rng(41);
  for (auto id : all_bounds())
    for (int trial = 0; trial < 50; ++trial) {
      BoundParams p;
      p.k = 1 + static_cast<long>(rng() % 3);
      p.kp = static_cast<long>(rng() % (p.k + 1));
      p.i = static_cast<long>(rng() % (std::min(p.k, p.kp) + 1));
      p.k1 = 1 + static_cast<long>(rng() % 2);
      p.k2 = 1 + static_cast<long>(rng() % 2);
      p.d = 1 + static_cast<long>(rng() % 4);
      p.m = static_cast<long>(rng() % 10);
      p.C = Q(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4));
      p.C.canonicalize();
      Q prev = -1;
      for (long n = 0; n <= 20; ++n) {
        p.n = n;
        Q v = evaluate_bound({id, p});
        REQUIRE(v >= prev);
        prev = v;
      }
    }
}

TEST_CASE("exponent fits") {
  std::vector<std::pair<double, double>> sq, circ, flat;
  for (double n : {8.0, 16.0, 32.0, 64.0}) {
    sq.push_back({n, n * n});
    circ.push_back({n, 4 * n * n - 4 * n + 2});
    flat.push_back({n, 7});
  }
  CHECK(std::abs(fit_exponent(sq).slope - 2) <= 1e-9);
  CHECK(fit_exponent(sq).max_residual <= 1e-9);
  // n f'/f = (8n^2 - 4n) / (4n^2 - 4n + 2) lies in (2, 2.07) for n >= 8, so
  // the fitted slope does too
  double s = fit_exponent(circ).slope;
  CHECK(s > 2.0);
  CHECK(s < 2.07);
  CHECK(std::abs(fit_exponent(flat).slope) <= 1e-12);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 2}}), DegenerateSamples);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 0}, {3, 1}}), DegenerateSamples);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {1, 2}, {3, 1}}), DegenerateSamples);
}

TEST_CASE("experiment configuration") {
  auto c = ExperimentConfig::parse(
      "# scaling run\nfamily = segments\nn = 2, 4, 8\ntrials = 3\nseed = 17\nbox = 5\ndenom = 2\ncdcd = false\n"
      "c_b0 = 7/2\nout = seg.csv\n");
  CHECK(c.family == "segments");
  CHECK(c.n_schedule == std::vector<int>{2, 4, 8});
  CHECK(c.trials == 3);
  CHECK(c.seed == 17);
  CHECK(!c.cdcd);
  CHECK(c.cb0() == Q(7, 2));
  CHECK(c.cb1() == calibrated_c_b1("segments"));
  CHECK(c.out == "seg.csv");
  CHECK_THROWS_AS(ExperimentConfig::parse("n = 4, 2\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("trials = 0\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("family = spheres\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("n = four\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("seed 3\n"), ConfigError);
}

TEST_CASE("segment experiments against the run-length oracle") {
  auto c = ExperimentConfig::parse("family = segments\nn = 4, 8, 16, 32\ntrials = 4\nseed = 3\nbox = 20\ndenom = 2\n");
  auto rep = run_experiment(c);
  REQUIRE(rep.rows.size() == 16);
  for (auto& row : rep.rows) {
    REQUIRE(row.status == "OK");
    auto members = random_members(c, row.n, row.seed);
    std::vector<std::pair<Q, Q>> segs;
    for (auto& m : members) segs.push_back({m.parameter[0], m.parameter[1]});
    REQUIRE(row.sum_b0 == segment_cells(segs));
    REQUIRE(row.sum_b0 <= 2 * row.n + 1);
    REQUIRE(row.sum_b1 == 0);
    REQUIRE(row.bound_ok);
  }
  REQUIRE(rep.fit_b0);
  CHECK(rep.fit_b0->slope <= 1.1);
  CHECK(!rep.fit_b1);  // no b1 at all on the line
  CHECK(std::isnan(rep.rows[0].fit_slope_b1));
}

TEST_CASE("circle experiments") {
  auto c = ExperimentConfig::parse("family = circles\nn = 0, 2, 4, 6\ntrials = 2\nseed = 5\nbox = 6\n");
  auto rep = run_experiment(c);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.rows[0].sum_b0 == 1);
  CHECK(rep.rows[0].sum_b1 == 0);
  CHECK(rep.rows[0].cdcd_cells == 1);
  for (auto& row : rep.rows) {
    REQUIRE(row.status == "OK");
    REQUIRE(row.bound_ok);
    if (row.n > 0) REQUIRE(row.sum_b0 <= 4 * row.n * row.n - 4 * row.n + 2 + 1);  // one circle has 3 cells
    // the cell count of the census and the cdcd refinement
    REQUIRE(row.cdcd_cells >= row.cells);
  }
  CHECK(rep.all_bounds_ok);

  // bit-identical reruns; different seeds give different parameters
  CHECK(experiment_csv(run_experiment(c)) == experiment_csv(rep));
  auto c2 = c;
  c2.seed = 6;
  CHECK(random_members(c2, 4, trial_seed(c2.seed, 4, 0))[0].parameter !=
        random_members(c, 4, trial_seed(c.seed, 4, 0))[0].parameter);
  auto csv = experiment_csv(rep);
  CHECK(csv.rfind("n,trial,seed,sum_b0,sum_b1,cells,cdcd_cells,fit_slope_b0,fit_slope_b1,bound_ok,status\n", 0) == 0);
  CHECK(experiment_json(rep).find("\"sum_b0\": 1") != std::string::npos);
}

TEST_CASE("report writers and row parsing") {
  auto rows = parse_rational_rows("# x, y\n1/2, 3\n\n-1, 0.25  # trailing\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<Q>{Q(1, 2), Q(3)});
  CHECK(rows[1][1] == Q(1, 4));
  CHECK_THROWS_AS(parse_rational_rows("1, x\n"), ConfigError);

  RamseyRow rr;
  rr.n = 10;
  rr.r = 4;
  rr.seed = 2;
  rr.h.f1 = {1, 2};
  rr.h.f2 = {3, 4, 5};
  rr.h.eps_achieved = Q(1, 5);
  rr.h.attempts = 1;
  CHECK(ramsey_csv({rr}) == "n,r,seed,eps_achieved,polarity,f1_size,f2_size,retries\n10,4,2,1/5,NONE,2,3,0\n");

  CensusRow cr;
  cr.n = 2;
  cr.m = {4, 1, 5, 2};
  CHECK(census_csv({cr}).rfind("n,seed,total_cells,sum_b0,sum_b1,max_cell_b,wall_time_ms\n2,0,5,4,1,2,", 0) == 0);

  ProjectionReport pr;
  pr.lines = {{0, 1, 1, true}, {1, 0, 2, true}};
  CHECK(projection_csv({{"a", pr}}) == "instance_id,q,lhs,rhs,pass\na,0,1,1,true\na,1,0,2,true\n");
}
