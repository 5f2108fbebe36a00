#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omin/arrangement.hpp"
#include "omin/family.hpp"
#include "omin/projection.hpp"
#include "omin/ramsey.hpp"

namespace omin {

struct InvalidParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---- closed-form bounds

enum class BoundId {
  EQ1,             // n^{2k} (C d)^k
  EQ2,             // sum_{j=0}^{k-i} binom(n, j) 4^j d (2d-1)^{k-1}
  BETTI_KI,        // C n^{k-i}
  BETTI_MCELLS,    // m + C n^{k-1}
  VARIETY,         // C n^{k'-i}
  ASETS_CLOSED,    // C n^{k'}
  ASETS_GENERAL,   // C n^{2k'}
  ASETS_IMPROVED,  // C n^{k'}
  PROJECTION,      // C n^{(k1+1) k2}
  CDCD,            // C n^{2(2^k - 1)}
};
const char* bound_name(BoundId id);
BoundId parse_bound_id(const std::string& name);  // throws InvalidParameters
std::vector<BoundId> all_bounds();

struct BoundParams {
  long n = 0, k = 0, kp = 0, k1 = 0, k2 = 0, i = 0, d = 0, m = 0;
  Q C = 1;
};
struct BoundFormula {
  BoundId id;
  BoundParams p;
};

// Exact; throws InvalidParameters when a parameter the formula reads is out
// of range. Every formula is non-decreasing in n.
Q evaluate_bound(const BoundFormula& f);

// ---- exponent fits

struct ExponentFit {
  double slope = 0, intercept = 0, max_residual = 0;
};
// Least squares of log(count) against log(n); at least 3 samples, n strictly
// increasing and positive, counts positive.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples);

// ---- scaling experiments

// Key-value text, one "key = value" per line, '#' starts a comment:
//   family     circles | segments
//   n          comma-separated, strictly increasing (0 allowed)
//   trials     >= 1
//   seed       unsigned 64-bit
//   box        parameters are drawn from [0, box] on the grid 1/denom
//   denom
//   radius_min, radius_max   circles only
//   c_b0, c_b1 calibrated constants of C n^k and C n^{k-1}
//   cdcd       true | false: also count cdcd cells
//   out        CSV path used by the command-line tool
struct ExperimentConfig {
  std::string family = "circles";
  std::vector<int> n_schedule = {4, 8, 16, 32};
  int trials = 5;
  uint64_t seed = 1;
  long box = 10, denom = 4;
  Q radius_min = 1, radius_max = 4;
  std::optional<Q> c_b0, c_b1;  // default: the family's calibrated values
  bool cdcd = true;
  std::string out;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  void validate() const;  // throws ConfigError
  int k() const { return family == "segments" ? 1 : 2; }
  Q cb0() const;
  Q cb1() const;
};

// Calibrated constants per family: sum b0 <= c_b0 max(n,1)^k and
// sum b1 <= c_b1 max(n,1)^{k-1}.
Q calibrated_c_b0(const std::string& family);
Q calibrated_c_b1(const std::string& family);

// Trial stream (seed, n, trial).
uint64_t trial_seed(uint64_t seed, int n, int trial);
std::vector<MemberSet> random_members(const ExperimentConfig& cfg, int n, uint64_t seed);

struct ExperimentRow {
  int n = 0, trial = 0;
  uint64_t seed = 0;
  long sum_b0 = 0, sum_b1 = 0, cells = 0, cdcd_cells = -1;
  double fit_slope_b0 = 0, fit_slope_b1 = 0;  // NaN when fewer than 3 usable n
  bool bound_ok = false;
  std::string status = "OK";  // or FAILED: <reason>
};
struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::optional<ExponentFit> fit_b0, fit_b1;
  bool all_bounds_ok = true;
};

struct ArrangementMeasure {
  long sum_b0 = 0, sum_b1 = 0, cells = 0, max_cell_b = 0;
};
// Census of the members (k = 1: segments on the line; k = 2: planar).
ArrangementMeasure measure_arrangement(const std::vector<MemberSet>& members, int k);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// ---- reports

std::string experiment_csv(const ExperimentReport& r);
std::string experiment_json(const ExperimentReport& r);

struct CensusRow {
  int n = 0;
  uint64_t seed = 0;
  ArrangementMeasure m;
  double wall_time_ms = 0;
};
std::string census_csv(const std::vector<CensusRow>& rows);

struct RamseyRow {
  int n = 0, r = 0;
  uint64_t seed = 0;
  HomogeneousPairs h;
};
std::string ramsey_csv(const std::vector<RamseyRow>& rows);

std::string projection_csv(const std::vector<std::pair<std::string, ProjectionReport>>& reports);

// Rational CSV rows ("1/2, 3, -1"); blank lines and '#' comments skipped.
std::vector<std::vector<Q>> parse_rational_rows(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace omin
