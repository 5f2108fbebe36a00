#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omin/cdcd.hpp"

namespace omin {

struct NoIntersectionPredicate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CuttingFailed : std::runtime_error {
  CuttingFailed(const std::string& what, long best_max_crossing)
      : std::runtime_error(what), best_max_crossing(best_max_crossing) {}
  long best_max_crossing;
};

// Closed relation F on R^l x R^l given by its regions A(y) = {z : (z, y) in F}.
struct Relation {
  std::string name;
  int l = 2;
  FamilyTemplate region;  // k = l, l = l
  bool symmetric = true;
  // closed x1-range of A(y), used to localize exact crossing tests
  std::function<std::pair<Q, Q>(const std::vector<Q>& y)> x_range;

  MemberSet region_at(const std::vector<Q>& y) const { return instantiate(region, y); }
  // (z, y) in F, exactly
  bool holds(const std::vector<Q>& z, const std::vector<Q>& y) const;
};

// T_z meets T_y iff (z, y) in F. Built in: unit_disk, unit_square, plane_point.
Relation compile_relation(const FamilyTemplate& t);
void register_intersection_predicate(const std::string& template_name, std::function<Relation()> make);

struct CuttingOptions {
  Q c1 = 8;
  int retries = 8;  // attempts after the first
  // classify each region against a decomposition of the sampled regions
  // meeting its x-range only; false uses all of them
  bool windowed = true;
};
inline Q default_c1() { return Q(8); }

struct CuttingResult {
  std::vector<int> sample;  // r indices into the points, ascending
  CdcdTree tree;            // of the sampled regions
  std::vector<int> point_cell;
  std::vector<std::vector<int>> points_in;   // F_tau
  std::vector<std::vector<int>> crossing;    // G_tau: regions meeting tau without containing it
  std::vector<std::vector<int>> containing;  // regions containing tau
  int heavy = -1;                            // tau*: most points, then smallest id
  long max_crossing = 0;
  double crossing_bound = 0;  // c1 n max(1, ln r) / r
  int attempts = 1;
};

// Cell of the decomposition containing a rational point.
int cell_of_point(const Cad& cad, const std::vector<Q>& z);

// Deterministic in seed. Attempt t samples with the stream (seed, t) and is
// accepted when max_crossing <= crossing_bound.
CuttingResult build_cutting(const std::vector<std::vector<Q>>& points, const Relation& rel, int r, uint64_t seed,
                            const CuttingOptions& opt = {});

enum class Polarity { All, None };
const char* polarity_name(Polarity p);

struct HomogeneousPairs {
  std::vector<int> f1, f2;
  Polarity polarity = Polarity::None;
  Q eps_achieved;  // min(|F1|, |F2|) / n
  int r = 0;
  int attempts = 1;
  long max_crossing = 0;
};

// F1 = the points in tau*; F2 = the larger of the classes of regions that
// contain tau* (All) or miss it (None), ties going to None. For i in F1 and
// j in F2, (y_i, y_j) in F exactly when the polarity is All.
HomogeneousPairs homogeneous_pairs(const std::vector<std::vector<Q>>& points, const Relation& rel, int r,
                                   uint64_t seed, const CuttingOptions& opt = {});

struct HomogeneityReport {
  bool ok = true;
  bool degenerate = false;  // F1 or F2 empty
  std::optional<Polarity> polarity;
  std::pair<int, int> witness{-1, -1};  // a pair disagreeing with the first pair
};
HomogeneityReport verify_homogeneity(const std::vector<std::vector<Q>>& points, const std::vector<int>& f1,
                                     const std::vector<int>& f2, const Relation& rel);

// argmax over r in [4, 32] of min(alpha, beta) with alpha = 1 / (C2 r^6) and
// beta = (1 - c1 ln r / r) / 2.
int default_r(const Q& c1, const Q& c2);

}  // namespace omin
