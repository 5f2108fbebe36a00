#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "omin/arrangement.hpp"
#include "omin/interval_set.hpp"

namespace omin {

struct UnsupportedEngine : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MissingEntry : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct InadmissibleLadder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedTubes : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EpsilonTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// A Betti inequality failed on exact data: an engine bug, not a math failure.
struct AssertionFailure : std::logic_error {
  using std::logic_error::logic_error;
};

// b_i of a planar or linear set; zero outside degrees 0 and 1.
inline long betti_at(const BettiVector& b, int i) { return i == 0 ? b.b0 : i == 1 ? b.b1 : 0; }

// A union of cells of a shared planar arrangement.
struct PlanarSet {
  std::shared_ptr<const PlaneArrangement> arr;
  std::vector<bool> cells;
};
using BettiSet = std::variant<IntervalSet, PlanarSet>;

BettiVector betti(const BettiSet& s);
bool is_closed(const BettiSet& s);
BettiSet set_union(const BettiSet& a, const BettiSet& b);
BettiSet set_intersection(const BettiSet& a, const BettiSet& b);

// ---- Mayer-Vietoris

struct MvLine {
  int degree;
  long lhs, rhs;
  bool pass;
};
struct MvReport {
  std::vector<MvLine> mv1, mv2, mv3;  // degrees 0..2
};

// b_i(S1)+b_i(S2) <= b_i(u)+b_i(n); b_i(u) <= b_i(S1)+b_i(S2)+b_{i-1}(n);
// b_i(n) <= b_i(S1)+b_i(S2)+b_{i+1}(u). Throws AssertionFailure on violation.
MvReport mv_from_betti(const BettiVector& s1, const BettiVector& s2, const BettiVector& uni, const BettiVector& inter);
// Both sets closed and from the same engine (and the same arrangement).
MvReport mv_pair_check(const BettiSet& s1, const BettiSet& s2);

// Betti vectors of intersections S_J and unions S^J for |J| <= cap, plus V.
struct BettiTable {
  int n = 0;
  std::map<std::vector<int>, BettiVector> inter, uni;
  BettiVector ambient;
  std::optional<BettiVector> all_union, all_inter;  // S^{<=n}, S_{<=n}
};
BettiTable build_betti_table(const std::vector<BettiSet>& sets, const BettiSet& V, int cap);

struct MvBound {
  long bound = 0;
  std::optional<long> actual;
  bool pass = true;
};
// sum_{j=1}^{i+1} sum_{|J|=j} b_{i-j+1}(S_J), against b_i(S^{<=n}).
MvBound mv_union_bound(const BettiTable& t, int i, int n);
// b_k'(V) + sum_{j=1}^{k'-i} sum_{|J|=j} (b_{i+j-1}(S^J) + b_k'(V)), against b_i(S_{<=n}).
MvBound mv_intersection_bound(const BettiTable& t, int i, int n, int kp);

// ---- 1D cells and ladders

struct LineCell {
  std::vector<int> I;  // members containing the cell, ascending
  IntervalSet set;     // connected
};
// Connected components of A(I) & V over all I.
std::vector<LineCell> line_cells(const std::vector<IntervalSet>& members, const IntervalSet& V);

// eps[0] = eps_1 < ... < eps.back(); certificate[j] is the critical radius
// that eps[j] was checked against.
struct EpsilonLadder {
  std::vector<Q> eps;
  std::vector<RealAlg> certificate;
};

// Endpoints of the members and of V.
std::vector<RealAlg> line_endpoints(const std::vector<IntervalSet>& members, const IntervalSet& V);
// Ladder of length len: eps_len = delta/4 for the minimum critical radius
// delta of the endpoint set, and each smaller eps_j = delta_j/4 where the
// stage-j set adds every endpoint offset by every larger eps.
EpsilonLadder admissible_ladder(const std::vector<RealAlg>& endpoints, int len);
// Re-derives the certificate of a given ladder; throws InadmissibleLadder.
EpsilonLadder certify_ladder(const std::vector<RealAlg>& endpoints, const std::vector<Q>& eps);

// ---- GV replacement

struct GvResult {
  BettiSet x_prime;
  std::vector<BettiSet> trace;  // X^0 .. X^{n+1}
  BettiVector before, after;
  bool closed = false, bounded = false;
  EpsilonLadder ladder;
};

// X = union over sigma of A(I) & V. Members closed; V closed and bounded.
GvResult gv_replace(const std::vector<IntervalSet>& members, const IntervalSet& V,
                    const std::vector<std::vector<int>>& sigma, const EpsilonLadder& ladder);

// Planar members must be circles, closed disks or closed disk complements
// (their distance tubes are bounded by concentric circles); V a closed disk.
// The ladder is halved until the Betti vector of X' is stable under two
// consecutive halvings.
GvResult gv_replace_planar(const std::vector<MemberSet>& members, const MemberSet& V,
                           const std::vector<std::vector<int>>& sigma);
// The same construction at a fixed ladder.
GvResult gv_replace_planar(const std::vector<MemberSet>& members, const MemberSet& V,
                           const std::vector<std::vector<int>>& sigma, const std::vector<Q>& eps);

// ---- Annulus complement reduction and tube families (1D)

struct AnnulusReduction {
  std::vector<IntervalSet> components;  // of  (& Ann(S_i,e1,e2)^c) & V
  std::vector<LineCell> cells;          // C(A, V)
  std::vector<int> match;               // cell -> component, a bijection
};
AnnulusReduction annulus_reduction(const std::vector<IntervalSet>& members, const IntervalSet& V, const Q& eps1,
                                   const Q& eps2);

struct TubeFamilyReport {
  std::vector<IntervalSet> family;  // S_i, BT(S_i,e_i), OT(S_i,2e_i)^c for each i
  long census = 0;                  // sum over cells D of C(B, V) of b(D)
  std::vector<long> b_tests;        // b(S) for each supplied S
  bool ok = true;
};
// eps[i] belongs to member i; eps[0] > eps[1] > ... > 0.
TubeFamilyReport tube_family_decomposition(const std::vector<IntervalSet>& members, const IntervalSet& V,
                                           const std::vector<Q>& eps, const std::vector<IntervalSet>& tests);

}  // namespace omin
