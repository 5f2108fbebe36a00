#pragma once

#include <stdexcept>
#include <vector>

#include "omin/arrangement.hpp"
#include "omin/formula.hpp"
#include "omin/interval_set.hpp"

namespace omin {

struct NotBoundedCurve : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotClosedBounded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// W^p of S over the projection onto its last k2 coordinates. S uses
// x1..x_{k1+k2}, fiber block first; copy j of the fiber block becomes
// x_{j k1 + 1..(j+1) k1}, the shared block x_{(p+1) k1 + 1..}.
struct FiberedProductFormula {
  Formula base;
  int k1 = 1, k2 = 1, p = 0;
  Formula formula;
  int num_vars = 0;   // (p+1) k1 + k2
  int num_atoms = 0;  // (p+1) times the atoms of base
};
FiberedProductFormula fibered_product_formula(const Formula& S, int k1, int k2, int p);

// b0 of the (p+1)-fold fibered product of S over (x, y) -> x, for S a closed
// and bounded union of cells of cad and p in {0, 1}. Every tuple of cells of
// one stack is a connected piece; pieces glue along fiber adjacency and along
// the limits of sections at the ends of each interval stack.
long fibered_product_b0(const Cad& cad, const std::vector<bool>& S, int p);
// The curve {g = 0}; throws NotBoundedCurve when it is unbounded.
long fibered_product_b0_curve(const BPoly& g, int p);
// The union of the curves {g = 0}, one atom each (cheaper than their product).
long fibered_product_b0_curve(const std::vector<BPoly>& gs, int p);

// Image of a union of cells under (x, y) -> x.
IntervalSet project_to_axis(const Cad& cad, const std::vector<bool>& S);

struct ProjectionLine {
  int q;
  long lhs, rhs;
  bool pass;
};
struct ProjectionReport {
  IntervalSet Y;
  BettiVector s_betti;  // b(W^0) = b(S)
  long w1_b0 = 0;       // b0(W^1)
  std::vector<ProjectionLine> lines;  // q = 0, 1
  bool ok = true;
};

// b_q(Y) <= sum_{i+j=q} b_j(W^i) for q = 0, 1, with Y the image of S on the
// first axis. k1 = k2 = 1 is the only supported case.
ProjectionReport projection_inequality_check(const PlaneArrangement& arr, const std::vector<bool>& S, int k1 = 1,
                                             int k2 = 1);
// S = the union of the members.
ProjectionReport projection_inequality_check(const std::vector<MemberSet>& union_of);

// C n^{(k1+1) k2}
Q projection_bound(long n, int k1, int k2, const Q& C);

}  // namespace omin
