#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "omin/cad.hpp"
#include "omin/family.hpp"

namespace omin {

struct NonExactMember : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotUnionOfCells : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSquareFree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BettiVector {
  long b0 = 0, b1 = 0;
  friend bool operator==(const BettiVector& a, const BettiVector& b) { return a.b0 == b.b0 && a.b1 == b.b1; }
  friend bool operator<(const BettiVector& a, const BettiVector& b) {
    return a.b0 != b.b0 ? a.b0 < b.b0 : a.b1 < b.b1;
  }
};

// One entry per polynomial atom; with one atom per member it is indexed by members.
using SignCondition = std::vector<int>;

// Partition of the decomposition's cells into connected regions.
struct Regions {
  std::vector<int> of_cell;
  std::vector<std::vector<int>> cells;  // ascending cell ids; regions ordered by first cell
  std::vector<bool> unbounded;
  int size() const { return static_cast<int>(cells.size()); }
};

// Connected classes of the relation "adjacent and same(c, d)"; `same` must be an
// equivalence on cells.
Regions connected_classes(const Cad& cad, const std::function<bool(int, int)>& same);

// b1 of every region: the number of bounded components of its complement,
// computed for all regions at once from articulation structure of the region
// graph with a node at infinity.
std::vector<long> region_b1(const Cad& cad, const Regions& regions);

struct CellGroup {
  std::vector<int> I;                            // zero-based member indices, ascending
  std::vector<std::vector<int>> components;      // each a list of decomposition cells
};

struct Census {
  std::vector<std::vector<int>> index_sets;  // I of each arrangement cell
  std::vector<BettiVector> betti;            // per arrangement cell (connected component of some A(I))
  std::vector<std::vector<int>> cad_cells;
  long sum_b0 = 0, sum_b1 = 0;
  long max_cell_b = 0;  // max of b0 + b1 over cells
  BettiVector subset_total(const std::vector<int>& cells) const;
  int size() const { return static_cast<int>(betti.size()); }
};

class PlaneArrangement {
 public:
  static PlaneArrangement build(const std::vector<MemberSet>& members);

  int n() const { return static_cast<int>(members_.size()); }
  const std::vector<MemberSet>& members() const { return members_; }
  const Cad& cad() const { return cad_; }
  int num_cells() const { return cad_.num_cells(); }
  bool in_member(int cell, int i) const { return membership_[static_cast<size_t>(cell) * n() + i] != 0; }
  SignCondition sign_vector(int cell) const;

 private:
  std::vector<MemberSet> members_;
  Cad cad_;
  std::vector<uint8_t> membership_;
};

// Exact truth value of a member formula from cell-constant atom signs.
bool eval_on_signs(const Formula& f, const int8_t* signs);

std::map<SignCondition, int> realizable_sign_conditions(const PlaneArrangement& arr);
CellGroup basic_set_cells(const PlaneArrangement& arr, const std::vector<int>& I);

// Betti numbers of a union of decomposition cells. b0 by union-find; b1 by
// the bounded-complement rule, cross-checked against b0 - chi for closed
// bounded sets (throws std::logic_error on disagreement).
BettiVector betti_of_cells(const Cad& cad, const std::vector<bool>& in_set);
// Set described by a predicate on membership vectors.
BettiVector betti_of_membership(const PlaneArrangement& arr, const std::function<bool(const std::vector<bool>&)>& phi);
// Set described by a formula in x1, x2 whose atoms are (scalar multiples of)
// atoms of the arrangement.
BettiVector betti_of_set(const PlaneArrangement& arr, const Formula& phi);

Census all_cells_census(const PlaneArrangement& arr);

// Arrangement restricted to the curve V = {f = 0}.
Census restrict_to_curve(const PlaneArrangement& arr, const BPoly& f);

}  // namespace omin
