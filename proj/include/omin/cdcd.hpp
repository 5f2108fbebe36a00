#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "omin/cad.hpp"
#include "omin/family.hpp"

namespace omin {

struct UnknownCell : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class CdcdKind { Point, Interval, Section, Band };
const char* kind_name(CdcdKind k);

struct CdcdCell {
  int id = 0;
  int level = 1;
  CdcdKind kind = CdcdKind::Interval;
  int base = 0;  // level-1 cell index (equals id on level 1)
  int pos = 0;   // stack position; 0 on level 1
  std::vector<int> determinants;  // zero-based member indices, ascending
};

// Cylindrical decomposition of R^k (k = 1, 2) adapted to exact members, with
// the members that determine each cell. Plain data: the verifier below treats
// every field as untrusted, so tests may mutate a tree and re-verify.
struct CdcdTree {
  int k = 1;
  std::vector<MemberSet> members;
  std::vector<RealAlg> base_points;
  // members whose data place each base point (at most 2)
  std::vector<std::vector<int>> base_owner;
  std::vector<CdcdCell> base_cells;  // 2 * base_points.size() + 1
  std::vector<CdcdCell> cells;       // top level; for k = 1 equal to base_cells
  // k = 2: the section indices of cad->stack(j) kept in the tree, ascending
  std::vector<std::vector<int>> sections;
  std::shared_ptr<const Cad> cad;

  int num_cells() const { return static_cast<int>(cells.size()); }
  std::string dump() const;
};

CdcdTree build_cdcd(const std::vector<MemberSet>& members, int k);

const std::vector<int>& determinant_indices(const CdcdTree& tree, int cell);

struct AdaptedReport {
  bool ok = true;
  std::string reason;
  int cell = -1;    // offending top-level cell, or -1
  int member = -1;  // offending member, or -1
  std::pair<double, double> point{0, 0};  // approximate witness point
};

// (a) the cells cover every stack position exactly once, base points and
// sections strictly increase; (b) no member changes sign inside a cell:
// every critical value of the members' atoms is a base point, and on each
// fiber every root of every atom is a kept section.
AdaptedReport verify_adapted_partition(const CdcdTree& tree, const std::vector<MemberSet>& members);

struct CdcdCensus {
  long cells = 0;
  Q bound;
  bool ok = true;
};
// C2 * max(n,1)^(2(2^k - 1)).
CdcdCensus cell_census(const CdcdTree& tree, const Q& c2);

// Calibrated constants: cells <= C2 n^2 (k = 1) and C2 n^6 (k = 2).
inline Q default_cdcd_c2(int k) { return k == 1 ? Q(5) : Q(13); }

// Rebuilds from the members named by the cell's determinants alone and checks
// that the rebuilt tree has a cell with the same base cell and the same
// bounding sections.
bool locality_holds(const CdcdTree& tree, int cell);

}  // namespace omin
