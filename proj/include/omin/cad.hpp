#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "omin/bpoly.hpp"
#include "omin/numfield.hpp"
#include "omin/real_algebraic.hpp"

namespace omin {

// Cylindrical decomposition of the plane adapted to a list of polynomial
// atoms grouped by member. Base cells are indexed left to right (even =
// open interval, odd = point); each base cell carries a stack whose cells
// are indexed bottom to top (even = band, odd = section).

struct BasisElem {
  BPoly f;                   // primitive, square-free, deg_y >= 1
  std::vector<int> members;  // members with an atom divisible by f, ascending
  UPoly disc;                // Res_y(f, f_y) when deg_y >= 2
  int owner() const { return members.front(); }
};

// atom = kappa * content(x) * prod basis[i]^e
struct AtomFactors {
  bool zero = false;
  int kappa_sign = 1;
  UPoly content;
  std::vector<std::pair<int, int>> factors;
};

struct ProjPoly {
  UPoly p;                // square-free, degree >= 1
  std::vector<int> tags;  // members whose data produced p, ascending
};

constexpr int kLimNegInf = -1;
constexpr int kLimPosInf = -2;

struct CadSection {
  std::vector<std::pair<int, bool>> elems;  // vanishing basis elements, multiple-root flag
  RootInterval y;                           // root of elems[0] on this fiber
  int lim[2] = {kLimNegInf, kLimNegInf};    // interval stacks: limit section in left/right point stack
};

struct CadStack {
  bool over_point = false;
  RealAlg x;                       // base point, or rational sample of the interval
  std::vector<CadSection> sections;
  std::vector<Q> band_samples;     // sections.size() + 1 rationals
  int first_cell = 0;
  // per basis element: ascending section indices where it vanishes
  std::vector<std::vector<int>> elem_sections;
  // point stacks only
  std::unique_ptr<AlgCtx> ctx;
  std::vector<APoly> fiber_sqf;    // square-free part of each basis element on the fiber
  std::vector<int> lc_sign;        // sign of lc_y(basis) at the point
  int size() const { return 2 * static_cast<int>(sections.size()) + 1; }
};

struct CadCell {
  int id = 0;
  int dim = 0;
  int base = 0;  // base cell index
  int pos = 0;   // stack position
  bool unbounded = false;
  std::vector<int> adj;  // closure-adjacent cells (symmetric)
};

class Cad {
 public:
  // atoms[m] lists the polynomial atoms of member m.
  static Cad build(const std::vector<std::vector<BPoly>>& atoms);

  int num_members() const { return static_cast<int>(atom_offset_.size()) - 1; }
  int num_atoms() const { return atom_offset_.back(); }
  int atom_offset(int m) const { return atom_offset_[m]; }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  const CadCell& cell(int id) const { return cells_[id]; }
  const std::vector<CadCell>& cells() const { return cells_; }
  int num_base_cells() const { return static_cast<int>(stacks_.size()); }
  const CadStack& stack(int base) const { return stacks_[base]; }
  CadStack& stack_mut(int base) { return stacks_[base]; }
  const std::vector<RealAlg>& base_points() const { return base_points_; }
  // projection polynomials vanishing at each base point
  const std::vector<std::vector<int>>& base_point_sources() const { return base_src_; }
  const std::vector<ProjPoly>& projection() const { return proj_; }
  const std::vector<BasisElem>& basis() const { return basis_; }
  const std::vector<AtomFactors>& factors() const { return factors_; }
  const std::vector<std::vector<BPoly>>& atoms() const { return atoms_; }
  // sign of atom a (global index) on cell c
  int atom_sign(int c, int a) const { return signs_[static_cast<size_t>(c) * num_atoms() + a]; }
  const int8_t* atom_signs(int c) const { return &signs_[static_cast<size_t>(c) * num_atoms()]; }
  int cell_id(int base, int pos) const { return stacks_[base].first_cell + pos; }

  // Exact sign of g at the sample point of cell c, computed from scratch.
  int sign_at_sample(int c, const BPoly& g) const;
  // Sample point as doubles (for reports and plots).
  std::pair<double, double> sample_approx(int c) const;

 private:
  void build_basis();
  void build_base();
  void build_interval_stack(int j);
  void build_point_stack(int j);
  void compute_limits(int interval, int point, int side);
  void assemble_cells();

  std::vector<std::vector<BPoly>> atoms_;
  std::vector<int> atom_offset_;
  std::vector<BasisElem> basis_;
  std::vector<AtomFactors> factors_;
  std::vector<ProjPoly> proj_;
  std::vector<RealAlg> base_points_;
  std::vector<std::vector<int>> base_src_;
  std::vector<CadStack> stacks_;
  std::vector<CadCell> cells_;
  std::vector<int8_t> signs_;
  // atom signs per stack position, filled while the stack is built
  std::vector<std::vector<int8_t>> stack_signs_;
};

}  // namespace omin
