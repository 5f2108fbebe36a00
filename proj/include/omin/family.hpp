#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omin/formula.hpp"

namespace omin {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct AmbientMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainViolation : std::domain_error {
  using std::domain_error::domain_error;
};
struct NoRealizationOracle : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidTemplate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum Sign : int { kNeg = -1, kZero = 0, kPos = 1, kUnknown = 2 };
enum class Tri { False, True, Unknown };

struct BoxBound {
  int var;  // zero-based x index
  Q lo, hi;
};

// Fixed family T in R^{k+l}: fibers over parameter points are the members.
struct FamilyTemplate {
  std::string name;
  int k = 1, l = 1;
  Formula formula;
  bool closed = false;
  std::vector<BoxBound> box;  // domain of the numeric (exp/log) atoms

  // Checks the invariants; throws InvalidTemplate.
  void validate() const;
  bool has_numeric_atoms() const;

  // Text format: header "k=<int> l=<int> closed=<bool> [name=<id>]", an
  // optional "(box (x1 lo hi) ...)" and the formula; ';' starts a comment.
  static FamilyTemplate parse(const std::string& text);
  std::string str() const;
};

using ParameterPoint = std::vector<Q>;

struct MemberAtom {
  Rel rel;
  bool numeric;  // contains exp/log: evaluated by interval arithmetic
  Expr expr;     // lhs - rhs, folded
  MPoly poly;    // polynomial atoms only
};

struct MemberSet {
  std::shared_ptr<const FamilyTemplate> source;
  ParameterPoint parameter;
  Formula formula_x;  // atom nodes carry their index into atoms
  std::vector<MemberAtom> atoms;

  int k() const { return source->k; }
  bool numeric() const;
  // polynomial atoms in order (requires !numeric())
  std::vector<MPoly> polys() const;
  // membership from exact atom signs
  bool holds(const std::vector<int>& atom_signs) const;
};

MemberSet instantiate(std::shared_ptr<const FamilyTemplate> t, const ParameterPoint& y);
inline MemberSet instantiate(const FamilyTemplate& t, const ParameterPoint& y) {
  return instantiate(std::make_shared<const FamilyTemplate>(t), y);
}

// T' = union of T_i x {e_i}: parameters (y, e) with e a unit vector.
FamilyTemplate union_of_families(const std::vector<FamilyTemplate>& templates);

struct SignEval {
  std::vector<Sign> signs;
  Tri member;
};

SignEval sign_eval(const MemberSet& m, const std::vector<Q>& point, int precision);

// Three-valued evaluation of a formula over atom signs.
Tri eval_formula(const Formula& f, const std::vector<Sign>& signs);

// Realization oracle: can subset (bitmask over points) be cut out by a member?
using RealizationOracle = std::function<bool(const std::vector<std::vector<Q>>& points, unsigned long long subset)>;
void register_realization_oracle(const std::string& template_name, RealizationOracle oracle);
bool shatter_check(const FamilyTemplate& t, const std::vector<std::vector<Q>>& points);

// Exact realizability tests behind the built-in oracles.
// Disk {|x-c|^2 <= r^2} containing exactly `subset`; fills (c1, c2, r^2).
bool disk_realizes(const std::vector<std::vector<Q>>& points, unsigned long long subset, std::vector<Q>* witness = nullptr);
// Closed halfplane {a.x <= b}; fills (a1, a2, b).
bool halfplane_realizes(const std::vector<std::vector<Q>>& points, unsigned long long subset,
                        std::vector<Q>* witness = nullptr);

namespace templates {
FamilyTemplate hyperplane();    // y1 x1 + y2 x2 - y3 = 0
FamilyTemplate circle();        // (x1-y1)^2 + (x2-y2)^2 - y3^2 = 0
FamilyTemplate disk();          // ... <= 0
FamilyTemplate halfplane();     // y1 x1 + y2 x2 - y3 <= 0
FamilyTemplate disk_complement();  // |x - (y1,y2)|^2 - y3^2 >= 0
FamilyTemplate plane_segment();    // closed segment from (y1,y2) to (y3,y4)
FamilyTemplate unit_disk();        // |x - y|^2 <= 1, parameter = centre
FamilyTemplate unit_square();      // axis-parallel, side 1, parameter = centre
FamilyTemplate plane_point();      // {y}
FamilyTemplate interval();      // y1 < x1 < y2
FamilyTemplate segment();       // y1 <= x1 <= y2
FamilyTemplate exp_monomial();  // y1 x1^y3 + y2 x1^y4 = 0 on x1 in [1/64, 64]
}  // namespace templates

}  // namespace omin
