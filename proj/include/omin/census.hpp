#pragma once

#include <map>
#include <vector>

#include "omin/arrangement.hpp"
#include "omin/family.hpp"
#include "omin/interval_set.hpp"

namespace omin {

// Exact point set of an exact member of a k = 1 template.
IntervalSet realize_on_line(const MemberSet& m);

// Betti vector of one exact member, k = 1 or 2.
BettiVector member_betti(const MemberSet& m);

struct BettiCensus {
  std::vector<BettiVector> vectors;          // one per parameter, in input order
  std::map<BettiVector, int> distinct;       // vector -> multiplicity
  long max_b = 0;                            // max of b0 + b1: the empirical C(T)
  int size() const { return static_cast<int>(distinct.size()); }
};

BettiCensus betti_type_census(const FamilyTemplate& t, const std::vector<ParameterPoint>& params);

}  // namespace omin
