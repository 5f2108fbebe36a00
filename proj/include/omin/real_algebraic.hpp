#pragma once

#include <string>

#include "omin/upoly.hpp"

namespace omin {

// A real algebraic number. Either rational, or the unique root of a
// square-free polynomial p inside the open interval (lo, hi) whose
// endpoints are not roots. Refinement mutates the cached interval only.
class RealAlg {
 public:
  RealAlg() : rational_(true) {}
  RealAlg(const Q& v) : rational_(true), lo_(v), hi_(v) {}
  RealAlg(int v) : RealAlg(Q(v)) {}
  // p need not be square-free; the interval must isolate one root of p.
  static RealAlg from_root(const UPoly& p, const RootInterval& r);
  static RealAlg from_root(const UPoly& p, const Q& lo, const Q& hi);
  // All real roots of p, increasing.
  static std::vector<RealAlg> roots_of(const UPoly& p);

  bool is_rational() const { return rational_; }
  const Q& value() const;  // rational value; precondition is_rational()
  const UPoly& poly() const { return p_; }
  const Q& lo() const { return lo_; }
  const Q& hi() const { return hi_; }
  QInterval interval() const { return {lo_, hi_}; }
  double approx() const;

  void refine() const;
  void refine_to_width(const Q& w) const;

  // sign of q at this number; exact
  int sign_of(const UPoly& q) const;
  bool is_root_of(const UPoly& q) const { return sign_of(q) == 0; }

  RealAlg operator-() const;
  RealAlg add(const Q& q) const;
  RealAlg mul(const Q& q) const;

  // defining polynomial for non-rational, linear polynomial for rational
  UPoly defining_poly() const;

  std::string str() const;

  friend int compare(const RealAlg& a, const RealAlg& b);
  friend int compare(const RealAlg& a, const Q& b);
  friend bool operator==(const RealAlg& a, const RealAlg& b) { return compare(a, b) == 0; }
  friend bool operator!=(const RealAlg& a, const RealAlg& b) { return compare(a, b) != 0; }
  friend bool operator<(const RealAlg& a, const RealAlg& b) { return compare(a, b) < 0; }
  friend bool operator>(const RealAlg& a, const RealAlg& b) { return compare(a, b) > 0; }
  friend bool operator<=(const RealAlg& a, const RealAlg& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const RealAlg& a, const RealAlg& b) { return compare(a, b) >= 0; }

 private:
  void make_rational(const Q& v) const;
  mutable bool rational_;
  mutable UPoly p_;
  mutable Q lo_, hi_;
  mutable int sign_lo_ = 0;  // sign of p at lo
};

RealAlg sub(const RealAlg& a, const RealAlg& b);
RealAlg add(const RealAlg& a, const RealAlg& b);
// Simplest rational strictly between a < b.
Q rational_between(const RealAlg& a, const RealAlg& b);

}  // namespace omin
