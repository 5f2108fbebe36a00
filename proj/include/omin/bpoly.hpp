#pragma once

#include <string>
#include <vector>

#include "omin/upoly.hpp"

namespace omin {

// Bivariate polynomial in Q[x][y]: f = sum_j c[j](x) * y^j.
// Invariant: no trailing zero coefficients.
class BPoly {
 public:
  std::vector<UPoly> c;

  BPoly() = default;
  explicit BPoly(std::vector<UPoly> coeffs);
  BPoly(const UPoly& in_x);
  BPoly(const Q& constant) : BPoly(UPoly(constant)) {}
  BPoly(int constant) : BPoly(UPoly(Q(constant))) {}
  static BPoly x() { return BPoly(UPoly::x()); }
  static BPoly y();
  // polynomial in y only
  static BPoly in_y(const UPoly& p);

  int deg_y() const { return static_cast<int>(c.size()) - 1; }
  int deg_x() const;
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1 && (c.empty() || c[0].degree() <= 0); }
  const UPoly& lc_y() const { return c.back(); }
  UPoly coeff(int j) const { return j >= 0 && j < static_cast<int>(c.size()) ? c[j] : UPoly(); }
  void trim();

  Q eval(const Q& x, const Q& y) const;
  UPoly at_x(const Q& x) const;  // polynomial in y
  UPoly at_y(const Q& y) const;  // polynomial in x
  BPoly dy() const;
  BPoly dx() const;
  BPoly swap_xy() const;
  // f(x + s, y)
  BPoly shift_x(const Q& s) const;

  BPoly& operator+=(const BPoly& o);
  BPoly& operator-=(const BPoly& o);
  friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
  friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }
  friend BPoly operator-(const BPoly& a);
  friend BPoly operator*(const BPoly& a, const BPoly& b);
  friend BPoly operator*(const BPoly& a, const UPoly& s);
  friend bool operator==(const BPoly& a, const BPoly& b) { return a.c == b.c; }
  friend bool operator!=(const BPoly& a, const BPoly& b) { return !(a == b); }

  std::string str() const;
};

// gcd of the x-coefficients (monic), zero for the zero polynomial.
UPoly content(const BPoly& f);
// f / content(f), scaled so the leading coefficient of lc_y is 1.
BPoly primitive_part(const BPoly& f);
// Canonical representative up to nonzero rational scalars.
BPoly normalize(const BPoly& f);
// lc(b)^(deg a - deg b + 1) * a mod b, in y
BPoly prem(const BPoly& a, const BPoly& b);
// Exact division in Q[x][y]; throws std::logic_error if b does not divide a.
BPoly exact_div(const BPoly& a, const BPoly& b);
bool divides(const BPoly& b, const BPoly& a);
BPoly gcd(const BPoly& a, const BPoly& b);
// Square-free part of a primitive polynomial with deg_y >= 1.
BPoly squarefree_primitive(const BPoly& f);
// Res_y(f, g) as a polynomial in x.
UPoly resultant_y(const BPoly& f, const BPoly& g);
// Res_y(f, df/dy)
UPoly discriminant_y(const BPoly& f);

}  // namespace omin
