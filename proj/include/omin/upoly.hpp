#pragma once

#include <string>
#include <vector>

#include "omin/rational.hpp"

namespace omin {

// Dense univariate polynomial over Q; c[i] is the coefficient of t^i.
// Invariant: no trailing zero coefficients (the zero polynomial is empty).
class UPoly {
 public:
  std::vector<Q> c;

  UPoly() = default;
  explicit UPoly(std::vector<Q> coeffs);
  UPoly(const Q& constant);
  UPoly(int constant) : UPoly(Q(constant)) {}
  static UPoly monomial(const Q& coeff, int deg);
  static UPoly x() { return monomial(Q(1), 1); }
  // (t - r)
  static UPoly linear_root(const Q& r);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  const Q& lc() const { return c.back(); }
  Q coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Q(0); }
  void trim();

  Q eval(const Q& t) const;
  int sign_at(const Q& t) const { return sgn(eval(t)); }
  QInterval eval(const QInterval& t) const;
  double approx(double t) const;

  UPoly derivative() const;
  UPoly monic() const;
  // Scales so coefficients are coprime integers with positive leading coefficient.
  UPoly primitive_integer() const;
  // Coprime integer coefficients, scaled by a positive factor only.
  UPoly positive_scaled() const;
  // p(t + s)
  UPoly shift(const Q& s) const;
  // p(s * t)
  UPoly scale_arg(const Q& s) const;
  // p(-t)
  UPoly reflect() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Q& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(const UPoly& a);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Q& s) { return a *= s; }
  friend UPoly operator*(const Q& s, UPoly a) { return a *= s; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  std::string str(const std::string& var = "t") const;
};

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator/(const UPoly& a, const UPoly& b);  // quotient
UPoly operator%(const UPoly& a, const UPoly& b);  // remainder
// Division that must be exact; throws std::logic_error otherwise.
UPoly exact_div(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// Extended Euclid: s*a + t*b = g (monic gcd).
UPoly gcdex(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);
// Square-free part, primitive integer normalized.
UPoly squarefree(const UPoly& p);
UPoly pow(const UPoly& p, int e);

// Sturm sequence of a polynomial (not necessarily square-free).
std::vector<UPoly> sturm_sequence(const UPoly& p);
int sign_variations(const std::vector<UPoly>& seq, const Q& t);
int sign_variations_at_pos_inf(const std::vector<UPoly>& seq);
int sign_variations_at_neg_inf(const std::vector<UPoly>& seq);
// Number of distinct real roots in (a, b].
int count_roots(const std::vector<UPoly>& seq, const Q& a, const Q& b);
int count_real_roots(const UPoly& p);
// Distinct roots in the open interval (a, b); endpoints may be roots.
int count_roots_open(const UPoly& p, const Q& a, const Q& b);

// Bound B with every complex root satisfying |z| < B.
Q cauchy_bound(const UPoly& p);

// An isolated real root: either exact (lo == hi) or the unique root of the
// square-free defining polynomial in the open interval (lo, hi), with
// endpoints that are not roots.
struct RootInterval {
  Q lo, hi;
  bool exact() const { return lo == hi; }
};

// Isolates the distinct real roots of p in increasing order.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);
// Halves the interval of root r of square-free p.
void refine_root(const UPoly& sqfree_p, RootInterval& r);

}  // namespace omin
