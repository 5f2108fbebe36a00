#pragma once

#include <vector>

#include "omin/bpoly.hpp"
#include "omin/real_algebraic.hpp"

namespace omin {

// Arithmetic in Q(alpha) for a real algebraic alpha. Elements are
// polynomials in alpha; the defining polynomial may shrink to a factor
// vanishing at alpha when a zero test splits it ("dynamic evaluation").
class AlgCtx {
 public:
  explicit AlgCtx(const RealAlg& alpha);

  bool rational() const { return p_.degree() == 1; }
  Q rational_value() const { return -p_.c[0] / p_.c[1]; }
  const UPoly& poly() const { return p_; }
  QInterval interval() const { return {lo_, hi_}; }
  RealAlg alpha() const;

  UPoly reduce(const UPoly& a) const;
  UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }
  QInterval enclose(const UPoly& a) const;
  bool is_zero(const UPoly& a);
  int sign(const UPoly& a);
  UPoly inv(const UPoly& a);
  void refine();

 private:
  UPoly p_;
  Q lo_, hi_;
  int sign_lo_ = 0;
};

// Polynomial in y with coefficients in Q(alpha), coefficient j of y^j.
using APoly = std::vector<UPoly>;

APoly a_from_bpoly(AlgCtx& ctx, const BPoly& f);
void a_trim(AlgCtx& ctx, APoly& f);
int a_degree(const APoly& f);
APoly a_derivative(const APoly& f);
APoly a_rem(AlgCtx& ctx, const APoly& a, const APoly& b);
APoly a_quo(AlgCtx& ctx, const APoly& a, const APoly& b);
APoly a_monic(AlgCtx& ctx, const APoly& a);
APoly a_gcd(AlgCtx& ctx, const APoly& a, const APoly& b);
APoly a_squarefree(AlgCtx& ctx, const APoly& f);
// f(alpha, t) as an element of Q(alpha)
UPoly a_eval(const AlgCtx& ctx, const APoly& f, const Q& t);
int a_sign_at(AlgCtx& ctx, const APoly& f, const Q& t);
std::vector<APoly> a_sturm(AlgCtx& ctx, const APoly& f);
int a_variations(AlgCtx& ctx, const std::vector<APoly>& seq, const Q& t);
// distinct roots in (a, b]
int a_count_roots(AlgCtx& ctx, const std::vector<APoly>& seq, const Q& a, const Q& b);
// Distinct real roots of f (any, nonzero) in increasing order, isolated
// against the square-free part of f.
std::vector<RootInterval> a_isolate(AlgCtx& ctx, const APoly& sqfree_f);
// Quadratic with two distinct real roots: isolation without a Sturm sequence.
std::vector<RootInterval> a_isolate_split_quadratic(AlgCtx& ctx, const APoly& f);
void a_refine_root(AlgCtx& ctx, const APoly& sqfree_f, RootInterval& r);
// True when f has a root inside the open interval (lo, hi); lo/hi non-roots of f
bool a_has_root_in(AlgCtx& ctx, const APoly& f, const Q& lo, const Q& hi);
// Two isolated roots of square-free f and g; exact comparison.
int a_compare_roots(AlgCtx& ctx, const APoly& f, RootInterval& rf, const APoly& g, RootInterval& rg);
// Sign of g at root r of square-free f.
int a_sign_at_root(AlgCtx& ctx, const APoly& f, RootInterval& r, const APoly& g);

}  // namespace omin
