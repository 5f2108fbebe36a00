#include "omin/real_algebraic.hpp"

#include <sstream>
#include <stdexcept>

#include "omin/bpoly.hpp"

namespace omin {

RealAlg RealAlg::from_root(const UPoly& p, const RootInterval& r) { return from_root(p, r.lo, r.hi); }

RealAlg RealAlg::from_root(const UPoly& p, const Q& lo, const Q& hi) {
  RealAlg a;
  if (lo == hi) {
    a.make_rational(lo);
    return a;
  }
  UPoly s = squarefree(p);
  if (s.degree() == 1) {
    a.make_rational(Q(-s.c[0] / s.c[1]));
    return a;
  }
  a.rational_ = false;
  a.p_ = s;
  a.lo_ = lo;
  a.hi_ = hi;
  a.sign_lo_ = s.sign_at(lo);
  if (a.sign_lo_ == 0 || s.sign_at(hi) == 0 || a.sign_lo_ == s.sign_at(hi))
    throw std::invalid_argument("RealAlg::from_root: interval does not isolate a simple root");
  return a;
}

std::vector<RealAlg> RealAlg::roots_of(const UPoly& p) {
  std::vector<RealAlg> out;
  if (p.degree() <= 0) return out;
  UPoly s = squarefree(p);
  for (auto& r : isolate_real_roots(s)) out.push_back(from_root(s, r));
  return out;
}

void RealAlg::make_rational(const Q& v) const {
  rational_ = true;
  lo_ = hi_ = v;
  p_ = UPoly::linear_root(v);
  sign_lo_ = 0;
}

const Q& RealAlg::value() const {
  if (!rational_) throw std::logic_error("RealAlg::value on irrational number");
  return lo_;
}

double RealAlg::approx() const {
  if (rational_) return lo_.get_d();
  refine_to_width(Q(1, 1u << 30) * Q(1, 1u << 22));
  Q m = (lo_ + hi_) / 2;
  return m.get_d();
}

void RealAlg::refine() const {
  if (rational_) return;
  Q mid = (lo_ + hi_) / 2;
  int s = p_.sign_at(mid);
  if (s == 0) {
    make_rational(mid);
    return;
  }
  if (s == sign_lo_)
    lo_ = mid;
  else
    hi_ = mid;
}

void RealAlg::refine_to_width(const Q& w) const {
  while (!rational_ && hi_ - lo_ > w) refine();
}

int RealAlg::sign_of(const UPoly& q) const {
  if (q.is_zero()) return 0;
  if (rational_) return q.sign_at(lo_);
  if (q.degree() == 0) return sgn(q.c[0]);
  int s = q.eval(QInterval(lo_, hi_)).sign();
  if (s != 0) return s;
  UPoly g = gcd(p_, q);
  if (g.degree() >= 1) {
    // g is square-free and its roots are roots of p; the isolating interval
    // contains exactly one root of p.
    auto seq = sturm_sequence(g);
    if (count_roots(seq, lo_, hi_) > 0) return 0;
  }
  while (true) {
    refine();
    if (rational_) return q.sign_at(lo_);
    s = q.eval(QInterval(lo_, hi_)).sign();
    if (s != 0) return s;
  }
}

RealAlg RealAlg::operator-() const {
  RealAlg r;
  if (rational_) {
    r.make_rational(-lo_);
    return r;
  }
  r.rational_ = false;
  r.p_ = p_.reflect();
  r.lo_ = -hi_;
  r.hi_ = -lo_;
  r.sign_lo_ = r.p_.sign_at(r.lo_);
  return r;
}

RealAlg RealAlg::add(const Q& q) const {
  RealAlg r;
  if (rational_) {
    r.make_rational(lo_ + q);
    return r;
  }
  r.rational_ = false;
  r.p_ = p_.shift(-q);
  r.lo_ = lo_ + q;
  r.hi_ = hi_ + q;
  r.sign_lo_ = r.p_.sign_at(r.lo_);
  return r;
}

RealAlg RealAlg::mul(const Q& q) const {
  if (q == 0) return RealAlg(Q(0));
  RealAlg r;
  if (rational_) {
    r.make_rational(lo_ * q);
    return r;
  }
  r.rational_ = false;
  r.p_ = p_.scale_arg(Q(1 / q)).primitive_integer();
  if (q > 0) {
    r.lo_ = lo_ * q;
    r.hi_ = hi_ * q;
  } else {
    r.lo_ = hi_ * q;
    r.hi_ = lo_ * q;
  }
  r.sign_lo_ = r.p_.sign_at(r.lo_);
  return r;
}

UPoly RealAlg::defining_poly() const { return rational_ ? UPoly::linear_root(lo_) : p_; }

std::string RealAlg::str() const {
  if (rational_) return lo_.get_str();
  std::ostringstream os;
  os << "root(";
  for (int i = 0; i <= p_.degree(); ++i) os << (i ? " " : "") << p_.c[i].get_str();
  os << "; " << lo_.get_str() << ", " << hi_.get_str() << ")";
  return os.str();
}

int compare(const RealAlg& a, const Q& b) {
  if (a.rational_) return cmp(a.lo_, b) < 0 ? -1 : (a.lo_ == b ? 0 : 1);
  while (true) {
    if (b <= a.lo_) return 1;
    if (b >= a.hi_) return -1;
    if (a.p_.sign_at(b) == 0) return 0;
    a.refine();
    if (a.rational_) return a.lo_ < b ? -1 : (a.lo_ == b ? 0 : 1);
  }
}

int compare(const RealAlg& a, const RealAlg& b) {
  if (b.rational_) return compare(a, b.lo_);
  if (a.rational_) return -compare(b, a.lo_);
  if (a.hi_ <= b.lo_) return -1;
  if (b.hi_ <= a.lo_) return 1;
  // Overlapping intervals: test equality via a common root in the overlap.
  UPoly g = gcd(a.p_, b.p_);
  if (g.degree() >= 1) {
    Q l = a.lo_ > b.lo_ ? a.lo_ : b.lo_;
    Q h = a.hi_ < b.hi_ ? a.hi_ : b.hi_;
    auto seq = sturm_sequence(g);
    // overlap endpoints are endpoints of a or b, hence never roots of g
    if (count_roots(seq, l, h) > 0) return 0;
  }
  while (true) {
    a.refine();
    b.refine();
    if (a.rational_ || b.rational_) return compare(a, b);
    if (a.hi_ <= b.lo_) return -1;
    if (b.hi_ <= a.lo_) return 1;
  }
}

RealAlg add(const RealAlg& a, const RealAlg& b) { return sub(a, -b); }

RealAlg sub(const RealAlg& a, const RealAlg& b) {
  if (b.is_rational()) return a.add(Q(-b.value()));
  if (a.is_rational()) return (-b).add(a.value());
  // a - b is a root of Res_y(pa(x + y), pb(y)).
  const UPoly& pa = a.poly();
  const UPoly& pb = b.poly();
  // pa(x + y) as a polynomial in y with coefficients in Q[x]
  std::vector<UPoly> cy(pa.degree() + 1);
  for (int i = 0; i <= pa.degree(); ++i) {
    if (pa.c[i] == 0) continue;
    // (x + y)^i = sum_k C(i,k) x^(i-k) y^k
    Z binom = 1;
    for (int k = 0; k <= i; ++k) {
      cy[k] += UPoly::monomial(pa.c[i] * Q(binom), i - k);
      binom = binom * (i - k) / (k + 1);
    }
  }
  BPoly f(cy);
  BPoly g = BPoly::in_y(pb);
  UPoly r = squarefree(resultant_y(f, g));
  auto seq = sturm_sequence(r);
  while (true) {
    Q lo = a.lo() - b.hi(), hi = a.hi() - b.lo();
    if (r.sign_at(lo) != 0 && r.sign_at(hi) != 0 && count_roots(seq, lo, hi) == 1)
      return RealAlg::from_root(r, lo, hi);
    a.refine();
    b.refine();
    if (a.is_rational() || b.is_rational()) return sub(a, b);
  }
}

Q rational_between(const RealAlg& a, const RealAlg& b) {
  while (!(a.hi() < b.lo())) {
    a.refine();
    b.refine();
  }
  return simplest_open(a.hi(), b.lo());
}

}  // namespace omin
