#include "omin/upoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace omin {

UPoly::UPoly(std::vector<Q> coeffs) : c(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Q& constant) {
  if (constant != 0) c.push_back(constant);
}

UPoly UPoly::monomial(const Q& coeff, int deg) {
  UPoly p;
  if (coeff == 0) return p;
  p.c.assign(deg + 1, Q(0));
  p.c[deg] = coeff;
  return p;
}

UPoly UPoly::linear_root(const Q& r) { return UPoly(std::vector<Q>{Q(-r), Q(1)}); }

void UPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Q UPoly::eval(const Q& t) const {
  Q acc = 0;
  for (int i = degree(); i >= 0; --i) {
    acc *= t;
    acc += c[i];
  }
  return acc;
}

QInterval UPoly::eval(const QInterval& t) const {
  if (c.empty()) return QInterval(Q(0));
  // Horner on intervals; exact for degenerate t.
  QInterval acc(c.back());
  for (int i = degree() - 1; i >= 0; --i) {
    acc = acc * t;
    acc.lo += c[i];
    acc.hi += c[i];
  }
  return acc;
}

double UPoly::approx(double t) const {
  double acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * t + c[i].get_d();
  return acc;
}

UPoly UPoly::derivative() const {
  UPoly d;
  if (c.size() <= 1) return d;
  d.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<long>(i);
  d.trim();
  return d;
}

UPoly UPoly::monic() const {
  if (c.empty()) return *this;
  UPoly m = *this;
  Q l = lc();
  for (auto& v : m.c) v /= l;
  return m;
}

UPoly UPoly::primitive_integer() const {
  if (c.empty()) return *this;
  Z den = 1, num = 0;
  for (auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  UPoly r = *this;
  for (auto& v : r.c) {
    v *= den;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_num_mpz_t());
  }
  if (lc() < 0) num = -num;
  for (auto& v : r.c) v /= num;
  return r;
}

UPoly UPoly::positive_scaled() const {
  UPoly r = primitive_integer();
  if (!c.empty() && sgn(lc()) != sgn(r.lc())) r = -r;
  return r;
}

UPoly UPoly::shift(const Q& s) const {
  // Taylor shift by repeated synthetic division.
  std::vector<Q> a = c;
  int n = degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) a[j] += s * a[j + 1];
  return UPoly(a);
}

UPoly UPoly::scale_arg(const Q& s) const {
  UPoly r = *this;
  Q pw = 1;
  for (auto& v : r.c) {
    v *= pw;
    pw *= s;
  }
  r.trim();
  return r;
}

UPoly UPoly::reflect() const { return scale_arg(Q(-1)); }

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size(), Q(0));
  for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size(), Q(0));
  for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Q& s) {
  if (s == 0) {
    c.clear();
    return *this;
  }
  for (auto& v : c) v *= s;
  return *this;
}

UPoly operator-(const UPoly& a) {
  UPoly r = a;
  for (auto& v : r.c) v = -v;
  return r;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Q(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

std::string UPoly::str(const std::string& var) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    Q v = c[i];
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    Q av = abs_q(v);
    if (i == 0 || av != 1) os << av.get_str();
    if (i > 0) {
      if (av != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("UPoly division by zero");
  r = a;
  q = UPoly();
  int db = b.degree();
  if (r.degree() < db) return;
  q.c.assign(r.degree() - db + 1, Q(0));
  Q inv = 1 / b.lc();
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    Q f = r.lc() * inv;
    q.c[shift] = f;
    for (int i = 0; i <= db; ++i) r.c[i + shift] -= f * b.c[i];
    r.c.pop_back();
    r.trim();
  }
  q.trim();
}

UPoly operator/(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw std::logic_error("UPoly exact_div: nonzero remainder");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = r.is_zero() ? r : r.monic();
  }
  return x.monic();
}

UPoly gcdex(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
  UPoly r0 = a, r1 = b, s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = UPoly();
    t = UPoly();
    return r0;
  }
  Q l = r0.lc();
  s = s0 * Q(1 / l);
  t = t0 * Q(1 / l);
  return r0.monic();
}

UPoly squarefree(const UPoly& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : UPoly(1);
  UPoly g = gcd(p, p.derivative());
  return exact_div(p, g).primitive_integer();
}

UPoly pow(const UPoly& p, int e) {
  UPoly r(1), b = p;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p.positive_scaled());
  UPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d.positive_scaled());
  while (true) {
    UPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back((-r).positive_scaled());
  }
  return seq;
}

static int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int sign_variations(const std::vector<UPoly>& seq, const Q& t) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (auto& p : seq) s.push_back(p.sign_at(t));
  return variations(s);
}

int sign_variations_at_pos_inf(const std::vector<UPoly>& seq) {
  std::vector<int> s;
  for (auto& p : seq) s.push_back(sgn(p.lc()));
  return variations(s);
}

int sign_variations_at_neg_inf(const std::vector<UPoly>& seq) {
  std::vector<int> s;
  for (auto& p : seq) s.push_back(p.degree() % 2 == 0 ? sgn(p.lc()) : -sgn(p.lc()));
  return variations(s);
}

int count_roots(const std::vector<UPoly>& seq, const Q& a, const Q& b) {
  if (seq.empty()) return 0;
  return sign_variations(seq, a) - sign_variations(seq, b);
}

int count_real_roots(const UPoly& p) {
  auto seq = sturm_sequence(p);
  if (seq.empty()) return 0;
  return sign_variations_at_neg_inf(seq) - sign_variations_at_pos_inf(seq);
}

int count_roots_open(const UPoly& p, const Q& a, const Q& b) {
  if (p.is_zero()) throw std::domain_error("count_roots_open of zero polynomial");
  if (!(a < b)) return 0;
  auto seq = sturm_sequence(p);
  int n = count_roots(seq, a, b);
  if (p.sign_at(b) == 0) --n;
  return n;
}

Q cauchy_bound(const UPoly& p) {
  Q m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Q v = abs_q(p.c[i] / p.lc());
    if (v > m) m = v;
  }
  return m + 1;
}

void refine_root(const UPoly& p, RootInterval& r) {
  if (r.exact()) return;
  Q mid = (r.lo + r.hi) / 2;
  int sm = p.sign_at(mid);
  if (sm == 0) {
    r.lo = r.hi = mid;
    return;
  }
  if (sm == p.sign_at(r.lo))
    r.lo = mid;
  else
    r.hi = mid;
}

static void isolate_rec(const UPoly& p, const std::vector<UPoly>& seq, Q a, Q b, int va, int vb,
                        std::vector<RootInterval>& out) {
  // invariant: a, b are not roots; va - vb roots in (a, b)
  int n = va - vb;
  if (n == 0) return;
  if (n == 1) {
    out.push_back({a, b});
    return;
  }
  Q mid = (a + b) / 2;
  if (p.sign_at(mid) == 0) {
    // Split around an exact rational root, choosing a clearance that
    // contains no other root.
    Q w = (b - a) / 4;
    while (true) {
      Q l = mid - w, h = mid + w;
      if (p.sign_at(l) != 0 && p.sign_at(h) != 0 && count_roots(seq, l, h) == 1) {
        int vl = sign_variations(seq, l), vh = sign_variations(seq, h);
        isolate_rec(p, seq, a, l, va, vl, out);
        out.push_back({mid, mid});
        isolate_rec(p, seq, h, b, vh, vb, out);
        return;
      }
      w /= 2;
    }
  }
  int vm = sign_variations(seq, mid);
  isolate_rec(p, seq, a, mid, va, vm, out);
  isolate_rec(p, seq, mid, b, vm, vb, out);
}

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  UPoly s = squarefree(p);
  if (s.degree() == 1) {
    Q r = -s.c[0] / s.c[1];
    out.push_back({r, r});
    return out;
  }
  auto seq = sturm_sequence(s);
  Q B = cauchy_bound(s);
  Q a = -B, b = B;
  int va = sign_variations(seq, a), vb = sign_variations(seq, b);
  isolate_rec(s, seq, a, b, va, vb, out);
  return out;
}

}  // namespace omin
