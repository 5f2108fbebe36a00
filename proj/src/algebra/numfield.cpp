#include "omin/numfield.hpp"

#include <cmath>
#include <stdexcept>

namespace omin {

AlgCtx::AlgCtx(const RealAlg& alpha) {
  if (alpha.is_rational()) {
    p_ = UPoly::linear_root(alpha.value());
    lo_ = hi_ = alpha.value();
    return;
  }
  p_ = alpha.poly();
  lo_ = alpha.lo();
  hi_ = alpha.hi();
  sign_lo_ = p_.sign_at(lo_);
  // a sharp enclosure up front keeps later sign decisions cheap
  Q scale = std::max(abs_q(lo_), abs_q(hi_));
  if (scale < 1) scale = 1;
  Q target = scale / Q(Z(1) << 64);
  while (hi_ - lo_ > target && !rational()) refine();
}

RealAlg AlgCtx::alpha() const {
  if (rational()) return RealAlg(rational_value());
  return RealAlg::from_root(p_, lo_, hi_);
}

UPoly AlgCtx::reduce(const UPoly& a) const {
  if (a.degree() < p_.degree()) return a;
  if (rational()) return UPoly(a.eval(rational_value()));
  return a % p_;
}

QInterval AlgCtx::enclose(const UPoly& a) const {
  if (rational()) return QInterval(a.eval(rational_value()));
  return a.eval(QInterval(lo_, hi_));
}

void AlgCtx::refine() {
  if (rational()) return;
  Q mid = (lo_ + hi_) / 2;
  int s = p_.sign_at(mid);
  if (s == 0) {
    p_ = UPoly::linear_root(mid);
    lo_ = hi_ = mid;
    return;
  }
  if (s == sign_lo_)
    lo_ = mid;
  else
    hi_ = mid;
}

bool AlgCtx::is_zero(const UPoly& a0) {
  UPoly a = reduce(a0);
  if (a.is_zero()) return true;
  if (a.degree() == 0) return false;
  if (enclose(a).sign() != 0) return false;
  UPoly g = gcd(a, p_);
  if (g.degree() <= 0) return false;
  auto seq = sturm_sequence(g);
  bool vanishes = count_roots(seq, lo_, hi_) > 0;
  if (vanishes) {
    p_ = g.primitive_integer();
  } else {
    p_ = exact_div(p_, g).primitive_integer();
  }
  if (p_.degree() == 1) {
    Q v = -p_.c[0] / p_.c[1];
    lo_ = hi_ = v;
  } else {
    sign_lo_ = p_.sign_at(lo_);
  }
  return vanishes;
}

int AlgCtx::sign(const UPoly& a0) {
  UPoly a = reduce(a0);
  if (a.is_zero()) return 0;
  if (a.degree() == 0) return sgn(a.c[0]);
  int s = enclose(a).sign();
  if (s != 0) return s;
  if (is_zero(a)) return 0;
  a = reduce(a);
  while (true) {
    if (a.degree() <= 0) return a.is_zero() ? 0 : sgn(a.c[0]);
    s = enclose(a).sign();
    if (s != 0) return s;
    refine();
    a = reduce(a);
  }
}

UPoly AlgCtx::inv(const UPoly& a0) {
  if (is_zero(a0)) throw std::domain_error("AlgCtx::inv of zero");
  while (true) {
    UPoly a = reduce(a0);
    if (a.degree() == 0) return UPoly(Q(1 / a.c[0]));
    UPoly s, t;
    UPoly g = gcdex(a, p_, s, t);
    if (g.degree() == 0) return reduce(s);
    // a shares a factor with p that does not vanish at alpha: drop it
    p_ = exact_div(p_, g).primitive_integer();
    if (p_.degree() == 1) {
      lo_ = hi_ = -p_.c[0] / p_.c[1];
    } else {
      sign_lo_ = p_.sign_at(lo_);
    }
  }
}

int a_degree(const APoly& f) { return static_cast<int>(f.size()) - 1; }

void a_trim(AlgCtx& ctx, APoly& f) {
  for (auto& c : f) c = ctx.reduce(c);
  while (!f.empty() && ctx.is_zero(f.back())) f.pop_back();
}

APoly a_from_bpoly(AlgCtx& ctx, const BPoly& f) {
  APoly r(f.c.begin(), f.c.end());
  a_trim(ctx, r);
  return r;
}

APoly a_derivative(const APoly& f) {
  APoly d;
  for (size_t j = 1; j < f.size(); ++j) d.push_back(f[j] * Q(static_cast<long>(j)));
  return d;
}

static void a_divmod(AlgCtx& ctx, const APoly& a, const APoly& b, APoly* q, APoly& r) {
  if (b.empty()) throw std::domain_error("APoly division by zero");
  r = a;
  a_trim(ctx, r);
  int db = a_degree(b);
  UPoly inv = ctx.inv(b.back());
  if (q) q->assign(std::max(0, a_degree(r) - db + 1), UPoly());
  while (!r.empty() && a_degree(r) >= db) {
    int shift = a_degree(r) - db;
    UPoly f = ctx.mul(r.back(), inv);
    if (q) (*q)[shift] = f;
    for (int j = 0; j <= db; ++j) r[j + shift] = ctx.reduce(r[j + shift] - f * b[j]);
    r.pop_back();
    a_trim(ctx, r);
  }
}

APoly a_rem(AlgCtx& ctx, const APoly& a, const APoly& b) {
  APoly r;
  a_divmod(ctx, a, b, nullptr, r);
  return r;
}

APoly a_quo(AlgCtx& ctx, const APoly& a, const APoly& b) {
  APoly q, r;
  a_divmod(ctx, a, b, &q, r);
  a_trim(ctx, q);
  return q;
}

APoly a_monic(AlgCtx& ctx, const APoly& a) {
  if (a.empty()) return a;
  UPoly inv = ctx.inv(a.back());
  APoly r;
  for (auto& c : a) r.push_back(ctx.mul(c, inv));
  return r;
}

APoly a_gcd(AlgCtx& ctx, const APoly& a0, const APoly& b0) {
  APoly a = a0, b = b0;
  a_trim(ctx, a);
  a_trim(ctx, b);
  while (!b.empty()) {
    APoly r = a_rem(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a_monic(ctx, a);
}

APoly a_squarefree(AlgCtx& ctx, const APoly& f) {
  if (a_degree(f) <= 0) return f;
  APoly g = a_gcd(ctx, f, a_derivative(f));
  if (a_degree(g) <= 0) return a_monic(ctx, f);
  return a_monic(ctx, a_quo(ctx, f, g));
}

UPoly a_eval(const AlgCtx& ctx, const APoly& f, const Q& t) {
  UPoly acc;
  for (int j = a_degree(f); j >= 0; --j) {
    acc *= t;
    acc += f[j];
  }
  return ctx.reduce(acc);
}

int a_sign_at(AlgCtx& ctx, const APoly& f, const Q& t) { return ctx.sign(a_eval(ctx, f, t)); }

std::vector<APoly> a_sturm(AlgCtx& ctx, const APoly& f0) {
  std::vector<APoly> seq;
  APoly f = f0;
  a_trim(ctx, f);
  if (f.empty()) return seq;
  seq.push_back(f);
  APoly d = a_derivative(f);
  a_trim(ctx, d);
  if (d.empty()) return seq;
  seq.push_back(d);
  while (true) {
    APoly r = a_rem(ctx, seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  return seq;
}

int a_variations(AlgCtx& ctx, const std::vector<APoly>& seq, const Q& t) {
  int v = 0, last = 0;
  for (auto& p : seq) {
    int s = a_sign_at(ctx, p, t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int a_count_roots(AlgCtx& ctx, const std::vector<APoly>& seq, const Q& a, const Q& b) {
  if (seq.empty()) return 0;
  return a_variations(ctx, seq, a) - a_variations(ctx, seq, b);
}

static Q abs_upper(const QInterval& iv) {
  Q a = abs_q(iv.lo), b = abs_q(iv.hi);
  return a > b ? a : b;
}

static Q cauchy_bound_alg(AlgCtx& ctx, const APoly& f) {
  // lower bound on |lc|
  QInterval l = ctx.enclose(f.back());
  while (l.contains_zero()) {
    ctx.refine();
    l = ctx.enclose(f.back());
  }
  Q lmin = l.lo > 0 ? l.lo : Q(-l.hi);
  Q m = 0;
  for (int i = 0; i < a_degree(f); ++i) {
    Q v = abs_upper(ctx.enclose(f[i])) / lmin;
    if (v > m) m = v;
  }
  // round up to an integer to keep bisection points simple
  return ceil_q(m) + 1;
}

static void a_isolate_rec(AlgCtx& ctx, const APoly& f, const std::vector<APoly>& seq, const Q& a,
                          const Q& b, int va, int vb, std::vector<RootInterval>& out) {
  int n = va - vb;
  if (n == 0) return;
  if (n == 1) {
    out.push_back({a, b});
    return;
  }
  Q mid = (a + b) / 2;
  if (a_sign_at(ctx, f, mid) == 0) {
    Q w = (b - a) / 4;
    while (true) {
      Q l = mid - w, h = mid + w;
      if (a_sign_at(ctx, f, l) != 0 && a_sign_at(ctx, f, h) != 0 &&
          a_count_roots(ctx, seq, l, h) == 1) {
        int vl = a_variations(ctx, seq, l), vh = a_variations(ctx, seq, h);
        a_isolate_rec(ctx, f, seq, a, l, va, vl, out);
        out.push_back({mid, mid});
        a_isolate_rec(ctx, f, seq, h, b, vh, vb, out);
        return;
      }
      w /= 2;
    }
  }
  int vm = a_variations(ctx, seq, mid);
  a_isolate_rec(ctx, f, seq, a, mid, va, vm, out);
  a_isolate_rec(ctx, f, seq, mid, b, vm, vb, out);
}

std::vector<RootInterval> a_isolate(AlgCtx& ctx, const APoly& f0) {
  std::vector<RootInterval> out;
  APoly f = f0;
  a_trim(ctx, f);
  if (a_degree(f) <= 0) return out;
  if (a_degree(f) == 1) {
    // -f0/f1 is rational only when alpha is; otherwise isolate numerically.
    UPoly inv = ctx.inv(f[1]);
    UPoly root = ctx.mul(-f[0], inv);
    if (root.degree() <= 0) {
      Q r = root.is_zero() ? Q(0) : root.c[0];
      out.push_back({r, r});
      return out;
    }
  }
  auto seq = a_sturm(ctx, f);
  Q B = cauchy_bound_alg(ctx, f);
  int va = a_variations(ctx, seq, -B), vb = a_variations(ctx, seq, B);
  a_isolate_rec(ctx, f, seq, -B, B, va, vb, out);
  return out;
}

std::vector<RootInterval> a_isolate_split_quadratic(AlgCtx& ctx, const APoly& f0) {
  APoly f = f0;
  a_trim(ctx, f);
  if (a_degree(f) != 2) throw std::invalid_argument("a_isolate_split_quadratic: degree");
  // floating-point guesses, accepted only after exact sign checks
  {
    QInterval ia = ctx.enclose(f[2]), ib = ctx.enclose(f[1]), ic = ctx.enclose(f[0]);
    double a = Q((ia.lo + ia.hi) / 2).get_d(), b = Q((ib.lo + ib.hi) / 2).get_d(), c = Q((ic.lo + ic.hi) / 2).get_d();
    double d = b * b - 4 * a * c;
    if (a != 0 && d > 0 && std::isfinite(d)) {
      double sq = std::sqrt(d);
      double r1 = b >= 0 ? (-b - sq) / (2 * a) : (2 * c) / (-b + sq);
      double r2 = c / (a * r1);
      if (r1 > r2) std::swap(r1, r2);
      double eps = std::ldexp(std::max({1.0, std::fabs(r1), std::fabs(r2)}), -32);
      if (std::isfinite(r1) && std::isfinite(r2) && r2 - r1 > 4 * eps) {
        Q l1(r1 - eps), h1(r1 + eps), l2(r2 - eps), h2(r2 + eps);
        int s1 = a_sign_at(ctx, f, l1), s2 = a_sign_at(ctx, f, h1), s3 = a_sign_at(ctx, f, l2), s4 = a_sign_at(ctx, f, h2);
        if (s1 * s2 < 0 && s3 * s4 < 0) return {{l1, h1}, {l2, h2}};
      }
    }
  }
  Q B = cauchy_bound_alg(ctx, f);
  int sa = ctx.sign(f[2]);
  // -f1 / (2 f2) lies strictly between the roots: find a rational nearby
  // at which f has the sign opposite to its leading coefficient
  for (;;) {
    QInterval a = ctx.enclose(f[2]), b = ctx.enclose(f[1]);
    if (!a.contains_zero()) {
      Q l1 = -b.hi / (2 * a.lo), l2 = -b.hi / (2 * a.hi), l3 = -b.lo / (2 * a.lo), l4 = -b.lo / (2 * a.hi);
      Q lo = std::min(std::min(l1, l2), std::min(l3, l4)), hi = std::max(std::max(l1, l2), std::max(l3, l4));
      Q q = simplest_closed(lo, hi);
      if (a_sign_at(ctx, f, q) == -sa) return {{Q(-B), q}, {q, B}};
    }
    ctx.refine();
  }
}

void a_refine_root(AlgCtx& ctx, const APoly& f, RootInterval& r) {
  if (r.exact()) return;
  Q mid = (r.lo + r.hi) / 2;
  int sm = a_sign_at(ctx, f, mid);
  if (sm == 0) {
    r.lo = r.hi = mid;
    return;
  }
  if (sm == a_sign_at(ctx, f, r.lo))
    r.lo = mid;
  else
    r.hi = mid;
}

bool a_has_root_in(AlgCtx& ctx, const APoly& f, const Q& lo, const Q& hi) {
  if (a_degree(f) <= 0) return false;
  auto seq = a_sturm(ctx, f);
  return a_count_roots(ctx, seq, lo, hi) > 0;
}

int a_compare_roots(AlgCtx& ctx, const APoly& f, RootInterval& rf, const APoly& g, RootInterval& rg) {
  if (rf.exact() && rg.exact()) return rf.lo < rg.lo ? -1 : (rf.lo == rg.lo ? 0 : 1);
  if (rf.exact()) {
    while (true) {
      if (rf.lo <= rg.lo) return -1;
      if (rf.lo >= rg.hi) return 1;
      if (a_sign_at(ctx, g, rf.lo) == 0) return 0;
      a_refine_root(ctx, g, rg);
      if (rg.exact()) return a_compare_roots(ctx, f, rf, g, rg);
    }
  }
  if (rg.exact()) return -a_compare_roots(ctx, g, rg, f, rf);
  if (rf.hi <= rg.lo) return -1;
  if (rg.hi <= rf.lo) return 1;
  // distinct roots usually separate after a few bisections, which is far
  // cheaper than a gcd over the number field
  for (int round = 0; round < 6; ++round) {
    a_refine_root(ctx, f, rf);
    a_refine_root(ctx, g, rg);
    if (rf.exact() || rg.exact()) return a_compare_roots(ctx, f, rf, g, rg);
    if (rf.hi <= rg.lo) return -1;
    if (rg.hi <= rf.lo) return 1;
  }
  APoly h = a_gcd(ctx, f, g);
  if (a_degree(h) >= 1) {
    Q l = rf.lo > rg.lo ? rf.lo : rg.lo;
    Q u = rf.hi < rg.hi ? rf.hi : rg.hi;
    if (a_has_root_in(ctx, h, l, u)) return 0;
  }
  while (true) {
    a_refine_root(ctx, f, rf);
    a_refine_root(ctx, g, rg);
    if (rf.exact() || rg.exact()) return a_compare_roots(ctx, f, rf, g, rg);
    if (rf.hi <= rg.lo) return -1;
    if (rg.hi <= rf.lo) return 1;
  }
}

static QInterval a_enclose(AlgCtx& ctx, const APoly& g, const QInterval& y) {
  QInterval acc(Q(0));
  for (int j = a_degree(g); j >= 0; --j) acc = acc * y + ctx.enclose(g[j]);
  return acc;
}

int a_sign_at_root(AlgCtx& ctx, const APoly& f, RootInterval& r, const APoly& g0) {
  APoly g = g0;
  a_trim(ctx, g);
  if (g.empty()) return 0;
  if (r.exact()) return a_sign_at(ctx, g, r.lo);
  int s = a_enclose(ctx, g, QInterval(r.lo, r.hi)).sign();
  if (s != 0) return s;
  APoly h = a_gcd(ctx, f, g);
  if (a_degree(h) >= 1 && a_has_root_in(ctx, h, r.lo, r.hi)) return 0;
  while (true) {
    a_refine_root(ctx, f, r);
    if (r.exact()) return a_sign_at(ctx, g, r.lo);
    ctx.refine();
    s = a_enclose(ctx, g, QInterval(r.lo, r.hi)).sign();
    if (s != 0) return s;
  }
}

}  // namespace omin
