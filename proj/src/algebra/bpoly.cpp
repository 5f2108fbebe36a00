#include "omin/bpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace omin {

BPoly::BPoly(std::vector<UPoly> coeffs) : c(std::move(coeffs)) { trim(); }

BPoly::BPoly(const UPoly& in_x) {
  if (!in_x.is_zero()) c.push_back(in_x);
}

BPoly BPoly::y() { return BPoly(std::vector<UPoly>{UPoly(), UPoly(1)}); }

BPoly BPoly::in_y(const UPoly& p) {
  std::vector<UPoly> cs;
  for (auto& v : p.c) cs.emplace_back(v);
  return BPoly(cs);
}

int BPoly::deg_x() const {
  int d = -1;
  for (auto& u : c) d = std::max(d, u.degree());
  return d;
}

void BPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Q BPoly::eval(const Q& x, const Q& y) const {
  Q acc = 0;
  for (int j = deg_y(); j >= 0; --j) {
    acc *= y;
    acc += c[j].eval(x);
  }
  return acc;
}

UPoly BPoly::at_x(const Q& x) const {
  std::vector<Q> v(c.size());
  for (size_t j = 0; j < c.size(); ++j) v[j] = c[j].eval(x);
  return UPoly(v);
}

UPoly BPoly::at_y(const Q& y) const {
  UPoly acc;
  for (int j = deg_y(); j >= 0; --j) {
    acc *= y;
    acc += c[j];
  }
  return acc;
}

BPoly BPoly::dy() const {
  BPoly r;
  for (size_t j = 1; j < c.size(); ++j) r.c.push_back(c[j] * Q(static_cast<long>(j)));
  r.trim();
  return r;
}

BPoly BPoly::dx() const {
  BPoly r;
  for (auto& u : c) r.c.push_back(u.derivative());
  r.trim();
  return r;
}

BPoly BPoly::swap_xy() const {
  int dx = deg_x();
  std::vector<UPoly> out(dx + 1);
  for (int j = 0; j <= deg_y(); ++j)
    for (int i = 0; i <= c[j].degree(); ++i) {
      if (c[j].c[i] == 0) continue;
      out[i] += UPoly::monomial(c[j].c[i], j);
    }
  return BPoly(out);
}

BPoly BPoly::shift_x(const Q& s) const {
  BPoly r = *this;
  for (auto& u : r.c) u = u.shift(s);
  r.trim();
  return r;
}

BPoly& BPoly::operator+=(const BPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t j = 0; j < o.c.size(); ++j) c[j] += o.c[j];
  trim();
  return *this;
}

BPoly& BPoly::operator-=(const BPoly& o) {
  if (o.c.size() > c.size()) c.resize(o.c.size());
  for (size_t j = 0; j < o.c.size(); ++j) c[j] -= o.c[j];
  trim();
  return *this;
}

BPoly operator-(const BPoly& a) {
  BPoly r = a;
  for (auto& u : r.c) u = -u;
  return r;
}

BPoly operator*(const BPoly& a, const BPoly& b) {
  BPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.resize(a.c.size() + b.c.size() - 1);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

BPoly operator*(const BPoly& a, const UPoly& s) {
  BPoly r = a;
  for (auto& u : r.c) u = u * s;
  r.trim();
  return r;
}

std::string BPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = deg_y(); j >= 0; --j) {
    if (c[j].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << c[j].str("x") << ")";
    if (j > 0) os << "*y" << (j > 1 ? "^" + std::to_string(j) : "");
    first = false;
  }
  return os.str();
}

UPoly content(const BPoly& f) {
  UPoly g;
  for (auto& u : f.c) {
    g = gcd(g, u);
    if (g.degree() == 0) return g;
  }
  return g;
}

BPoly primitive_part(const BPoly& f) {
  if (f.is_zero()) return f;
  UPoly ct = content(f);
  BPoly r;
  for (auto& u : f.c) r.c.push_back(exact_div(u, ct));
  r.trim();
  Q l = r.lc_y().lc();
  for (auto& u : r.c) u *= Q(1 / l);
  return r;
}

BPoly normalize(const BPoly& f) {
  if (f.is_zero()) return f;
  BPoly r = f;
  Q l = r.lc_y().lc();
  for (auto& u : r.c) u *= Q(1 / l);
  return r;
}

BPoly prem(const BPoly& a, const BPoly& b) {
  if (b.is_zero()) throw std::domain_error("prem by zero");
  BPoly r = a;
  int db = b.deg_y();
  const UPoly& lb = b.lc_y();
  int e = a.deg_y() - db + 1;
  while (!r.is_zero() && r.deg_y() >= db) {
    int shift = r.deg_y() - db;
    UPoly lr = r.lc_y();
    // r = lb * r - lr * y^shift * b
    for (auto& u : r.c) u = u * lb;
    for (int j = 0; j <= db; ++j) r.c[j + shift] -= lr * b.c[j];
    r.trim();
    --e;
  }
  if (e > 0) {
    UPoly f = pow(lb, e);
    for (auto& u : r.c) u = u * f;
  }
  r.trim();
  return r;
}

BPoly exact_div(const BPoly& a, const BPoly& b) {
  if (b.is_zero()) throw std::domain_error("BPoly division by zero");
  BPoly r = a;
  int db = b.deg_y();
  BPoly q;
  if (r.deg_y() >= db) q.c.resize(r.deg_y() - db + 1);
  while (!r.is_zero() && r.deg_y() >= db) {
    int shift = r.deg_y() - db;
    UPoly f = exact_div(r.lc_y(), b.lc_y());
    q.c[shift] = f;
    for (int j = 0; j <= db; ++j) r.c[j + shift] -= f * b.c[j];
    r.trim();
  }
  if (!r.is_zero()) throw std::logic_error("BPoly exact_div: nonzero remainder");
  q.trim();
  return q;
}

bool divides(const BPoly& b, const BPoly& a) {
  if (b.is_zero()) return a.is_zero();
  BPoly r = a;
  int db = b.deg_y();
  while (!r.is_zero() && r.deg_y() >= db) {
    int shift = r.deg_y() - db;
    UPoly q, rem;
    divmod(r.lc_y(), b.lc_y(), q, rem);
    if (!rem.is_zero()) return false;
    for (int j = 0; j <= db; ++j) r.c[j + shift] -= q * b.c[j];
    r.trim();
  }
  return r.is_zero();
}

BPoly gcd(const BPoly& a, const BPoly& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  UPoly cg = gcd(content(a), content(b));
  BPoly p = primitive_part(a), q = primitive_part(b);
  if (p.deg_y() < q.deg_y()) std::swap(p, q);
  while (!q.is_zero() && q.deg_y() > 0) {
    BPoly r = prem(p, q);
    p = std::move(q);
    q = r.is_zero() ? r : primitive_part(r);
  }
  BPoly g = q.is_zero() ? p : BPoly(UPoly(1));
  return primitive_part(g) * cg;
}

BPoly squarefree_primitive(const BPoly& f) {
  BPoly g = gcd(f, f.dy());
  if (g.deg_y() <= 0) return primitive_part(f);
  return primitive_part(exact_div(f, g));
}

// Fraction-free Bareiss determinant over Q[x].
static UPoly bareiss_det(std::vector<std::vector<UPoly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return UPoly(1);
  int sign = 1;
  UPoly prev(1);
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return UPoly();
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        UPoly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_div(v, prev);
      }
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  UPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

UPoly resultant_y(const BPoly& f, const BPoly& g) {
  if (f.is_zero() || g.is_zero()) return UPoly();
  int m = f.deg_y(), n = g.deg_y();
  if (m == 0) return pow(f.c[0], n);
  if (n == 0) return pow(g.c[0], m);
  int N = m + n;
  std::vector<std::vector<UPoly>> s(N, std::vector<UPoly>(N));
  // rows of f shifted, coefficients from highest degree
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f.c[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.c[n - j];
  return bareiss_det(std::move(s));
}

UPoly discriminant_y(const BPoly& f) { return resultant_y(f, f.dy()); }

}  // namespace omin
