#include "omin/interval_set.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace omin {

std::string XReal::str() const {
  if (inf < 0) return "-oo";
  if (inf > 0) return "oo";
  return v.str();
}

int compare(const XReal& a, const XReal& b) {
  if (a.inf != 0 || b.inf != 0) return a.inf == b.inf ? 0 : (a.inf < b.inf ? -1 : 1);
  return compare(a.v, b.v);
}

IntervalSet::IntervalSet(std::vector<RealAlg> pts, std::vector<bool> in)
    : pts_(std::move(pts)), in_(std::move(in)) {
  canonicalize();
}

void IntervalSet::canonicalize() {
  std::vector<RealAlg> p;
  std::vector<bool> r;
  r.push_back(in_[0]);
  for (size_t i = 0; i < pts_.size(); ++i) {
    bool l = r.back(), m = in_[2 * i + 1], h = in_[2 * i + 2];
    if (l == m && m == h) continue;
    p.push_back(pts_[i]);
    r.push_back(m);
    r.push_back(h);
  }
  pts_ = std::move(p);
  in_ = std::move(r);
}

IntervalSet IntervalSet::line() { return IntervalSet({}, {true}); }

IntervalSet IntervalSet::point(const RealAlg& a) { return IntervalSet({a}, {false, true, false}); }

IntervalSet IntervalSet::open(const XReal& a, const XReal& b) {
  if (compare(a, b) >= 0) throw MalformedPiece("open interval with lo >= hi");
  std::vector<RealAlg> p;
  std::vector<bool> r;
  if (a.finite()) {
    p.push_back(a.v);
    r = {false, false};
  }
  r.push_back(true);
  if (b.finite()) {
    p.push_back(b.v);
    r.push_back(false);
    r.push_back(false);
  }
  return IntervalSet(p, r);
}

IntervalSet IntervalSet::closed(const RealAlg& a, const RealAlg& b) {
  int c = compare(a, b);
  if (c > 0) throw MalformedPiece("closed interval with lo > hi");
  if (c == 0) return point(a);
  return IntervalSet({a, b}, {false, true, true, true, false});
}

IntervalSet IntervalSet::finite(const std::vector<RealAlg>& pts) {
  IntervalSet s;
  for (auto& p : pts) s = s | point(p);
  return s;
}

IntervalSet IntervalSet::normalize(const std::vector<Piece>& raw) {
  IntervalSet s;
  for (auto& pc : raw) {
    if (pc.point) {
      if (!pc.lo.finite()) throw MalformedPiece("point at infinity");
      s = s | point(pc.lo.v);
    } else {
      s = s | open(pc.lo, pc.hi);
    }
  }
  return s;
}

template <class F>
IntervalSet IntervalSet::combine(const IntervalSet& a, const IntervalSet& b, F f) {
  std::vector<RealAlg> pts;
  // ia/ib: number of breakpoints of a/b strictly below the sweep position
  size_t i = 0, j = 0;
  std::vector<bool> r;
  r.push_back(f(a.in_[0], b.in_[0]));
  while (i < a.pts_.size() || j < b.pts_.size()) {
    int c;
    if (i == a.pts_.size())
      c = 1;
    else if (j == b.pts_.size())
      c = -1;
    else
      c = compare(a.pts_[i], b.pts_[j]);
    bool ma, mb;
    if (c <= 0) {
      pts.push_back(a.pts_[i]);
      ma = a.in_[2 * i + 1];
    } else {
      pts.push_back(b.pts_[j]);
      ma = a.in_[2 * i];
    }
    mb = c >= 0 ? b.in_[2 * j + 1] : b.in_[2 * j];
    if (c <= 0) ++i;
    if (c >= 0) ++j;
    r.push_back(f(ma, mb));
    r.push_back(f(a.in_[2 * i], b.in_[2 * j]));
  }
  return IntervalSet(std::move(pts), std::move(r));
}

IntervalSet IntervalSet::operator|(const IntervalSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}
IntervalSet IntervalSet::operator&(const IntervalSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}
IntervalSet IntervalSet::operator-(const IntervalSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

IntervalSet IntervalSet::complement() const {
  std::vector<bool> r(in_.size());
  for (size_t i = 0; i < in_.size(); ++i) r[i] = !in_[i];
  return IntervalSet(pts_, r);
}

IntervalSet IntervalSet::closure() const {
  std::vector<bool> r = in_;
  for (size_t i = 0; i < pts_.size(); ++i) r[2 * i + 1] = in_[2 * i] || in_[2 * i + 1] || in_[2 * i + 2];
  return IntervalSet(pts_, r);
}

IntervalSet IntervalSet::interior() const { return complement().closure().complement(); }

bool IntervalSet::is_empty() const { return in_.size() == 1 && !in_[0]; }

bool IntervalSet::contains(const Q& x) const { return contains(RealAlg(x)); }

bool IntervalSet::contains(const RealAlg& x) const {
  size_t lo = 0, hi = pts_.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    int c = compare(pts_[mid], x);
    if (c == 0) return in_[2 * mid + 1];
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return in_[2 * lo];
}

std::vector<Piece> IntervalSet::pieces() const {
  std::vector<Piece> out;
  size_t m = pts_.size();
  for (size_t k = 0; k < in_.size(); ++k) {
    if (!in_[k]) continue;
    if (k % 2 == 1) {
      out.push_back(Piece::at(pts_[k / 2]));
    } else {
      size_t i = k / 2;
      XReal a = i == 0 ? XReal::neg_inf() : XReal(pts_[i - 1]);
      XReal b = i == m ? XReal::pos_inf() : XReal(pts_[i]);
      out.push_back(Piece::open(a, b));
    }
  }
  return out;
}

std::vector<IntervalSet> IntervalSet::components() const {
  std::vector<IntervalSet> out;
  size_t n = in_.size();
  for (size_t k = 0; k < n;) {
    if (!in_[k]) {
      ++k;
      continue;
    }
    size_t e = k;
    while (e + 1 < n && in_[e + 1]) ++e;
    std::vector<bool> r(n, false);
    for (size_t t = k; t <= e; ++t) r[t] = true;
    out.push_back(IntervalSet(pts_, r));
    k = e + 1;
  }
  return out;
}

int b0_1d(const IntervalSet& a) {
  const auto& in = a.regions();
  int c = 0;
  for (size_t k = 0; k < in.size(); ++k)
    if (in[k] && (k == 0 || !in[k - 1])) ++c;
  return c;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
  if (a.in_ != b.in_) return false;
  for (size_t i = 0; i < a.pts_.size(); ++i)
    if (compare(a.pts_[i], b.pts_[i]) != 0) return false;
  return true;
}

std::string IntervalSet::str() const {
  std::ostringstream os;
  os << "{";
  size_t n = in_.size(), m = pts_.size();
  bool first = true;
  auto left_end = [&](size_t k) { return k / 2 == 0 ? std::string("-oo") : pts_[k / 2 - 1].str(); };
  auto right_end = [&](size_t k) { return k / 2 == m ? std::string("oo") : pts_[k / 2].str(); };
  for (size_t k = 0; k < n;) {
    if (!in_[k]) {
      ++k;
      continue;
    }
    size_t e = k;
    while (e + 1 < n && in_[e + 1]) ++e;
    if (!first) os << " ";
    first = false;
    if (k == e && k % 2 == 1) {
      os << "{" << pts_[k / 2].str() << "}";
    } else {
      if (k % 2 == 1)
        os << "[" << pts_[k / 2].str();
      else
        os << "(" << left_end(k);
      os << ",";
      if (e % 2 == 1)
        os << pts_[e / 2].str() << "]";
      else
        os << right_end(e) << ")";
    }
    k = e + 1;
  }
  os << "}";
  return os.str();
}

namespace {

struct Scanner {
  const std::string& s;
  size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw MalformedPiece(std::string("expected '") + c + "' at offset " + std::to_string(i));
  }
  bool peek(char c) {
    ws();
    return i < s.size() && s[i] == c;
  }
  Q number() {
    ws();
    size_t b = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '/' || s[i] == '.' ||
                            s[i] == '-' || s[i] == '+'))
      ++i;
    if (b == i) throw MalformedPiece("expected number at offset " + std::to_string(b));
    return parse_rational(s.substr(b, i - b));
  }
  XReal endpoint() {
    ws();
    if (s.compare(i, 3, "-oo") == 0) {
      i += 3;
      return XReal::neg_inf();
    }
    if (s.compare(i, 2, "oo") == 0) {
      i += 2;
      return XReal::pos_inf();
    }
    if (s.compare(i, 3, "+oo") == 0) {
      i += 3;
      return XReal::pos_inf();
    }
    if (s.compare(i, 4, "root") == 0) {
      i += 4;
      expect('(');
      std::vector<Q> cs;
      while (!peek(';')) cs.push_back(number());
      expect(';');
      Q lo = number();
      expect(',');
      Q hi = number();
      expect(')');
      return XReal(RealAlg::from_root(UPoly(cs), lo, hi));
    }
    return XReal(number());
  }
};

}  // namespace

IntervalSet IntervalSet::parse(const std::string& text) {
  Scanner sc{text};
  sc.expect('{');
  IntervalSet out;
  while (!sc.eat('}')) {
    if (sc.eat('{')) {
      XReal a = sc.endpoint();
      if (!a.finite()) throw MalformedPiece("point at infinity");
      sc.expect('}');
      out = out | point(a.v);
      continue;
    }
    bool lc;
    if (sc.eat('('))
      lc = false;
    else if (sc.eat('['))
      lc = true;
    else
      throw MalformedPiece("expected piece at offset " + std::to_string(sc.i));
    XReal a = sc.endpoint();
    sc.expect(',');
    XReal b = sc.endpoint();
    bool rc;
    if (sc.eat(')'))
      rc = false;
    else if (sc.eat(']'))
      rc = true;
    else
      throw MalformedPiece("expected ')' or ']' at offset " + std::to_string(sc.i));
    if ((lc && !a.finite()) || (rc && !b.finite())) throw MalformedPiece("closed end at infinity");
    int c = compare(a, b);
    if (c > 0 || (c == 0 && !(lc && rc))) throw MalformedPiece("empty or reversed interval");
    if (c == 0) {
      out = out | point(a.v);
      continue;
    }
    IntervalSet piece = open(a, b);
    if (lc) piece = piece | point(a.v);
    if (rc) piece = piece | point(b.v);
    out = out | piece;
  }
  return out;
}

namespace {

// Closed components of a closed set as (lo, hi) with infinite ends allowed.
std::vector<std::pair<XReal, XReal>> closed_components(const IntervalSet& X) {
  std::vector<std::pair<XReal, XReal>> out;
  const auto& pts = X.breakpoints();
  const auto& in = X.regions();
  size_t n = in.size(), m = pts.size();
  for (size_t k = 0; k < n;) {
    if (!in[k]) {
      ++k;
      continue;
    }
    size_t e = k;
    while (e + 1 < n && in[e + 1]) ++e;
    XReal a = k % 2 == 1 ? XReal(pts[k / 2]) : (k / 2 == 0 ? XReal::neg_inf() : XReal(pts[k / 2 - 1]));
    XReal b = e % 2 == 1 ? XReal(pts[e / 2]) : (e / 2 == m ? XReal::pos_inf() : XReal(pts[e / 2]));
    out.emplace_back(a, b);
    k = e + 1;
  }
  return out;
}

XReal shift(const XReal& a, const Q& d) {
  if (!a.finite()) return a;
  return XReal(a.v.add(d));
}

IntervalSet neighborhood(const IntervalSet& X, const Q& eps, bool closed_tube) {
  IntervalSet out;
  for (auto& [a, b] : closed_components(X)) {
    XReal lo = shift(a, -eps), hi = shift(b, eps);
    IntervalSet piece = IntervalSet::open(lo, hi);
    if (closed_tube) {
      if (lo.finite()) piece = piece | IntervalSet::point(lo.v);
      if (hi.finite()) piece = piece | IntervalSet::point(hi.v);
    }
    out = out | piece;
  }
  return out;
}

}  // namespace

IntervalSet tube(TubeKind kind, const IntervalSet& X, const IntervalSet& V, const Q& eps1,
                 const std::optional<Q>& eps2) {
  if (!X.is_closed()) throw NotClosed("tube: X is not closed");
  if (!V.is_closed()) throw NotClosed("tube: V is not closed");
  if (eps1 <= 0) throw RadiusOrder("tube: radius must be positive");
  switch (kind) {
    case TubeKind::OT:
      return neighborhood(X, eps1, false) & V;
    case TubeKind::CT:
      return neighborhood(X, eps1, true) & V;
    case TubeKind::BT:
      return (neighborhood(X, eps1, true) - neighborhood(X, eps1, false)) & V;
    case TubeKind::Ann:
    case TubeKind::AnnBar: {
      if (!eps2 || *eps2 <= 0 || *eps2 >= eps1) throw RadiusOrder("tube: annulus needs eps1 > eps2 > 0");
      if (kind == TubeKind::Ann) return (neighborhood(X, eps1, false) - neighborhood(X, *eps2, true)) & V;
      return (neighborhood(X, eps1, true) - neighborhood(X, *eps2, false)) & V;
    }
  }
  return {};
}

std::vector<RealAlg> critical_radii(const IntervalSet& X, const IntervalSet& Y) {
  if (!X.is_closed() || !Y.is_closed()) throw NotClosed("critical_radii: arguments must be closed");
  std::vector<RealAlg> out;
  auto comps = closed_components(X);
  for (size_t i = 1; i < comps.size(); ++i) out.push_back(sub(comps[i].first.v, comps[i - 1].second.v).mul(Q(1, 2)));
  for (auto& px : X.breakpoints())
    for (auto& py : Y.breakpoints()) {
      RealAlg d = sub(px, py);
      if (compare(d, Q(0)) < 0) d = -d;
      if (compare(d, Q(0)) == 0) continue;
      out.push_back(d);
      out.push_back(d.mul(Q(1, 2)));
    }
  std::sort(out.begin(), out.end(), [](const RealAlg& a, const RealAlg& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end(), [](const RealAlg& a, const RealAlg& b) { return compare(a, b) == 0; }),
            out.end());
  return out;
}

}  // namespace omin
