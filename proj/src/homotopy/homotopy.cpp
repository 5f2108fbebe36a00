#include "omin/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "omin/family.hpp"

namespace omin {

namespace {

const PlanarSet& as_planar(const BettiSet& s) { return std::get<PlanarSet>(s); }

bool planar_closed(const PlanarSet& p) {
  const Cad& cad = p.arr->cad();
  for (int c = 0; c < cad.num_cells(); ++c) {
    if (!p.cells[c]) continue;
    for (int d : cad.cell(c).adj)
      if (cad.cell(d).dim < cad.cell(c).dim && !p.cells[d]) return false;
  }
  return true;
}

bool planar_bounded(const PlanarSet& p) {
  for (int c = 0; c < p.arr->num_cells(); ++c)
    if (p.cells[c] && p.arr->cad().cell(c).unbounded) return false;
  return true;
}

template <class F>
BettiSet combine(const BettiSet& a, const BettiSet& b, F f, bool is_union) {
  if (a.index() != b.index()) throw UnsupportedEngine("sets come from different engines");
  if (a.index() == 0) {
    auto& x = std::get<IntervalSet>(a);
    auto& y = std::get<IntervalSet>(b);
    return is_union ? (x | y) : (x & y);
  }
  auto& x = as_planar(a);
  auto& y = as_planar(b);
  if (x.arr != y.arr) throw UnsupportedEngine("planar sets from different arrangements");
  PlanarSet out{x.arr, std::vector<bool>(x.cells.size())};
  for (size_t c = 0; c < x.cells.size(); ++c) out.cells[c] = f(x.cells[c], y.cells[c]);
  return out;
}

void sort_unique(std::vector<RealAlg>& v) {
  std::sort(v.begin(), v.end(), [](const RealAlg& a, const RealAlg& b) { return compare(a, b) < 0; });
  v.erase(std::unique(v.begin(), v.end(), [](const RealAlg& a, const RealAlg& b) { return compare(a, b) == 0; }),
          v.end());
}

// Half of the smallest gap of a sorted point set: the smallest critical
// radius of the set against itself. Empty when fewer than two points.
std::optional<RealAlg> min_half_gap(const std::vector<RealAlg>& pts) {
  std::optional<RealAlg> best;
  for (size_t i = 1; i < pts.size(); ++i) {
    RealAlg g = sub(pts[i], pts[i - 1]).mul(Q(1, 2));
    if (!best || compare(g, *best) < 0) best = g;
  }
  return best;
}

// Largest 2^-m <= x, capped at 1; x > 0.
Q dyadic_below(const RealAlg& x) {
  Q q(1);
  while (compare(x, q) < 0) q /= 2;
  return q;
}

std::vector<RealAlg> offset_points(const std::vector<RealAlg>& base, const std::vector<Q>& radii) {
  std::vector<RealAlg> pts = base;
  for (auto& p : base)
    for (auto& e : radii) {
      pts.push_back(p.add(e));
      pts.push_back(p.add(-e));
    }
  sort_unique(pts);
  return pts;
}

IntervalSet closed_tube(const IntervalSet& s, const Q& e) { return tube(TubeKind::CT, s, IntervalSet::line(), e); }
IntervalSet open_tube(const IntervalSet& s, const Q& e) { return tube(TubeKind::OT, s, IntervalSet::line(), e); }

// A(I) & V for I ascending.
IntervalSet cell_set(const std::vector<IntervalSet>& members, const IntervalSet& V, const std::vector<int>& I) {
  IntervalSet out = V;
  size_t p = 0;
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    if (p < I.size() && I[p] == i) {
      out = out & members[i];
      ++p;
    } else {
      out = out - members[i];
    }
  }
  return out;
}

void check_closed_members(const std::vector<IntervalSet>& members, const IntervalSet& V) {
  for (auto& m : members)
    if (!m.is_closed()) throw NotClosed("members must be closed");
  if (!V.is_closed()) throw NotClosed("V must be closed");
}

std::vector<std::vector<int>> normalized_sigma(const std::vector<std::vector<int>>& sigma, int n) {
  std::vector<std::vector<int>> out;
  for (auto I : sigma) {
    std::sort(I.begin(), I.end());
    I.erase(std::unique(I.begin(), I.end()), I.end());
    for (int i : I)
      if (i < 0 || i >= n) throw std::out_of_range("sigma names a member that does not exist");
    out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> J;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(J.size()) == size) {
      f(J);
      return;
    }
    for (int i = from; i < n; ++i) {
      J.push_back(i);
      rec(i + 1);
      J.pop_back();
    }
  };
  rec(0);
}

// ---- planar tubes around concentric circles

enum class RoundKind { Circle, Disk, Outside };

struct RoundMember {
  RoundKind kind;
  Q cx, cy, r;
};

RoundMember round_member(const MemberSet& m) {
  if (m.k() != 2) throw UnsupportedTubes("planar tubes need k = 2 members");
  const std::string& name = m.source->name;
  RoundMember out;
  if (name == "circle") out.kind = RoundKind::Circle;
  else if (name == "disk") out.kind = RoundKind::Disk;
  else if (name == "disk_complement") out.kind = RoundKind::Outside;
  else throw UnsupportedTubes("no exact tubes for template '" + name + "'");
  out.cx = m.parameter[0];
  out.cy = m.parameter[1];
  out.r = abs_q(m.parameter[2]);
  if (out.r == 0) throw UnsupportedTubes("radius zero member");
  return out;
}

// Arrangement of the level circles |x - c| = r, r +- eps_j of every member,
// plus the boundary of V; predicates read the sign of |x - c|^2 - rho^2.
class LevelArrangement {
 public:
  LevelArrangement(const std::vector<RoundMember>& ms, const RoundMember& V, const std::vector<Q>& eps)
      : ms_(ms), V_(V) {
    std::vector<MemberSet> circles;
    auto level = [&](const RoundMember& m, const Q& rho) {
      auto key = std::make_tuple(m.cx, m.cy, rho);
      if (index_.count(key)) return;
      index_[key] = static_cast<int>(circles.size());
      circles.push_back(instantiate(templates::circle(), {m.cx, m.cy, rho}));
    };
    level(V, V.r);
    for (auto& m : ms) {
      level(m, m.r);
      for (auto& e : eps) {
        level(m, m.r + e);
        if (m.kind != RoundKind::Disk) level(m, m.r - e);
      }
    }
    arr = std::make_shared<const PlaneArrangement>(PlaneArrangement::build(circles));
    signs_.resize(arr->num_cells());
    for (int c = 0; c < arr->num_cells(); ++c) signs_[c] = arr->sign_vector(c);
  }

  std::shared_ptr<const PlaneArrangement> arr;

  int side(int c, const RoundMember& m, const Q& rho) const {
    return signs_[c][index_.at(std::make_tuple(m.cx, m.cy, rho))];
  }
  bool in_V(int c) const { return side(c, V_, V_.r) <= 0; }
  bool in(int c, int i) const {
    auto& m = ms_[i];
    int s = side(c, m, m.r);
    return m.kind == RoundKind::Circle ? s == 0 : m.kind == RoundKind::Disk ? s <= 0 : s >= 0;
  }
  bool closure_of_complement(int c, int i) const {
    auto& m = ms_[i];
    int s = side(c, m, m.r);
    return m.kind == RoundKind::Circle ? true : m.kind == RoundKind::Disk ? s >= 0 : s <= 0;
  }
  bool in_tube(int c, int i, const Q& e, bool closed) const {
    auto& m = ms_[i];
    auto le = [&](int s) { return closed ? s <= 0 : s < 0; };
    auto ge = [&](int s) { return closed ? s >= 0 : s > 0; };
    switch (m.kind) {
      case RoundKind::Circle: return ge(side(c, m, m.r - e)) && le(side(c, m, m.r + e));
      case RoundKind::Disk: return le(side(c, m, m.r + e));
      case RoundKind::Outside: return ge(side(c, m, m.r - e));
    }
    return false;
  }

 private:
  std::vector<RoundMember> ms_;
  RoundMember V_;
  std::map<std::tuple<Q, Q, Q>, int> index_;
  std::vector<SignCondition> signs_;
};

GvResult gv_planar_at(const std::vector<RoundMember>& ms, const RoundMember& V,
                      const std::vector<std::vector<int>>& sigma, const std::vector<Q>& eps) {
  int n = static_cast<int>(ms.size());
  LevelArrangement L(ms, V, eps);
  int cells = L.arr->num_cells();
  std::vector<std::vector<int>> I_of(cells);
  std::set<std::vector<int>> in_sets;
  for (int c = 0; c < cells; ++c) {
    for (int i = 0; i < n; ++i)
      if (L.in(c, i)) I_of[c].push_back(i);
    if (L.in_V(c)) in_sets.insert(I_of[c]);
  }
  std::set<std::vector<int>> sig(sigma.begin(), sigma.end());

  std::vector<bool> X(cells);
  for (int c = 0; c < cells; ++c) X[c] = L.in_V(c) && sig.count(I_of[c]);
  GvResult res;
  res.trace.push_back(PlanarSet{L.arr, X});
  res.before = betti(res.trace.back());

  for (int m = 0; m <= n; ++m) {
    std::vector<bool> add(cells), rem(cells);
    for (auto& I : in_sets) {
      if (static_cast<int>(I.size()) != m) continue;
      bool chosen = sig.count(I) > 0;
      for (int c = 0; c < cells; ++c) {
        if (!L.in_V(c)) continue;
        bool ok = true;
        size_t p = 0;
        for (int i = 0; i < n && ok; ++i) {
          if (p < I.size() && I[p] == i) {
            ++p;
            ok = chosen ? L.in_tube(c, i, eps[2 * m - 1], true) : L.in_tube(c, i, eps[2 * m - 2], false);
          } else {
            ok = chosen ? L.closure_of_complement(c, i) : !L.in(c, i);
          }
        }
        if (ok) (chosen ? add : rem)[c] = true;
      }
    }
    for (int c = 0; c < cells; ++c) X[c] = (X[c] || add[c]) && !rem[c];
    res.trace.push_back(PlanarSet{L.arr, X});
  }
  auto& xp = as_planar(res.trace.back());
  res.x_prime = xp;
  res.after = betti(xp);
  res.closed = planar_closed(xp);
  res.bounded = planar_bounded(xp);
  res.ladder.eps = eps;
  return res;
}

void check_ladder_shape(const std::vector<Q>& eps, size_t len) {
  if (eps.size() != len) throw InadmissibleLadder("ladder must have 2n radii");
  for (size_t j = 0; j < eps.size(); ++j) {
    if (eps[j] <= 0) throw InadmissibleLadder("radii must be positive");
    if (j > 0 && eps[j] <= eps[j - 1]) throw InadmissibleLadder("radii must strictly increase");
  }
}

}  // namespace

BettiVector betti(const BettiSet& s) {
  if (s.index() == 0) return {b0_1d(std::get<IntervalSet>(s)), 0};
  auto& p = as_planar(s);
  return betti_of_cells(p.arr->cad(), p.cells);
}

bool is_closed(const BettiSet& s) {
  if (s.index() == 0) return std::get<IntervalSet>(s).is_closed();
  return planar_closed(as_planar(s));
}

BettiSet set_union(const BettiSet& a, const BettiSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; }, true);
}

BettiSet set_intersection(const BettiSet& a, const BettiSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; }, false);
}

MvReport mv_from_betti(const BettiVector& s1, const BettiVector& s2, const BettiVector& uni,
                       const BettiVector& inter) {
  MvReport r;
  auto b = [](const BettiVector& v, int i) { return i < 0 ? 0L : betti_at(v, i); };
  for (int i = 0; i <= 2; ++i) {
    long sum = b(s1, i) + b(s2, i);
    r.mv1.push_back({i, sum, b(uni, i) + b(inter, i), false});
    r.mv2.push_back({i, b(uni, i), sum + b(inter, i - 1), false});
    r.mv3.push_back({i, b(inter, i), sum + b(uni, i + 1), false});
  }
  for (auto* lines : {&r.mv1, &r.mv2, &r.mv3})
    for (auto& l : *lines) {
      l.pass = l.lhs <= l.rhs;
      if (!l.pass)
        throw AssertionFailure("Mayer-Vietoris inequality violated in degree " + std::to_string(l.degree) + ": " +
                               std::to_string(l.lhs) + " > " + std::to_string(l.rhs));
    }
  return r;
}

MvReport mv_pair_check(const BettiSet& s1, const BettiSet& s2) {
  if (s1.index() != s2.index()) throw UnsupportedEngine("sets come from different engines");
  if (!is_closed(s1) || !is_closed(s2)) throw NotClosed("mv_pair_check needs closed sets");
  BettiSet u = set_union(s1, s2), n = set_intersection(s1, s2);
  return mv_from_betti(betti(s1), betti(s2), betti(u), betti(n));
}

BettiTable build_betti_table(const std::vector<BettiSet>& sets, const BettiSet& V, int cap) {
  BettiTable t;
  t.n = static_cast<int>(sets.size());
  t.ambient = betti(V);
  t.inter[{}] = t.ambient;
  t.uni[{}] = t.ambient;
  for (int size = 1; size <= std::min(cap, t.n); ++size)
    each_subset(t.n, size, [&](const std::vector<int>& J) {
      BettiSet a = sets[J[0]], b = sets[J[0]];
      for (size_t p = 1; p < J.size(); ++p) {
        a = set_intersection(a, sets[J[p]]);
        b = set_union(b, sets[J[p]]);
      }
      t.inter[J] = betti(a);
      t.uni[J] = betti(b);
    });
  if (t.n > 0) {
    BettiSet a = sets[0], b = sets[0];
    for (int i = 1; i < t.n; ++i) {
      a = set_intersection(a, sets[i]);
      b = set_union(b, sets[i]);
    }
    t.all_inter = betti(a);
    t.all_union = betti(b);
  }
  return t;
}

namespace {

const BettiVector& entry(const std::map<std::vector<int>, BettiVector>& m, const std::vector<int>& J) {
  auto it = m.find(J);
  if (it == m.end()) throw MissingEntry("Betti table lacks an index set of size " + std::to_string(J.size()));
  return it->second;
}

}  // namespace

MvBound mv_union_bound(const BettiTable& t, int i, int n) {
  MvBound r;
  for (int j = 1; j <= i + 1; ++j)
    each_subset(n, j, [&](const std::vector<int>& J) { r.bound += betti_at(entry(t.inter, J), i - j + 1); });
  if (n == t.n && t.all_union) {
    r.actual = betti_at(*t.all_union, i);
    r.pass = *r.actual <= r.bound;
  }
  return r;
}

MvBound mv_intersection_bound(const BettiTable& t, int i, int n, int kp) {
  MvBound r;
  long bv = betti_at(t.ambient, kp);
  r.bound = bv;
  for (int j = 1; j <= kp - i; ++j)
    each_subset(n, j, [&](const std::vector<int>& J) { r.bound += betti_at(entry(t.uni, J), i + j - 1) + bv; });
  if (n == t.n && t.all_inter) {
    r.actual = betti_at(*t.all_inter, i);
    r.pass = *r.actual <= r.bound;
  }
  return r;
}

std::vector<LineCell> line_cells(const std::vector<IntervalSet>& members, const IntervalSet& V) {
  std::vector<RealAlg> pts = V.breakpoints();
  for (auto& m : members) pts.insert(pts.end(), m.breakpoints().begin(), m.breakpoints().end());
  sort_unique(pts);

  // elementary regions left to right: (-oo,p0), {p0}, (p0,p1), ...
  int regions = 2 * static_cast<int>(pts.size()) + 1;
  auto piece = [&](int r) {
    int i = r / 2;
    if (r % 2) return Piece::at(pts[i]);
    XReal lo = i == 0 ? XReal::neg_inf() : XReal(pts[i - 1]);
    XReal hi = i == static_cast<int>(pts.size()) ? XReal::pos_inf() : XReal(pts[i]);
    return Piece::open(lo, hi);
  };
  auto sample = [&](int r) -> RealAlg {
    int i = r / 2;
    if (r % 2) return pts[i];
    if (pts.empty()) return RealAlg(0);
    if (i == 0) return RealAlg(floor_q(pts[0].lo()) - 1);
    if (i == static_cast<int>(pts.size())) return RealAlg(ceil_q(pts.back().hi()) + 1);
    return RealAlg(rational_between(pts[i - 1], pts[i]));
  };

  std::vector<LineCell> out;
  std::vector<int> cur_I;
  std::vector<Piece> cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back({cur_I, IntervalSet::normalize(cur)});
    cur.clear();
  };
  for (int r = 0; r < regions; ++r) {
    RealAlg s = sample(r);
    if (!V.contains(s)) {
      flush();
      continue;
    }
    std::vector<int> I;
    for (int i = 0; i < static_cast<int>(members.size()); ++i)
      if (members[i].contains(s)) I.push_back(i);
    if (!cur.empty() && I != cur_I) flush();
    cur_I = I;
    cur.push_back(piece(r));
  }
  flush();
  return out;
}

std::vector<RealAlg> line_endpoints(const std::vector<IntervalSet>& members, const IntervalSet& V) {
  std::vector<RealAlg> pts = V.breakpoints();
  for (auto& m : members) pts.insert(pts.end(), m.breakpoints().begin(), m.breakpoints().end());
  sort_unique(pts);
  return pts;
}

EpsilonLadder admissible_ladder(const std::vector<RealAlg>& endpoints, int len) {
  std::vector<RealAlg> base = endpoints;
  sort_unique(base);
  EpsilonLadder L;
  L.eps.resize(len);
  L.certificate.resize(len);
  std::vector<Q> larger;
  for (int j = len - 1; j >= 0; --j) {
    auto delta = min_half_gap(offset_points(base, larger));
    L.certificate[j] = delta ? *delta : RealAlg(4);
    L.eps[j] = dyadic_below(L.certificate[j].mul(Q(1, 4)));
    larger.push_back(L.eps[j]);
  }
  return L;
}

EpsilonLadder certify_ladder(const std::vector<RealAlg>& endpoints, const std::vector<Q>& eps) {
  check_ladder_shape(eps, eps.size());
  std::vector<RealAlg> base = endpoints;
  sort_unique(base);
  EpsilonLadder L;
  L.eps = eps;
  L.certificate.resize(eps.size());
  std::vector<Q> larger;
  for (int j = static_cast<int>(eps.size()) - 1; j >= 0; --j) {
    auto delta = min_half_gap(offset_points(base, larger));
    if (delta && compare(*delta, eps[j]) <= 0)
      throw InadmissibleLadder("eps_" + std::to_string(j + 1) + " = " + eps[j].get_str() +
                               " is not below the critical radius " + delta->str());
    L.certificate[j] = delta ? *delta : RealAlg(eps[j] + 1);
    larger.push_back(eps[j]);
  }
  return L;
}

GvResult gv_replace(const std::vector<IntervalSet>& members, const IntervalSet& V,
                    const std::vector<std::vector<int>>& sigma, const EpsilonLadder& ladder) {
  check_closed_members(members, V);
  if (!V.bounded()) throw UnsupportedTubes("V must be bounded");
  int n = static_cast<int>(members.size());
  check_ladder_shape(ladder.eps, 2 * static_cast<size_t>(n));
  GvResult res;
  res.ladder = certify_ladder(line_endpoints(members, V), ladder.eps);
  auto sig = normalized_sigma(sigma, n);
  std::set<std::vector<int>> in_sets;
  for (auto& c : line_cells(members, V)) in_sets.insert(c.I);

  IntervalSet X;
  for (auto& I : sig) X = X | cell_set(members, V, I);
  res.trace.push_back(X);
  res.before = betti(X);
  const auto& eps = ladder.eps;
  for (int m = 0; m <= n; ++m) {
    IntervalSet add, rem;
    for (auto& I : in_sets) {
      if (static_cast<int>(I.size()) != m) continue;
      bool chosen = std::binary_search(sig.begin(), sig.end(), I);
      IntervalSet part = V;
      size_t p = 0;
      for (int i = 0; i < n; ++i) {
        if (p < I.size() && I[p] == i) {
          ++p;
          part = part & (chosen ? closed_tube(members[i], eps[2 * m - 1]) : open_tube(members[i], eps[2 * m - 2]));
        } else {
          part = part & (chosen ? members[i].complement().closure() : members[i].complement());
        }
      }
      (chosen ? add : rem) = (chosen ? add : rem) | part;
    }
    X = (X | add) - rem;
    res.trace.push_back(X);
  }
  res.x_prime = X;
  res.after = betti(X);
  res.closed = X.is_closed();
  res.bounded = X.bounded();
  return res;
}

GvResult gv_replace_planar(const std::vector<MemberSet>& members, const MemberSet& V,
                           const std::vector<std::vector<int>>& sigma, const std::vector<Q>& eps) {
  std::vector<RoundMember> ms;
  for (auto& m : members) ms.push_back(round_member(m));
  RoundMember v = round_member(V);
  if (v.kind != RoundKind::Disk) throw UnsupportedTubes("V must be a closed disk");
  check_ladder_shape(eps, 2 * ms.size());
  for (auto& m : ms)
    if (m.kind != RoundKind::Disk && !eps.empty() && eps.back() >= m.r)
      throw InadmissibleLadder("eps_2n must be below every member radius");
  return gv_planar_at(ms, v, normalized_sigma(sigma, static_cast<int>(ms.size())), eps);
}

GvResult gv_replace_planar(const std::vector<MemberSet>& members, const MemberSet& V,
                           const std::vector<std::vector<int>>& sigma) {
  std::vector<RoundMember> ms;
  for (auto& m : members) ms.push_back(round_member(m));
  RoundMember v = round_member(V);
  if (v.kind != RoundKind::Disk) throw UnsupportedTubes("V must be a closed disk");
  auto sig = normalized_sigma(sigma, static_cast<int>(ms.size()));
  int len = 2 * static_cast<int>(ms.size());
  if (len == 0) return gv_planar_at(ms, v, sig, {});

  Q top = std::min(v.r, Q(1));
  for (auto& m : ms) top = std::min(top, m.r);
  top = dyadic_below(RealAlg(top / 4));
  auto ladder_at = [&](int halvings) {
    std::vector<Q> eps(len);
    Q e = top;
    for (int h = 0; h < halvings; ++h) e /= 2;
    for (int j = len - 1; j >= 0; --j, e /= 4) eps[j] = e;
    return eps;
  };
  // stable when the Betti vector survives two further halvings
  constexpr int kMaxHalvings = 12;
  std::vector<GvResult> runs;
  for (int h = 0; h <= kMaxHalvings; ++h) {
    runs.push_back(gv_planar_at(ms, v, sig, ladder_at(h)));
    int s = static_cast<int>(runs.size());
    if (s >= 3 && runs[s - 3].after == runs[s - 2].after && runs[s - 2].after == runs[s - 1].after) {
      return runs[s - 3];
    }
  }
  throw InadmissibleLadder("Betti vector did not stabilize under halving");
}

AnnulusReduction annulus_reduction(const std::vector<IntervalSet>& members, const IntervalSet& V, const Q& eps1,
                                   const Q& eps2) {
  check_closed_members(members, V);
  if (!(eps1 > eps2 && eps2 > 0)) throw RadiusOrder("annulus needs eps1 > eps2 > 0");
  auto delta = min_half_gap(line_endpoints(members, V));
  if (delta && compare(*delta, eps1) <= 0)
    throw EpsilonTooLarge("eps1 = " + eps1.get_str() + " is not below the critical radius " + delta->str());

  IntervalSet W = V;
  for (auto& m : members) W = W - tube(TubeKind::Ann, m, IntervalSet::line(), eps1, eps2);
  AnnulusReduction r;
  r.components = W.components();
  r.cells = line_cells(members, V);
  int n = static_cast<int>(members.size());
  std::vector<int> used(r.components.size(), 0);
  for (auto& c : r.cells) {
    IntervalSet core = V;
    size_t p = 0;
    for (int i = 0; i < n; ++i) {
      if (p < c.I.size() && c.I[p] == i) {
        ++p;
        core = core & closed_tube(members[i], eps2);
      } else {
        core = core - open_tube(members[i], eps1);
      }
    }
    int found = -1;
    for (size_t k = 0; k < r.components.size(); ++k) {
      auto& K = r.components[k];
      if (!K.subset_of(core) || (K & c.set).is_empty()) continue;
      if (found >= 0) throw AssertionFailure("cell meets two annulus-complement components");
      found = static_cast<int>(k);
    }
    if (found < 0) throw AssertionFailure("cell " + c.set.str() + " has no annulus-complement component");
    if (used[found]++) throw AssertionFailure("two cells share an annulus-complement component");
    r.match.push_back(found);
  }
  if (r.match.size() != r.components.size()) throw AssertionFailure("annulus-complement component left unmatched");
  return r;
}

TubeFamilyReport tube_family_decomposition(const std::vector<IntervalSet>& members, const IntervalSet& V,
                                           const std::vector<Q>& eps, const std::vector<IntervalSet>& tests) {
  check_closed_members(members, V);
  int n = static_cast<int>(members.size());
  if (static_cast<int>(eps.size()) != n) throw std::invalid_argument("one radius per member");
  for (int i = 0; i < n; ++i) {
    if (eps[i] <= 0) throw RadiusOrder("radii must be positive");
    if (i > 0 && eps[i] >= eps[i - 1]) throw RadiusOrder("radii must strictly decrease");
  }
  // stage i sees the endpoints offset by eps_k and 2 eps_k for every k < i
  std::vector<RealAlg> base = line_endpoints(members, V);
  std::vector<Q> larger;
  for (int i = 0; i < n; ++i) {
    auto delta = min_half_gap(offset_points(base, larger));
    if (delta && compare(*delta, Q(2 * eps[i])) <= 0)
      throw EpsilonTooLarge("2 eps_" + std::to_string(i + 1) + " is not below the critical radius " + delta->str());
    larger.push_back(eps[i]);
    larger.push_back(2 * eps[i]);
  }

  TubeFamilyReport r;
  for (int i = 0; i < n; ++i) {
    r.family.push_back(members[i]);
    r.family.push_back(tube(TubeKind::BT, members[i], IntervalSet::line(), eps[i]));
    r.family.push_back(open_tube(members[i], Q(2 * eps[i])).complement());
  }
  for (auto& D : line_cells(r.family, V)) r.census += b0_1d(D.set);
  for (auto& S : tests) {
    if (!S.is_closed()) throw NotClosed("test sets must be closed");
    long b = b0_1d(S);
    r.b_tests.push_back(b);
    if (b > r.census) r.ok = false;
  }
  return r;
}

}  // namespace omin
