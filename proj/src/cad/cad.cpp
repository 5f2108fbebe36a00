#include "omin/cad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omin {

namespace {

// Same for two roots given as isolating intervals; refine callbacks shrink them.
template <class RA, class RB>
Q rational_between(RootInterval& a, RootInterval& b, RA refine_a, RB refine_b) {
  while (!(a.hi < b.lo)) {
    if (!a.exact()) refine_a(a);
    if (!b.exact()) refine_b(b);
  }
  return simplest_open(a.hi, b.lo);
}

Q below(const Q& lo) { return floor_q(lo) - 1; }
Q above(const Q& hi) { return ceil_q(hi) + 1; }

// Real roots of a square-free rational polynomial. Quadratics try a
// floating-point guess first, kept only if exact signs confirm it.
std::vector<RootInterval> fiber_roots(const UPoly& p) {
  if (p.degree() == 1) {
    Q r = -p.c[0] / p.c[1];
    return {{r, r}};
  }
  if (p.degree() == 2) {
    Q D = p.c[1] * p.c[1] - 4 * p.c[2] * p.c[0];
    if (D < 0) return {};
    double a = p.c[2].get_d(), b = p.c[1].get_d(), c = p.c[0].get_d(), d = D.get_d();
    if (a != 0 && d > 0 && std::isfinite(d)) {
      double sq = std::sqrt(d);
      double r1 = b >= 0 ? (-b - sq) / (2 * a) : (2 * c) / (-b + sq);
      double r2 = c / (a * r1);
      if (r1 > r2) std::swap(r1, r2);
      double eps = std::ldexp(std::max({1.0, std::fabs(r1), std::fabs(r2)}), -32);
      if (std::isfinite(r1) && std::isfinite(r2) && r2 - r1 > 4 * eps) {
        Q l1(r1 - eps), h1(r1 + eps), l2(r2 - eps), h2(r2 + eps);
        if (p.sign_at(l1) * p.sign_at(h1) < 0 && p.sign_at(l2) * p.sign_at(h2) < 0) return {{l1, h1}, {l2, h2}};
      }
    }
  }
  return isolate_real_roots(p);
}

// Order of two roots of square-free polynomials known to be distinct.
int compare_distinct(const UPoly& f, RootInterval& a, const UPoly& g, RootInterval& b) {
  for (int round = 0; round < 64; ++round) {
    if (a.hi < b.lo || (a.hi == b.lo && !(a.exact() && b.exact()))) return -1;
    if (b.hi < a.lo || (b.hi == a.lo && !(a.exact() && b.exact()))) return 1;
    if (a.exact() && b.exact()) break;
    if (!a.exact()) refine_root(f, a);
    if (!b.exact()) refine_root(g, b);
  }
  int c = compare(RealAlg::from_root(f, a), RealAlg::from_root(g, b));
  if (c == 0) throw std::logic_error("Cad: roots collide over an open interval");
  return c;
}

void add_unique(std::vector<int>& v, int x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

Cad Cad::build(const std::vector<std::vector<BPoly>>& atoms) {
  Cad c;
  c.atoms_ = atoms;
  c.atom_offset_.push_back(0);
  for (auto& m : atoms) c.atom_offset_.push_back(c.atom_offset_.back() + static_cast<int>(m.size()));
  c.build_basis();
  c.build_base();
  int nb = 2 * static_cast<int>(c.base_points_.size()) + 1;
  c.stacks_.resize(nb);
  c.stack_signs_.resize(nb);
  for (int j = 0; j < nb; ++j) {
    if (j % 2 == 0)
      c.build_interval_stack(j);
    else
      c.build_point_stack(j);
  }
  for (int j = 0; j < nb; j += 2) {
    if (j > 0) c.compute_limits(j, j - 1, 0);
    if (j + 1 < nb) c.compute_limits(j, j + 1, 1);
  }
  c.assemble_cells();
  return c;
}

void Cad::build_basis() {
  std::vector<BPoly> prims;
  int na = num_atoms();
  factors_.assign(na, AtomFactors());
  std::vector<BPoly> pparts(na);
  std::vector<int> atom_member(na);
  for (int m = 0; m < num_members(); ++m)
    for (size_t a = 0; a < atoms_[m].size(); ++a) {
      int g = atom_offset_[m] + static_cast<int>(a);
      atom_member[g] = m;
      const BPoly& f = atoms_[m][a];
      AtomFactors& af = factors_[g];
      if (f.is_zero()) {
        af.zero = true;
        continue;
      }
      af.kappa_sign = sgn(f.lc_y().lc());
      UPoly ct = content(f);
      if (ct.degree() >= 1) af.content = ct;
      BPoly pp = primitive_part(f);
      pparts[g] = pp;
      if (pp.deg_y() >= 1) prims.push_back(squarefree_primitive(pp));
    }
  // coprime refinement
  std::vector<BPoly> B;
  for (auto& p : prims) {
    BPoly q = p;
    for (size_t i = 0; i < B.size() && q.deg_y() >= 1; ++i) {
      BPoly g = gcd(q, B[i]);
      if (g.deg_y() < 1) continue;
      BPoly r = exact_div(B[i], g);
      B[i] = primitive_part(g);
      if (r.deg_y() >= 1) B.push_back(primitive_part(r));
      q = primitive_part(exact_div(q, g));
    }
    if (q.deg_y() >= 1) B.push_back(q);
  }
  basis_.clear();
  for (auto& b : B) basis_.push_back({b, {}, UPoly()});
  for (int g = 0; g < na; ++g) {
    if (factors_[g].zero) continue;
    BPoly rem = pparts[g];
    for (size_t i = 0; i < basis_.size() && rem.deg_y() >= 1; ++i) {
      int e = 0;
      while (rem.deg_y() >= 1 && divides(basis_[i].f, rem)) {
        rem = exact_div(rem, basis_[i].f);
        ++e;
      }
      if (e > 0) {
        factors_[g].factors.emplace_back(static_cast<int>(i), e);
        add_unique(basis_[i].members, atom_member[g]);
      }
    }
    if (rem.deg_y() >= 1) throw std::logic_error("Cad: atom not covered by basis");
    if (!rem.is_zero() && sgn(rem.lc_y().lc()) < 0) factors_[g].kappa_sign = -factors_[g].kappa_sign;
  }
  for (auto& b : basis_) std::sort(b.members.begin(), b.members.end());
}

void Cad::build_base() {
  proj_.clear();
  auto add = [&](const UPoly& p, std::vector<int> tags) {
    if (p.degree() < 1) return;
    UPoly s = squarefree(p);
    if (s.degree() < 1) return;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    proj_.push_back({s, tags});
  };
  for (auto& b : basis_) {
    add(b.f.lc_y(), {b.owner()});
    if (b.f.deg_y() >= 2) {
      b.disc = discriminant_y(b.f);
      add(b.disc, {b.owner()});
    }
  }
  for (size_t i = 0; i < basis_.size(); ++i)
    for (size_t j = i + 1; j < basis_.size(); ++j)
      add(resultant_y(basis_[i].f, basis_[j].f), {basis_[i].owner(), basis_[j].owner()});
  for (int m = 0; m < num_members(); ++m)
    for (size_t a = 0; a < atoms_[m].size(); ++a) {
      const AtomFactors& af = factors_[atom_offset_[m] + a];
      if (!af.zero && af.content.degree() >= 1) add(af.content, {m});
    }
  struct Entry {
    RealAlg x;
    int src;
  };
  std::vector<Entry> es;
  for (size_t k = 0; k < proj_.size(); ++k)
    for (auto& r : isolate_real_roots(proj_[k].p)) es.push_back({RealAlg::from_root(proj_[k].p, r), static_cast<int>(k)});
  std::stable_sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) { return compare(a.x, b.x) < 0; });
  base_points_.clear();
  base_src_.clear();
  for (auto& e : es) {
    if (!base_points_.empty() && compare(base_points_.back(), e.x) == 0) {
      base_src_.back().push_back(e.src);
      // keep the representative with the smaller defining polynomial
      if (e.x.defining_poly().degree() < base_points_.back().defining_poly().degree()) base_points_.back() = e.x;
      continue;
    }
    base_points_.push_back(e.x);
    base_src_.push_back({e.src});
  }
}

void Cad::build_interval_stack(int j) {
  CadStack& S = stacks_[j];
  int N = static_cast<int>(base_points_.size());
  int i = j / 2;
  Q s;
  if (N == 0)
    s = 0;
  else if (i == 0)
    s = below(base_points_[0].lo());
  else if (i == N)
    s = above(base_points_[N - 1].hi());
  else
    s = rational_between(base_points_[i - 1], base_points_[i]);
  S.over_point = false;
  S.x = RealAlg(s);
  int nb = static_cast<int>(basis_.size());
  struct YR {
    int elem;
    RootInterval r;
  };
  std::vector<YR> roots;
  std::vector<UPoly> fib(nb);
  for (int b = 0; b < nb; ++b) {
    fib[b] = basis_[b].f.at_x(s);
    if (fib[b].degree() >= 1)
      for (auto& r : fiber_roots(fib[b])) roots.push_back({b, r});
  }
  std::sort(roots.begin(), roots.end(),
            [&](YR& a, YR& b) { return compare_distinct(fib[a.elem], a.r, fib[b.elem], b.r) < 0; });
  int m = static_cast<int>(roots.size());
  S.sections.resize(m);
  S.elem_sections.assign(nb, {});
  for (int k = 0; k < m; ++k) {
    S.sections[k].elems = {{roots[k].elem, false}};
    S.elem_sections[roots[k].elem].push_back(k);
  }
  S.band_samples.resize(m + 1);
  auto refiner = [&](int b) { return [&fib, b](RootInterval& r) { refine_root(fib[b], r); }; };
  if (m == 0) {
    S.band_samples[0] = 0;
  } else {
    S.band_samples[0] = below(roots[0].r.lo);
    S.band_samples[m] = above(roots[m - 1].r.hi);
    for (int k = 1; k < m; ++k)
      S.band_samples[k] = rational_between(roots[k - 1].r, roots[k].r, refiner(roots[k - 1].elem), refiner(roots[k].elem));
  }
  for (int k = 0; k < m; ++k) S.sections[k].y = roots[k].r;
  // basis signs by position, propagated down from +oo; roots are simple here
  int sz = 2 * m + 1;
  std::vector<int8_t> bs(static_cast<size_t>(sz) * nb);
  for (int b = 0; b < nb; ++b) {
    int sg = sgn(fib[b].lc());
    std::vector<bool> vanish(m, false);
    for (int k : S.elem_sections[b]) vanish[k] = true;
    for (int pos = sz - 1; pos >= 0; --pos) {
      if (pos % 2 == 1 && vanish[pos / 2]) {
        bs[static_cast<size_t>(pos) * nb + b] = 0;
        sg = -sg;
      } else {
        bs[static_cast<size_t>(pos) * nb + b] = static_cast<int8_t>(sg);
      }
    }
  }
  int na = num_atoms();
  std::vector<int8_t>& out = stack_signs_[j];
  out.assign(static_cast<size_t>(sz) * na, 0);
  for (int a = 0; a < na; ++a) {
    const AtomFactors& af = factors_[a];
    if (af.zero) continue;
    int base_sign = af.kappa_sign * (af.content.degree() >= 1 ? af.content.sign_at(s) : 1);
    for (int pos = 0; pos < sz; ++pos) {
      int sg = base_sign;
      for (auto& [b, e] : af.factors) {
        int t = bs[static_cast<size_t>(pos) * nb + b];
        if (t == 0) {
          sg = 0;
          break;
        }
        if (t < 0 && e % 2 == 1) sg = -sg;
      }
      out[static_cast<size_t>(pos) * na + a] = static_cast<int8_t>(sg);
    }
  }
}

void Cad::build_point_stack(int j) {
  CadStack& S = stacks_[j];
  const RealAlg& alpha = base_points_[j / 2];
  S.over_point = true;
  S.x = alpha;
  S.ctx = std::make_unique<AlgCtx>(alpha);
  AlgCtx& ctx = *S.ctx;
  int nb = static_cast<int>(basis_.size());
  S.fiber_sqf.assign(nb, {});
  S.lc_sign.assign(nb, 0);
  S.elem_sections.assign(nb, {});
  std::vector<APoly> full(nb);
  struct YR {
    int elem;
    RootInterval r;
    bool multiple;
  };
  std::vector<YR> roots;
  for (int b = 0; b < nb; ++b) {
    const BPoly& f = basis_[b].f;
    S.lc_sign[b] = alpha.sign_of(f.lc_y());
    APoly F = a_from_bpoly(ctx, f);
    full[b] = F;
    S.fiber_sqf[b] = F;
    if (a_degree(F) <= 0) continue;
    // with lc(alpha) != 0 a nonzero discriminant means simple roots
    int ds = 0;
    if (S.lc_sign[b] != 0 && f.deg_y() == 2)
      ds = alpha.sign_of(f.c[1] * f.c[1] - Q(4) * (f.c[2] * f.c[0]));
    else if (S.lc_sign[b] != 0 && f.deg_y() > 2)
      ds = alpha.sign_of(basis_[b].disc);
    if (f.deg_y() == 2 && ds < 0) continue;
    if (f.deg_y() == 2 && ds > 0) {
      for (auto& r : a_isolate_split_quadratic(ctx, F)) roots.push_back({b, r, false});
      continue;
    }
    if (ds != 0) {
      for (auto& r : a_isolate(ctx, F)) roots.push_back({b, r, false});
      continue;
    }
    APoly sq = a_squarefree(ctx, F);
    S.fiber_sqf[b] = sq;
    APoly g;
    bool has_mult = a_degree(sq) < a_degree(F);
    if (has_mult) g = a_gcd(ctx, F, a_derivative(F));
    for (auto& r : a_isolate(ctx, sq)) {
      bool mult = false;
      if (has_mult) mult = r.exact() ? a_sign_at(ctx, g, r.lo) == 0 : a_has_root_in(ctx, g, r.lo, r.hi);
      roots.push_back({b, r, mult});
    }
  }
  // merge roots into sections, insertion by exact comparison
  std::vector<YR> reps;
  std::vector<std::vector<std::pair<int, bool>>> elems;
  for (auto& yr : roots) {
    size_t lo = 0, hi = reps.size();
    bool merged = false;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      int c = a_compare_roots(ctx, S.fiber_sqf[yr.elem], yr.r, S.fiber_sqf[reps[mid].elem], reps[mid].r);
      if (c == 0) {
        elems[mid].push_back({yr.elem, yr.multiple});
        merged = true;
        break;
      }
      if (c < 0)
        hi = mid;
      else
        lo = mid + 1;
    }
    if (merged) continue;
    reps.insert(reps.begin() + lo, yr);
    elems.insert(elems.begin() + lo, {{yr.elem, yr.multiple}});
  }
  int m = static_cast<int>(reps.size());
  S.sections.resize(m);
  for (int k = 0; k < m; ++k) {
    std::sort(elems[k].begin(), elems[k].end());
    // representative root interval must belong to elems[0]
    if (elems[k][0].first != reps[k].elem) {
      int e0 = elems[k][0].first;
      for (auto& yr : roots)
        if (yr.elem == e0 && a_compare_roots(ctx, S.fiber_sqf[e0], yr.r, S.fiber_sqf[reps[k].elem], reps[k].r) == 0) {
          reps[k] = yr;
          break;
        }
    }
    S.sections[k].elems = elems[k];
    for (auto& [b, mult] : elems[k]) S.elem_sections[b].push_back(k);
  }
  S.band_samples.resize(m + 1);
  auto refiner = [&](int b) { return [&ctx, &S, b](RootInterval& r) { a_refine_root(ctx, S.fiber_sqf[b], r); }; };
  if (m == 0) {
    S.band_samples[0] = 0;
  } else {
    S.band_samples[0] = below(reps[0].r.lo);
    S.band_samples[m] = above(reps[m - 1].r.hi);
    for (int k = 1; k < m; ++k)
      S.band_samples[k] = rational_between(reps[k - 1].r, reps[k].r, refiner(reps[k - 1].elem), refiner(reps[k].elem));
  }
  for (int k = 0; k < m; ++k) S.sections[k].y = reps[k].r;
  // basis signs by position
  int sz = 2 * m + 1;
  std::vector<int8_t> bs(static_cast<size_t>(sz) * nb);
  for (int b = 0; b < nb; ++b) {
    const APoly& F = full[b];
    int sg = a_degree(F) >= 1 ? ctx.sign(F.back()) : (F.empty() ? 0 : ctx.sign(F[0]));
    std::vector<int> vanish(m, -1);  // -1 none, 0 simple, 1 multiple
    for (int k = 0; k < m; ++k)
      for (auto& [e, mult] : S.sections[k].elems)
        if (e == b) vanish[k] = mult ? 1 : 0;
    for (int pos = sz - 1; pos >= 0; --pos) {
      if (pos % 2 == 1 && vanish[pos / 2] >= 0) {
        bs[static_cast<size_t>(pos) * nb + b] = 0;
        if (vanish[pos / 2] == 0)
          sg = -sg;
        else
          sg = a_sign_at(ctx, F, S.band_samples[pos / 2]);
      } else {
        bs[static_cast<size_t>(pos) * nb + b] = static_cast<int8_t>(sg);
      }
    }
  }
  int na = num_atoms();
  std::vector<int8_t>& out = stack_signs_[j];
  out.assign(static_cast<size_t>(sz) * na, 0);
  for (int a = 0; a < na; ++a) {
    const AtomFactors& af = factors_[a];
    if (af.zero) continue;
    int base_sign = af.kappa_sign * (af.content.degree() >= 1 ? alpha.sign_of(af.content) : 1);
    for (int pos = 0; pos < sz; ++pos) {
      int sg = base_sign;
      for (auto& [b, e] : af.factors) {
        int t = bs[static_cast<size_t>(pos) * nb + b];
        if (t == 0) {
          sg = 0;
          break;
        }
        if (t < 0 && e % 2 == 1) sg = -sg;
      }
      out[static_cast<size_t>(pos) * na + a] = static_cast<int8_t>(sg);
    }
  }
}

void Cad::compute_limits(int ii, int pp, int side) {
  CadStack& I = stacks_[ii];
  CadStack& P = stacks_[pp];
  int nb = static_cast<int>(basis_.size());
  for (int b = 0; b < nb; ++b) {
    const auto& sI = I.elem_sections[b];
    if (sI.empty()) continue;
    const auto& sP = P.elem_sections[b];
    int nmult = 0;
    std::vector<bool> mult(sP.size());
    for (size_t k = 0; k < sP.size(); ++k) {
      for (auto& [e, mu] : P.sections[sP[k]].elems)
        if (e == b) mult[k] = mu;
      nmult += mult[k];
    }
    int m = static_cast<int>(sI.size());
    int nsimple = static_cast<int>(sP.size()) - nmult;
    bool forced = P.lc_sign[b] != 0 && nmult <= 1 && (nmult == 1 ? m >= nsimple : m == nsimple);
    if (forced) {
      int take = m - nsimple;
      size_t t = 0;
      for (size_t k = 0; k < sP.size(); ++k) {
        int cnt = mult[k] ? take : 1;
        for (int c = 0; c < cnt; ++c) I.sections[sI[t++]].lim[side] = sP[k];
      }
      continue;
    }
    // Strip method: pick a in the interval near the point so that no
    // separator line y = t is crossed by f between x = a and the point.
    const BPoly& f = basis_[b].f;
    const RealAlg& alpha = P.x;
    std::vector<std::vector<UPoly>> seqs;
    std::vector<UPoly> gs;
    for (const Q& t : P.band_samples) {
      gs.push_back(f.at_y(t));
      seqs.push_back(sturm_sequence(gs.back()));
    }
    const RealAlg* other = nullptr;  // far end of the interval, if finite
    int N = static_cast<int>(base_points_.size());
    if (side == 1 && ii / 2 >= 1) other = &base_points_[ii / 2 - 1];
    if (side == 0 && ii / 2 < N) other = &base_points_[ii / 2];
    Q a = I.x.value();
    while (true) {
      Q lo, hi;
      if (side == 1) {
        lo = a;
        hi = alpha.hi();
      } else {
        lo = alpha.lo();
        hi = a;
      }
      bool ok = lo < hi;
      for (size_t k = 0; ok && k < gs.size(); ++k) {
        if (gs[k].is_zero() || gs[k].sign_at(lo) == 0 || gs[k].sign_at(hi) == 0 || count_roots(seqs[k], lo, hi) > 0)
          ok = false;
      }
      if (ok) break;
      alpha.refine();
      Q near = side == 1 ? alpha.lo() : alpha.hi();
      Q cand = (a + near) / 2;
      if (other == nullptr || (side == 1 ? compare(*other, cand) < 0 : compare(*other, cand) > 0)) a = cand;
    }
    UPoly q = f.at_x(a);
    auto rs = isolate_real_roots(q);
    if (static_cast<int>(rs.size()) != m) throw std::logic_error("Cad: branch count mismatch");
    for (int k = 0; k < m; ++k) {
      RealAlg y = RealAlg::from_root(q, rs[k]);
      int strip = 0;  // number of separators below y
      while (strip < static_cast<int>(P.band_samples.size()) && compare(y, P.band_samples[strip]) > 0) ++strip;
      int lim;
      if (strip == 0)
        lim = kLimNegInf;
      else if (strip == static_cast<int>(P.band_samples.size()))
        lim = kLimPosInf;
      else
        lim = strip - 1;
      I.sections[sI[k]].lim[side] = lim;
    }
  }
}

void Cad::assemble_cells() {
  int nb = static_cast<int>(stacks_.size());
  int total = 0;
  for (auto& S : stacks_) {
    S.first_cell = total;
    total += S.size();
  }
  cells_.assign(total, CadCell());
  int na = num_atoms();
  signs_.assign(static_cast<size_t>(total) * na, 0);
  for (int j = 0; j < nb; ++j) {
    CadStack& S = stacks_[j];
    std::copy(stack_signs_[j].begin(), stack_signs_[j].end(), signs_.begin() + static_cast<size_t>(S.first_cell) * na);
    std::vector<int8_t>().swap(stack_signs_[j]);
    bool base_unbounded = j == 0 || j == nb - 1;
    int m = static_cast<int>(S.sections.size());
    for (int pos = 0; pos < S.size(); ++pos) {
      CadCell& c = cells_[S.first_cell + pos];
      c.id = S.first_cell + pos;
      c.base = j;
      c.pos = pos;
      c.dim = (S.over_point ? 0 : 1) + (pos % 2 == 0 ? 1 : 0);
      bool u = base_unbounded || pos == 0 || pos == 2 * m;
      if (!u && !S.over_point) {
        auto sec_unb = [&](int k) {
          return S.sections[k].lim[0] < 0 || S.sections[k].lim[1] < 0;
        };
        if (pos % 2 == 1)
          u = sec_unb(pos / 2);
        else
          u = sec_unb(pos / 2 - 1) || sec_unb(pos / 2);
      }
      c.unbounded = u;
    }
  }
  stack_signs_.clear();
  auto link = [&](int a, int b) {
    cells_[a].adj.push_back(b);
    cells_[b].adj.push_back(a);
  };
  for (int j = 0; j < nb; ++j) {
    const CadStack& S = stacks_[j];
    for (int pos = 1; pos < S.size(); pos += 2) {
      link(S.first_cell + pos, S.first_cell + pos - 1);
      link(S.first_cell + pos, S.first_cell + pos + 1);
    }
    if (S.over_point) continue;
    int m = static_cast<int>(S.sections.size());
    for (int side = 0; side < 2; ++side) {
      int pj = side == 0 ? j - 1 : j + 1;
      if (pj < 0 || pj >= nb) continue;
      const CadStack& P = stacks_[pj];
      int mp = static_cast<int>(P.sections.size());
      for (int k = 0; k < m; ++k) {
        int lim = S.sections[k].lim[side];
        if (lim >= 0) link(S.first_cell + 2 * k + 1, P.first_cell + 2 * lim + 1);
      }
      for (int k = 0; k <= m; ++k) {
        int lower = k == 0 ? kLimNegInf : S.sections[k - 1].lim[side];
        int upper = k == m ? kLimPosInf : S.sections[k].lim[side];
        if (lower == kLimPosInf || upper == kLimNegInf) continue;
        int lo = lower == kLimNegInf ? 0 : 2 * lower + 1;
        int hi = upper == kLimPosInf ? 2 * mp : 2 * upper + 1;
        for (int pos = lo; pos <= hi; ++pos) link(S.first_cell + 2 * k, P.first_cell + pos);
      }
    }
  }
  for (auto& c : cells_) {
    std::sort(c.adj.begin(), c.adj.end());
    c.adj.erase(std::unique(c.adj.begin(), c.adj.end()), c.adj.end());
  }
}

int Cad::sign_at_sample(int c, const BPoly& g) const {
  const CadCell& cell = cells_[c];
  const CadStack& S = stacks_[cell.base];
  if (!S.over_point) {
    const Q& s = S.x.value();
    if (cell.pos % 2 == 0) return sgn(g.eval(s, S.band_samples[cell.pos / 2]));
    const CadSection& sec = S.sections[cell.pos / 2];
    UPoly q = basis_[sec.elems[0].first].f.at_x(s);
    RealAlg y = RealAlg::from_root(q, sec.y);
    return y.sign_of(g.at_x(s));
  }
  AlgCtx& ctx = *S.ctx;
  APoly G = a_from_bpoly(ctx, g);
  if (G.empty()) return 0;
  if (cell.pos % 2 == 0) return a_sign_at(ctx, G, S.band_samples[cell.pos / 2]);
  const CadSection& sec = S.sections[cell.pos / 2];
  RootInterval r = sec.y;
  return a_sign_at_root(ctx, S.fiber_sqf[sec.elems[0].first], r, G);
}

std::pair<double, double> Cad::sample_approx(int c) const {
  const CadCell& cell = cells_[c];
  const CadStack& S = stacks_[cell.base];
  double x = S.x.approx();
  if (cell.pos % 2 == 0) return {x, S.band_samples[cell.pos / 2].get_d()};
  const CadSection& sec = S.sections[cell.pos / 2];
  RootInterval r = sec.y;
  Q w(1, 1 << 30);
  if (!S.over_point) {
    UPoly q = basis_[sec.elems[0].first].f.at_x(S.x.value());
    while (!r.exact() && r.hi - r.lo > w) refine_root(q, r);
  } else {
    while (!r.exact() && r.hi - r.lo > w) a_refine_root(*S.ctx, S.fiber_sqf[sec.elems[0].first], r);
  }
  return {x, Q((r.lo + r.hi) / 2).get_d()};
}

}  // namespace omin
