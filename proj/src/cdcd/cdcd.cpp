#include "omin/cdcd.hpp"

#include <algorithm>
#include <sstream>

#include "omin/arrangement.hpp"

namespace omin {

namespace {

void check_members(const std::vector<MemberSet>& members, int k) {
  if (k != 1 && k != 2) throw UnsupportedDimension("cdcd supports k = 1 and k = 2 only");
  for (auto& m : members) {
    if (m.k() != k) throw DimensionMismatch("member dimension differs from k");
    if (m.numeric()) throw NonExactMember("member has numeric-only atoms");
  }
}

std::vector<int> merged(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// index of x in sorted pts, or -1
int find_point(const std::vector<RealAlg>& pts, const RealAlg& x) {
  auto it = std::lower_bound(pts.begin(), pts.end(), x, [](const RealAlg& a, const RealAlg& b) { return a < b; });
  if (it == pts.end() || compare(*it, x) != 0) return -1;
  return static_cast<int>(it - pts.begin());
}

// number of points strictly below x
int count_below(const std::vector<RealAlg>& pts, const RealAlg& x) {
  auto it = std::lower_bound(pts.begin(), pts.end(), x, [](const RealAlg& a, const RealAlg& b) { return a < b; });
  return static_cast<int>(it - pts.begin());
}

void fill_base_cells(CdcdTree& t) {
  int N = static_cast<int>(t.base_points.size());
  t.base_cells.clear();
  for (int j = 0; j <= 2 * N; ++j) {
    CdcdCell c;
    c.id = j;
    c.level = 1;
    c.base = j;
    if (j % 2 == 1) {
      c.kind = CdcdKind::Point;
      c.determinants = t.base_owner[j / 2];
    } else {
      c.kind = CdcdKind::Interval;
      if (j > 0) c.determinants = merged(c.determinants, t.base_owner[j / 2 - 1]);
      if (j < 2 * N) c.determinants = merged(c.determinants, t.base_owner[j / 2]);
    }
    t.base_cells.push_back(std::move(c));
  }
}

// smallest member whose atom vanishes on section s of stack j
int section_owner(const Cad& cad, int j, int s) {
  int best = -1;
  for (auto& [e, mult] : cad.stack(j).sections[s].elems) {
    int o = cad.basis()[e].owner();
    if (best < 0 || o < best) best = o;
  }
  return best;
}

std::vector<BPoly> member_bpolys(const MemberSet& m) {
  std::vector<BPoly> out;
  for (auto& p : m.polys()) out.push_back(p.to_bpoly());
  return out;
}

std::vector<UPoly> member_upolys(const MemberSet& m) {
  std::vector<UPoly> out;
  for (auto& p : m.polys()) out.push_back(p.to_upoly());
  return out;
}

// Stack position in the cad of position `pos` among the kept sections.
int cad_position(const std::vector<int>& kept, int pos) {
  if (pos % 2 == 1) return 2 * kept[pos / 2] + 1;
  int t = pos / 2;
  return t == 0 ? 0 : 2 * kept[t - 1] + 2;
}

std::pair<double, double> approx_point(const CdcdTree& t, int base, int pos) {
  if (t.k == 1 || !t.cad) {
    int N = static_cast<int>(t.base_points.size());
    if (N == 0) return {0, 0};
    if (base % 2 == 1) return {t.base_points[base / 2].approx(), 0};
    if (base == 0) return {t.base_points[0].approx() - 1, 0};
    if (base == 2 * N) return {t.base_points[N - 1].approx() + 1, 0};
    return {(t.base_points[base / 2 - 1].approx() + t.base_points[base / 2].approx()) / 2, 0};
  }
  int cp = cad_position(t.sections[base], pos);
  return t.cad->sample_approx(t.cad->cell_id(base, cp));
}

AdaptedReport fail(std::string reason, int cell, int member, std::pair<double, double> p) {
  AdaptedReport r;
  r.ok = false;
  r.reason = std::move(reason);
  r.cell = cell;
  r.member = member;
  r.point = p;
  return r;
}

// Critical x-values of a planar member family: contents, leading
// coefficients, discriminants and pairwise resultants of the atoms.
std::vector<std::pair<UPoly, int>> critical_polys(const std::vector<std::vector<BPoly>>& atoms) {
  std::vector<std::pair<UPoly, int>> out;
  std::vector<std::pair<BPoly, int>> sq;
  auto add = [&](const UPoly& p, int m) {
    if (p.degree() >= 1) out.push_back({squarefree(p), m});
  };
  for (int m = 0; m < static_cast<int>(atoms.size()); ++m)
    for (auto& f : atoms[m]) {
      if (f.is_zero()) continue;
      add(content(f), m);
      BPoly pp = primitive_part(f);
      if (pp.deg_y() < 1) continue;
      BPoly s = squarefree_primitive(pp);
      add(s.lc_y(), m);
      if (s.deg_y() >= 2) add(discriminant_y(s), m);
      sq.push_back({s, m});
    }
  for (size_t a = 0; a < sq.size(); ++a)
    for (size_t b = a + 1; b < sq.size(); ++b) {
      const BPoly &f = sq[a].first, &g = sq[b].first;
      int m = std::min(sq[a].second, sq[b].second);
      BPoly h = gcd(f, g);
      if (h.deg_y() < 1) {
        add(resultant_y(f, g), m);
        continue;
      }
      BPoly u = exact_div(f, h), v = exact_div(g, h);
      if (u.deg_y() >= 1 && v.deg_y() >= 1) add(resultant_y(u, v), m);
      if (u.deg_y() >= 1) add(resultant_y(h, u), m);
      if (v.deg_y() >= 1) add(resultant_y(h, v), m);
    }
  return out;
}

}  // namespace

const char* kind_name(CdcdKind k) {
  switch (k) {
    case CdcdKind::Point: return "point";
    case CdcdKind::Interval: return "interval";
    case CdcdKind::Section: return "section";
    case CdcdKind::Band: return "band";
  }
  return "?";
}

CdcdTree build_cdcd(const std::vector<MemberSet>& members, int k) {
  check_members(members, k);
  CdcdTree t;
  t.k = k;
  t.members = members;
  if (k == 1) {
    std::vector<std::pair<RealAlg, int>> es;
    for (int m = 0; m < static_cast<int>(members.size()); ++m)
      for (auto& p : member_upolys(members[m]))
        if (p.degree() >= 1)
          for (auto& x : RealAlg::roots_of(p)) es.push_back({x, m});
    std::stable_sort(es.begin(), es.end(), [](const auto& a, const auto& b) {
      int c = compare(a.first, b.first);
      return c != 0 ? c < 0 : a.second < b.second;
    });
    for (auto& [x, m] : es) {
      if (!t.base_points.empty() && compare(t.base_points.back(), x) == 0) continue;  // owner stays the smallest
      t.base_points.push_back(x);
      t.base_owner.push_back({m});
    }
    fill_base_cells(t);
    t.cells = t.base_cells;
    return t;
  }
  std::vector<std::vector<BPoly>> atoms;
  for (auto& m : members) atoms.push_back(member_bpolys(m));
  auto cad = std::make_shared<Cad>(Cad::build(atoms));
  t.cad = cad;
  t.base_points = cad->base_points();
  for (auto& srcs : cad->base_point_sources()) {
    // the projection polynomial with the fewest, then smallest, tags
    const std::vector<int>* best = nullptr;
    for (int s : srcs) {
      const auto& tags = cad->projection()[s].tags;
      if (!best || tags.size() < best->size() || (tags.size() == best->size() && tags < *best)) best = &tags;
    }
    t.base_owner.push_back(*best);
  }
  fill_base_cells(t);
  int nb = cad->num_base_cells();
  t.sections.assign(nb, {});
  for (int j = 0; j < nb; ++j) {
    const CadStack& S = cad->stack(j);
    int m = static_cast<int>(S.sections.size());
    for (int s = 0; s < m; ++s) t.sections[j].push_back(s);
    std::vector<int> owner(m);
    for (int s = 0; s < m; ++s) owner[s] = section_owner(*cad, j, s);
    for (int pos = 0; pos < S.size(); ++pos) {
      CdcdCell c;
      c.id = cad->cell_id(j, pos);
      c.level = 2;
      c.base = j;
      c.pos = pos;
      c.determinants = t.base_cells[j].determinants;
      if (pos % 2 == 1) {
        c.kind = CdcdKind::Section;
        c.determinants = merged(c.determinants, {owner[pos / 2]});
      } else {
        c.kind = CdcdKind::Band;
        if (pos > 0) c.determinants = merged(c.determinants, {owner[pos / 2 - 1]});
        if (pos / 2 < m) c.determinants = merged(c.determinants, {owner[pos / 2]});
      }
      t.cells.push_back(std::move(c));
    }
  }
  return t;
}

const std::vector<int>& determinant_indices(const CdcdTree& tree, int cell) {
  if (cell < 0 || cell >= tree.num_cells()) throw UnknownCell("no cdcd cell " + std::to_string(cell));
  return tree.cells[cell].determinants;
}

std::string CdcdTree::dump() const {
  std::ostringstream os;
  auto line = [&](const CdcdCell& c, int indent) {
    os << std::string(indent, ' ') << "(" << c.id << ", " << c.level << ", kind=" << kind_name(c.kind)
       << ", determinants=[";
    for (size_t i = 0; i < c.determinants.size(); ++i) os << (i ? "," : "") << c.determinants[i];
    os << "])\n";
  };
  if (k == 1) {
    for (auto& c : cells) line(c, 0);
    return os.str();
  }
  size_t next = 0;
  for (auto& b : base_cells) {
    line(b, 0);
    while (next < cells.size() && cells[next].base == b.id) line(cells[next++], 2);
  }
  return os.str();
}

AdaptedReport verify_adapted_partition(const CdcdTree& t, const std::vector<MemberSet>& members) {
  int N = static_cast<int>(t.base_points.size());
  for (int i = 1; i < N; ++i)
    if (compare(t.base_points[i - 1], t.base_points[i]) >= 0)
      return fail("base points not strictly increasing", -1, -1, {t.base_points[i].approx(), 0});
  int nb = 2 * N + 1;
  if (static_cast<int>(t.base_cells.size()) != nb) return fail("base cells do not match base points", -1, -1, {0, 0});

  // (a) every stack position covered exactly once
  std::vector<int> stack_size(nb, 1);
  if (t.k == 2) {
    if (!t.cad || static_cast<int>(t.sections.size()) != nb || t.cad->num_base_cells() != nb)
      return fail("stack data missing", -1, -1, {0, 0});
    for (int j = 0; j < nb; ++j) {
      const auto& kept = t.sections[j];
      int m = static_cast<int>(t.cad->stack(j).sections.size());
      for (size_t s = 0; s < kept.size(); ++s)
        if (kept[s] < 0 || kept[s] >= m || (s > 0 && kept[s] <= kept[s - 1]))
          return fail("sections not strictly increasing", -1, -1, approx_point(t, j, 0));
      stack_size[j] = 2 * static_cast<int>(kept.size()) + 1;
    }
  }
  std::vector<std::vector<int>> seen(nb);
  for (int j = 0; j < nb; ++j) seen[j].assign(stack_size[j], 0);
  for (auto& c : t.cells) {
    if (c.base < 0 || c.base >= nb || c.pos < 0 || c.pos >= stack_size[c.base])
      return fail("cell outside the stack structure", c.id, -1, {0, 0});
    bool odd = (t.k == 1 ? c.base : c.pos) % 2 == 1;
    CdcdKind want = t.k == 1 ? (odd ? CdcdKind::Point : CdcdKind::Interval) : (odd ? CdcdKind::Section : CdcdKind::Band);
    if (c.kind != want) return fail("cell kind does not match its position", c.id, -1, approx_point(t, c.base, c.pos));
    if (++seen[c.base][c.pos] > 1) return fail("two cells overlap", c.id, -1, approx_point(t, c.base, c.pos));
  }
  for (int j = 0; j < nb; ++j)
    for (int p = 0; p < stack_size[j]; ++p)
      if (!seen[j][p]) return fail("uncovered sample point", -1, -1, approx_point(t, j, p));

  // (b) sign invariance
  if (t.k == 1) {
    for (int m = 0; m < static_cast<int>(members.size()); ++m)
      for (auto& p : member_upolys(members[m])) {
        if (p.degree() < 1) continue;
        for (auto& x : RealAlg::roots_of(p))
          if (find_point(t.base_points, x) < 0) {
            int cell = 2 * count_below(t.base_points, x);
            return fail("member zero inside a cell", cell, m, {x.approx(), 0});
          }
      }
    return {};
  }
  std::vector<std::vector<BPoly>> atoms;
  for (auto& m : members) atoms.push_back(member_bpolys(m));
  for (auto& [p, m] : critical_polys(atoms))
    for (auto& x : RealAlg::roots_of(p))
      if (find_point(t.base_points, x) < 0) return fail("critical value inside a base interval", -1, m, {x.approx(), 0});
  const Cad& cad = *t.cad;
  std::vector<int> first_cell(nb, 0);
  for (auto& c : t.cells)
    if (c.pos == 0) first_cell[c.base] = c.id;
  for (int j = 0; j < nb; ++j) {
    const CadStack& S = cad.stack(j);
    AlgCtx ctx(S.x);
    const auto& kept = t.sections[j];
    std::vector<APoly> G(kept.size());
    std::vector<RootInterval> R(kept.size());
    for (size_t s = 0; s < kept.size(); ++s) {
      const CadSection& sec = S.sections[kept[s]];
      G[s] = a_squarefree(ctx, a_from_bpoly(ctx, cad.basis()[sec.elems[0].first].f));
      R[s] = sec.y;
    }
    for (int m = 0; m < static_cast<int>(atoms.size()); ++m)
      for (auto& f : atoms[m]) {
        APoly A = a_from_bpoly(ctx, f);
        a_trim(ctx, A);
        if (a_degree(A) < 1) continue;  // constant or zero on the whole fiber
        APoly sq = a_squarefree(ctx, A);
        for (RootInterval r : a_isolate(ctx, sq)) {
          // binary search among the kept sections
          int lo = 0, hi = static_cast<int>(kept.size());
          bool hit = false;
          while (lo < hi) {
            int mid = (lo + hi) / 2;
            RootInterval rm = R[mid];
            int c = a_compare_roots(ctx, sq, r, G[mid], rm);
            if (c == 0) {
              hit = true;
              break;
            }
            if (c < 0)
              hi = mid;
            else
              lo = mid + 1;
          }
          if (!hit) {
            double y = (r.lo.get_d() + r.hi.get_d()) / 2;
            return fail("member zero inside a band", first_cell[j] + 2 * lo, m, {S.x.approx(), y});
          }
        }
      }
  }
  return {};
}

CdcdCensus cell_census(const CdcdTree& tree, const Q& c2) {
  CdcdCensus r;
  r.cells = tree.num_cells();
  long n = std::max<long>(1, static_cast<long>(tree.members.size()));
  int e = 2 * ((1 << tree.k) - 1);
  Q p = 1;
  for (int i = 0; i < e; ++i) p *= n;
  r.bound = c2 * p;
  r.ok = Q(r.cells) <= r.bound;
  return r;
}

bool locality_holds(const CdcdTree& t, int cell) {
  const CdcdCell& c = t.cells.at(cell);
  const std::vector<int>& D = c.determinants;
  std::vector<MemberSet> sub_members;
  for (int i : D) sub_members.push_back(t.members[i]);
  CdcdTree sub = build_cdcd(sub_members, t.k);

  // base cell with the same endpoints
  int N = static_cast<int>(t.base_points.size());
  int sub_base;
  if (c.base % 2 == 1) {
    int i = find_point(sub.base_points, t.base_points[c.base / 2]);
    if (i < 0) return false;
    sub_base = 2 * i + 1;
  } else {
    int i = c.base / 2;  // interval (p_{i-1}, p_i)
    int lo = -1, hi = static_cast<int>(sub.base_points.size());
    if (i > 0 && (lo = find_point(sub.base_points, t.base_points[i - 1])) < 0) return false;
    if (i < N && (hi = find_point(sub.base_points, t.base_points[i])) < 0) return false;
    if (hi != lo + 1) return false;
    sub_base = 2 * hi;
  }
  if (t.k == 1) return sub.cells[sub_base].kind == c.kind;

  // sections of the full stack that come from the determinant members
  const Cad& cad = *t.cad;
  const CadStack& S = cad.stack(c.base);
  const auto& kept = t.sections[c.base];
  std::vector<bool> from_d(kept.size(), false);
  int count = 0;
  for (size_t s = 0; s < kept.size(); ++s) {
    for (auto& [e, mult] : S.sections[kept[s]].elems)
      for (int m : cad.basis()[e].members)
        if (std::binary_search(D.begin(), D.end(), m)) from_d[s] = true;
    count += from_d[s];
  }
  if (static_cast<int>(sub.cad->stack(sub_base).sections.size()) != count) return false;
  int below = 0;
  int t_idx = c.pos / 2;
  for (int s = 0; s < t_idx; ++s) below += from_d[s];
  int sub_pos;
  if (c.pos % 2 == 1) {
    if (!from_d[t_idx]) return false;
    sub_pos = 2 * below + 1;
  } else {
    if (t_idx > 0 && !from_d[t_idx - 1]) return false;
    if (t_idx < static_cast<int>(kept.size()) && !from_d[t_idx]) return false;
    sub_pos = 2 * below;
  }
  const CdcdCell& sc = sub.cells[sub.cad->cell_id(sub_base, sub_pos)];
  return sc.base == sub_base && sc.pos == sub_pos && sc.kind == c.kind;
}

}  // namespace omin
