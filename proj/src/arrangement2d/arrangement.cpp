#include "omin/arrangement.hpp"

#include <algorithm>
#include <numeric>

namespace omin {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Regions regions_from(const Cad& cad, UnionFind& uf, const std::vector<bool>* keep) {
  Regions r;
  int nc = cad.num_cells();
  r.of_cell.assign(nc, -1);
  std::vector<int> id_of_root(nc, -1);
  for (int c = 0; c < nc; ++c) {
    if (keep && !(*keep)[c]) continue;
    int root = uf.find(c);
    if (id_of_root[root] < 0) {
      id_of_root[root] = r.size();
      r.cells.emplace_back();
      r.unbounded.push_back(false);
    }
    int id = id_of_root[root];
    r.of_cell[c] = id;
    r.cells[id].push_back(c);
    if (cad.cell(c).unbounded) r.unbounded[id] = true;
  }
  return r;
}

// Regions restricted to the cells marked in `keep`, joined along adjacency.
Regions components_of(const Cad& cad, const std::vector<bool>& keep) {
  UnionFind uf(cad.num_cells());
  for (auto& c : cad.cells())
    if (keep[c.id])
      for (int d : c.adj)
        if (d > c.id && keep[d]) uf.unite(c.id, d);
  return regions_from(cad, uf, &keep);
}

}  // namespace

Regions connected_classes(const Cad& cad, const std::function<bool(int, int)>& same) {
  UnionFind uf(cad.num_cells());
  for (auto& c : cad.cells())
    for (int d : c.adj)
      if (d > c.id && same(c.id, d)) uf.unite(c.id, d);
  return regions_from(cad, uf, nullptr);
}

std::vector<long> region_b1(const Cad& cad, const Regions& R) {
  int nr = R.size(), inf = nr, nv = nr + 1;
  std::vector<std::vector<int>> g(nv);
  for (auto& c : cad.cells()) {
    int a = R.of_cell[c.id];
    for (int d : c.adj) {
      int b = R.of_cell[d];
      if (a != b) g[a].push_back(b);
    }
  }
  for (int r = 0; r < nr; ++r)
    if (R.unbounded[r]) {
      g[r].push_back(inf);
      g[inf].push_back(r);
    }
  for (auto& v : g) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  // iterative DFS from infinity; a child subtree c of v is cut off from
  // infinity by removing v exactly when low[c] >= disc[v]
  std::vector<int> disc(nv, -1), low(nv, 0), parent(nv, -1);
  std::vector<size_t> next(nv, 0);
  std::vector<long> b1(nr, 0);
  int timer = 0;
  std::vector<int> st = {inf};
  disc[inf] = low[inf] = timer++;
  while (!st.empty()) {
    int v = st.back();
    if (next[v] < g[v].size()) {
      int w = g[v][next[v]++];
      if (disc[w] < 0) {
        parent[w] = v;
        disc[w] = low[w] = timer++;
        st.push_back(w);
      } else if (w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
      continue;
    }
    st.pop_back();
    int p = parent[v];
    if (p < 0) continue;
    low[p] = std::min(low[p], low[v]);
    if (p != inf && low[v] >= disc[p]) ++b1[p];
  }
  for (int r = 0; r < nr; ++r)
    if (disc[r] < 0) throw std::logic_error("region graph is disconnected");
  return b1;
}

BettiVector Census::subset_total(const std::vector<int>& cells) const {
  BettiVector t;
  for (int c : cells) {
    t.b0 += betti.at(c).b0;
    t.b1 += betti.at(c).b1;
  }
  return t;
}

bool eval_on_signs(const Formula& f, const int8_t* s) {
  switch (f.kind) {
    case Formula::True: return true;
    case Formula::False: return false;
    case Formula::Atom: return rel_holds(f.rel, s[f.index]);
    case Formula::Not: return !eval_on_signs(f.kids[0], s);
    case Formula::And:
      for (auto& k : f.kids)
        if (!eval_on_signs(k, s)) return false;
      return true;
    case Formula::Or:
      for (auto& k : f.kids)
        if (eval_on_signs(k, s)) return true;
      return false;
  }
  return false;
}

PlaneArrangement PlaneArrangement::build(const std::vector<MemberSet>& members) {
  PlaneArrangement arr;
  arr.members_ = members;
  std::vector<std::vector<BPoly>> atoms;
  for (auto& m : members) {
    if (m.k() != 2) throw std::invalid_argument("arrangement members must live in the plane");
    if (m.numeric()) throw NonExactMember("member has numeric-only atoms");
    std::vector<BPoly> a;
    for (auto& p : m.polys()) a.push_back(p.to_bpoly());
    atoms.push_back(std::move(a));
  }
  arr.cad_ = Cad::build(atoms);
  int n = arr.n(), nc = arr.cad_.num_cells();
  arr.membership_.assign(static_cast<size_t>(nc) * n, 0);
  for (int c = 0; c < nc; ++c) {
    const int8_t* s = arr.cad_.atom_signs(c);
    for (int i = 0; i < n; ++i)
      arr.membership_[static_cast<size_t>(c) * n + i] =
          eval_on_signs(members[i].formula_x, s + arr.cad_.atom_offset(i)) ? 1 : 0;
  }
  return arr;
}

SignCondition PlaneArrangement::sign_vector(int cell) const {
  const int8_t* s = cad_.atom_signs(cell);
  return SignCondition(s, s + cad_.num_atoms());
}

std::map<SignCondition, int> realizable_sign_conditions(const PlaneArrangement& arr) {
  const Cad& cad = arr.cad();
  int na = cad.num_atoms();
  Regions R = connected_classes(cad, [&](int a, int b) {
    return std::equal(cad.atom_signs(a), cad.atom_signs(a) + na, cad.atom_signs(b));
  });
  std::map<SignCondition, int> out;
  for (auto& cells : R.cells) ++out[arr.sign_vector(cells[0])];
  return out;
}

namespace {

bool same_membership(const PlaneArrangement& arr, int a, int b) {
  for (int i = 0; i < arr.n(); ++i)
    if (arr.in_member(a, i) != arr.in_member(b, i)) return false;
  return true;
}

std::vector<int> index_set(const PlaneArrangement& arr, int cell) {
  std::vector<int> I;
  for (int i = 0; i < arr.n(); ++i)
    if (arr.in_member(cell, i)) I.push_back(i);
  return I;
}

}  // namespace

CellGroup basic_set_cells(const PlaneArrangement& arr, const std::vector<int>& I0) {
  CellGroup g;
  g.I = I0;
  std::sort(g.I.begin(), g.I.end());
  std::vector<bool> keep(arr.num_cells());
  for (int c = 0; c < arr.num_cells(); ++c) keep[c] = index_set(arr, c) == g.I;
  g.components = components_of(arr.cad(), keep).cells;
  return g;
}

BettiVector betti_of_cells(const Cad& cad, const std::vector<bool>& in) {
  BettiVector bv;
  Regions X = components_of(cad, in);
  bv.b0 = X.size();
  std::vector<bool> out(in.size());
  for (size_t c = 0; c < in.size(); ++c) out[c] = !in[c];
  Regions C = components_of(cad, out);
  for (int r = 0; r < C.size(); ++r)
    if (!C.unbounded[r]) ++bv.b1;
  // closed and bounded: Euler characteristic over the cells must agree
  bool closed = true, bounded = true;
  long chi = 0;
  for (auto& c : cad.cells()) {
    if (!in[c.id]) continue;
    chi += c.dim % 2 == 0 ? 1 : -1;
    bounded = bounded && !c.unbounded;
    for (int d : c.adj)
      if (cad.cell(d).dim < c.dim && !in[d]) closed = false;
  }
  if (closed && bounded && bv.b0 - bv.b1 != chi) throw std::logic_error("betti_of_cells: Euler characteristic mismatch");
  return bv;
}

BettiVector betti_of_membership(const PlaneArrangement& arr, const std::function<bool(const std::vector<bool>&)>& phi) {
  std::vector<bool> in(arr.num_cells()), mv(arr.n());
  for (int c = 0; c < arr.num_cells(); ++c) {
    for (int i = 0; i < arr.n(); ++i) mv[i] = arr.in_member(c, i);
    in[c] = phi(mv);
  }
  return betti_of_cells(arr.cad(), in);
}

BettiVector betti_of_set(const PlaneArrangement& arr, const Formula& phi0) {
  // match every atom of phi with a rational multiple of an arrangement atom
  Formula phi = phi0.folded();
  std::vector<std::pair<int, int>> link;  // (arrangement atom, sign factor) per phi atom
  const Cad& cad = arr.cad();
  std::vector<BPoly> flat;
  for (auto& m : cad.atoms())
    for (auto& a : m) flat.push_back(a);
  std::function<void(Formula&)> visit = [&](Formula& f) {
    if (f.kind == Formula::Atom) {
      if (f.max_var(true) > 0) throw std::invalid_argument("betti_of_set: formula has parameters");
      Expr e = Expr::node(Expr::Sub, {f.lhs, f.rhs}).folded();
      if (e.transcendental()) throw NonExactMember("betti_of_set: numeric atom");
      BPoly p = e.to_mpoly(2).to_bpoly();
      int found = -1, factor = 0;
      for (size_t a = 0; a < flat.size() && found < 0; ++a) {
        const BPoly& q = flat[a];
        if (q.is_zero() || p.is_zero()) {
          if (q.is_zero() && p.is_zero()) found = static_cast<int>(a), factor = 1;
          continue;
        }
        if (p.deg_y() != q.deg_y()) continue;
        Q ratio = p.lc_y().lc() / q.lc_y().lc();
        BPoly scaled = q * UPoly(ratio);
        if (scaled == p) found = static_cast<int>(a), factor = sgn(ratio);
      }
      if (found < 0) throw NotUnionOfCells("atom " + e.str() + " is not an atom of the arrangement");
      f.index = static_cast<int>(link.size());
      link.emplace_back(found, factor);
    }
    for (auto& k : f.kids) visit(k);
  };
  visit(phi);
  std::vector<bool> in(cad.num_cells());
  std::vector<int8_t> s(link.size());
  for (int c = 0; c < cad.num_cells(); ++c) {
    for (size_t i = 0; i < link.size(); ++i)
      s[i] = static_cast<int8_t>(link[i].second * cad.atom_sign(c, link[i].first));
    in[c] = eval_on_signs(phi, s.data());
  }
  return betti_of_cells(cad, in);
}

namespace {

Census census_of(const Cad& cad, const Regions& R, const std::vector<bool>& counted,
                 const std::function<std::vector<int>(int)>& index_of) {
  std::vector<long> b1 = region_b1(cad, R);
  Census cs;
  for (int r = 0; r < R.size(); ++r) {
    if (!counted[r]) continue;
    BettiVector bv{1, b1[r]};
    cs.index_sets.push_back(index_of(R.cells[r][0]));
    cs.betti.push_back(bv);
    cs.cad_cells.push_back(R.cells[r]);
    cs.sum_b0 += bv.b0;
    cs.sum_b1 += bv.b1;
    cs.max_cell_b = std::max(cs.max_cell_b, bv.b0 + bv.b1);
  }
  return cs;
}

}  // namespace

Census all_cells_census(const PlaneArrangement& arr) {
  Regions R = connected_classes(arr.cad(), [&](int a, int b) { return same_membership(arr, a, b); });
  std::vector<bool> all(R.size(), true);
  return census_of(arr.cad(), R, all, [&](int c) { return index_set(arr, c); });
}

Census restrict_to_curve(const PlaneArrangement& arr, const BPoly& f) {
  if (f.is_constant()) throw std::invalid_argument("restrict_to_curve: constant curve");
  BPoly g = gcd(gcd(f, f.dx()), f.dy());
  if (!g.is_constant()) throw NotSquareFree("restrict_to_curve: curve polynomial has a repeated factor");
  std::vector<std::vector<BPoly>> atoms = arr.cad().atoms();
  atoms.push_back({f});
  Cad cad = Cad::build(atoms);
  int n = arr.n(), vatom = cad.num_atoms() - 1;
  // membership in the original members, recomputed on the refined cells
  std::vector<uint8_t> mem(static_cast<size_t>(cad.num_cells()) * n);
  for (int c = 0; c < cad.num_cells(); ++c)
    for (int i = 0; i < n; ++i)
      mem[static_cast<size_t>(c) * n + i] =
          eval_on_signs(arr.members()[i].formula_x, cad.atom_signs(c) + cad.atom_offset(i)) ? 1 : 0;
  auto key_equal = [&](int a, int b) {
    if ((cad.atom_sign(a, vatom) == 0) != (cad.atom_sign(b, vatom) == 0)) return false;
    return std::equal(&mem[static_cast<size_t>(a) * n], &mem[static_cast<size_t>(a) * n] + n,
                      &mem[static_cast<size_t>(b) * n]);
  };
  Regions R = connected_classes(cad, key_equal);
  std::vector<bool> on_v(R.size());
  for (int r = 0; r < R.size(); ++r) on_v[r] = cad.atom_sign(R.cells[r][0], vatom) == 0;
  return census_of(cad, R, on_v, [&](int c) {
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
      if (mem[static_cast<size_t>(c) * n + i]) I.push_back(i);
    return I;
  });
}

}  // namespace omin
