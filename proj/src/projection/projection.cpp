#include "omin/projection.hpp"

#include <numeric>

namespace omin {

namespace {

Expr rename(const Expr& e, int k1, int k2, int copy, int p) {
  Expr out = e;
  if (e.op == Expr::Var && !e.param) {
    if (e.var >= k1 + k2) throw DimensionMismatch("formula uses a variable beyond k1 + k2");
    out.var = e.var < k1 ? copy * k1 + e.var : (p + 1) * k1 + (e.var - k1);
  }
  for (auto& kid : out.kids) kid = rename(kid, k1, k2, copy, p);
  return out;
}

Formula rename(const Formula& f, int k1, int k2, int copy, int p) {
  Formula out = f;
  if (f.kind == Formula::Atom) {
    out.lhs = rename(f.lhs, k1, k2, copy, p);
    out.rhs = rename(f.rhs, k1, k2, copy, p);
  }
  for (auto& kid : out.kids) kid = rename(kid, k1, k2, copy, p);
  return out;
}

int count_atoms(const Formula& f) {
  int n = f.kind == Formula::Atom ? 1 : 0;
  for (auto& k : f.kids) n += count_atoms(k);
  return n;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool closed_in(const Cad& cad, const std::vector<bool>& S) {
  for (int c = 0; c < cad.num_cells(); ++c) {
    if (!S[c]) continue;
    for (int d : cad.cell(c).adj)
      if (cad.cell(d).dim < cad.cell(c).dim && !S[d]) return false;
  }
  return true;
}

bool bounded_in(const Cad& cad, const std::vector<bool>& S) {
  for (int c = 0; c < cad.num_cells(); ++c)
    if (S[c] && cad.cell(c).unbounded) return false;
  return true;
}

}  // namespace

FiberedProductFormula fibered_product_formula(const Formula& S, int k1, int k2, int p) {
  if (k1 < 1 || k2 < 1 || p < 0) throw std::invalid_argument("fibered product needs k1, k2 >= 1 and p >= 0");
  FiberedProductFormula out;
  out.base = S;
  out.k1 = k1;
  out.k2 = k2;
  out.p = p;
  out.num_vars = (p + 1) * k1 + k2;
  out.num_atoms = (p + 1) * count_atoms(S);
  if (p == 0) {
    rename(S, k1, k2, 0, 0);  // validates the variables
    out.formula = S;
    return out;
  }
  std::vector<Formula> copies;
  for (int j = 0; j <= p; ++j) copies.push_back(rename(S, k1, k2, j, p));
  out.formula = Formula::node(Formula::And, copies);
  return out;
}

long fibered_product_b0(const Cad& cad, const std::vector<bool>& S, int p) {
  if (p < 0 || p > 1) throw std::invalid_argument("exact fibered products are limited to p <= 1");
  if (static_cast<int>(S.size()) != cad.num_cells()) throw std::invalid_argument("cell mask has the wrong size");
  if (!closed_in(cad, S) || !bounded_in(cad, S)) throw NotClosedBounded("S must be closed and bounded");
  int width = p + 1;
  int nb = cad.num_base_cells();

  // positions of S in each stack, and the piece range of each stack
  std::vector<std::vector<int>> pos(nb);
  std::vector<std::vector<int>> slot(nb);  // stack position -> index in pos, or -1
  std::vector<long> offset(nb + 1, 0);
  for (int j = 0; j < nb; ++j) {
    int size = cad.stack(j).size();
    slot[j].assign(size, -1);
    for (int q = 0; q < size; ++q)
      if (S[cad.cell_id(j, q)]) {
        slot[j][q] = static_cast<int>(pos[j].size());
        pos[j].push_back(q);
      }
    long count = 1;
    for (int u = 0; u < width; ++u) count *= static_cast<long>(pos[j].size());
    offset[j + 1] = offset[j] + (pos[j].empty() ? 0 : count);
  }
  UnionFind uf(static_cast<int>(offset[nb]));
  auto piece = [&](int j, const std::vector<int>& t) {
    long id = 0;
    for (int u = 0; u < width; ++u) id = id * static_cast<long>(pos[j].size()) + slot[j][t[u]];
    return static_cast<int>(offset[j] + id);
  };
  auto each_tuple = [&](int j, auto&& f) {
    int m = static_cast<int>(pos[j].size());
    if (m == 0) return;
    std::vector<int> idx(width, 0), t(width);
    while (true) {
      for (int u = 0; u < width; ++u) t[u] = pos[j][idx[u]];
      f(t);
      int u = width - 1;
      while (u >= 0 && ++idx[u] == m) idx[u--] = 0;
      if (u < 0) break;
    }
  };

  for (int j = 0; j < nb; ++j) {
    const CadStack& st = cad.stack(j);
    each_tuple(j, [&](const std::vector<int>& t) {
      int me = piece(j, t);
      // fiber adjacency: a band and the section just above it
      for (int u = 0; u < width; ++u) {
        int q = t[u] + 1;
        if (q < st.size() && slot[j][q] >= 0) {
          auto t2 = t;
          t2[u] = q;
          uf.unite(me, piece(j, t2));
        }
      }
      if (st.over_point) return;
      // limits at the ends of an interval stack; the lowest position of each
      // limit range suffices since S is closed and the range is connected
      for (int side = 0; side < 2; ++side) {
        int pj = side == 0 ? j - 1 : j + 1;
        if (pj < 0 || pj >= nb) continue;
        std::vector<int> t2(width);
        for (int u = 0; u < width; ++u) {
          int q = t[u];
          int s = q % 2 ? (q - 1) / 2 : q / 2 - 1;  // the section at q, or the one below the band at q
          int lim = st.sections[s].lim[side];
          if (lim < 0) throw NotClosedBounded("section escapes to infinity");
          t2[u] = 2 * lim + 1;
        }
        uf.unite(me, piece(pj, t2));
      }
    });
  }
  long roots = 0;
  for (int i = 0; i < static_cast<int>(offset[nb]); ++i) roots += uf.find(i) == i;
  return roots;
}

long fibered_product_b0_curve(const BPoly& g, int p) { return fibered_product_b0_curve(std::vector<BPoly>{g}, p); }

long fibered_product_b0_curve(const std::vector<BPoly>& gs, int p) {
  std::vector<std::vector<BPoly>> atoms;
  for (auto& g : gs) atoms.push_back({g});
  Cad cad = Cad::build(atoms);
  std::vector<bool> S(cad.num_cells());
  for (int c = 0; c < cad.num_cells(); ++c) {
    for (int a = 0; a < cad.num_atoms() && !S[c]; ++a) S[c] = cad.atom_sign(c, a) == 0;
    if (S[c] && cad.cell(c).unbounded) throw NotBoundedCurve("the curve is unbounded");
  }
  return fibered_product_b0(cad, S, p);
}

IntervalSet project_to_axis(const Cad& cad, const std::vector<bool>& S) {
  std::vector<Piece> pieces;
  const auto& pts = cad.base_points();
  int np = static_cast<int>(pts.size());
  for (int j = 0; j < cad.num_base_cells(); ++j) {
    bool hit = false;
    for (int q = 0; q < cad.stack(j).size() && !hit; ++q) hit = S[cad.cell_id(j, q)];
    if (!hit) continue;
    if (j % 2) {
      pieces.push_back(Piece::at(pts[j / 2]));
    } else {
      XReal lo = j == 0 ? XReal::neg_inf() : XReal(pts[j / 2 - 1]);
      XReal hi = j / 2 == np ? XReal::pos_inf() : XReal(pts[j / 2]);
      pieces.push_back(Piece::open(lo, hi));
    }
  }
  return IntervalSet::normalize(pieces);
}

ProjectionReport projection_inequality_check(const PlaneArrangement& arr, const std::vector<bool>& S, int k1,
                                             int k2) {
  if (k1 != 1 || k2 != 1) throw DimensionMismatch("projection checks support k1 = k2 = 1 only");
  const Cad& cad = arr.cad();
  ProjectionReport r;
  long w0 = fibered_product_b0(cad, S, 0);
  r.s_betti = betti_of_cells(cad, S);
  if (w0 != r.s_betti.b0) throw std::logic_error("fibered product b0 disagrees with the cell complex");
  r.w1_b0 = fibered_product_b0(cad, S, 1);
  r.Y = project_to_axis(cad, S);
  long y0 = b0_1d(r.Y);
  r.lines.push_back({0, y0, r.s_betti.b0, y0 <= r.s_betti.b0});
  // b1 of a subset of the line is 0
  r.lines.push_back({1, 0, r.s_betti.b1 + r.w1_b0, 0 <= r.s_betti.b1 + r.w1_b0});
  for (auto& l : r.lines) r.ok = r.ok && l.pass;
  return r;
}

ProjectionReport projection_inequality_check(const std::vector<MemberSet>& union_of) {
  PlaneArrangement arr = PlaneArrangement::build(union_of);
  std::vector<bool> S(arr.num_cells());
  for (int c = 0; c < arr.num_cells(); ++c)
    for (int i = 0; i < arr.n() && !S[c]; ++i) S[c] = arr.in_member(c, i);
  return projection_inequality_check(arr, S);
}

Q projection_bound(long n, int k1, int k2, const Q& C) {
  if (n < 1 || k1 < 1 || k2 < 1 || C <= 0) throw std::invalid_argument("projection_bound needs positive arguments");
  Q out = C;
  for (int e = 0; e < (k1 + 1) * k2; ++e) out *= n;
  return out;
}

}  // namespace omin
