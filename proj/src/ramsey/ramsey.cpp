#include "omin/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "omin/arrangement.hpp"

namespace omin {

namespace {

std::vector<BPoly> atom_bpolys(const MemberSet& m) {
  std::vector<BPoly> out;
  for (auto& p : m.polys()) out.push_back(p.to_bpoly());
  return out;
}

Relation make_relation(const std::string& name, const std::string& region_text, Q half_width) {
  Relation r;
  r.name = name;
  r.region = FamilyTemplate::parse(region_text);
  r.x_range = [half_width](const std::vector<Q>& y) { return std::make_pair(Q(y[0] - half_width), Q(y[0] + half_width)); };
  return r;
}

std::map<std::string, std::function<Relation()>>& registry() {
  static std::map<std::string, std::function<Relation()>> reg = {
      // |c1 - c2| <= 2 for unit disks: the segment between the centres
      {"unit_disk",
       [] {
         return make_relation("unit-disks",
                              "k=2 l=2 closed=true name=disk_r2\n(<= (+ (^ (- x1 y1) 2) (^ (- x2 y2) 2)) 4)", Q(2));
       }},
      // two closed side-1 squares meet iff both centre offsets are at most 1
      {"unit_square",
       [] {
         return make_relation("unit-squares",
                              "k=2 l=2 closed=true name=square_2\n"
                              "(and (<= (- x1 y1) 1) (>= (- x1 y1) -1) (<= (- x2 y2) 1) (>= (- x2 y2) -1))",
                              Q(1));
       }},
      {"plane_point",
       [] {
         return make_relation("points", "k=2 l=2 closed=true name=point\n(and (= x1 y1) (= x2 y2))", Q(0));
       }},
  };
  return reg;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

// Number of points of pts (sorted) strictly below x, and whether x is one of them.
std::pair<int, bool> locate(const std::vector<RealAlg>& pts, const RealAlg& x) {
  int lo = 0, hi = static_cast<int>(pts.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (compare(pts[mid], x) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  bool eq = lo < static_cast<int>(pts.size()) && compare(pts[lo], x) == 0;
  return {lo, eq};
}

int base_cell_of(const std::vector<RealAlg>& pts, const RealAlg& x) {
  auto [below, eq] = locate(pts, x);
  return eq ? 2 * below + 1 : 2 * below;
}

}  // namespace

int cell_of_point(const Cad& cad, const std::vector<Q>& z) {
  int j = base_cell_of(cad.base_points(), RealAlg(z[0]));
  const CadStack& st = cad.stack(j);
  std::vector<RealAlg> roots;
  for (auto& b : cad.basis())
    for (auto& y : RealAlg::roots_of(b.f.at_x(z[0]))) roots.push_back(y);
  std::sort(roots.begin(), roots.end(), [](const RealAlg& a, const RealAlg& b) { return compare(a, b) < 0; });
  roots.erase(std::unique(roots.begin(), roots.end(), [](const RealAlg& a, const RealAlg& b) { return compare(a, b) == 0; }),
              roots.end());
  if (roots.size() != st.sections.size()) throw std::logic_error("fiber roots disagree with the stack");
  return cad.cell_id(j, base_cell_of(roots, RealAlg(z[1])));
}

namespace {

struct Classification {
  std::vector<int> crossing, containing;  // coarse cell ids
};

// Exact relation of region `reg` to every coarse cell, from a decomposition of
// the sampled regions `local` (indices into sampled) together with reg.
// Returns false when the local decomposition does not refine the coarse one
// over the window.
bool classify_with(const Cad& coarse, const std::vector<MemberSet>& sampled, const std::vector<int>& local,
                   const MemberSet& reg, const Q& L, const Q& R, Classification& out) {
  std::vector<std::vector<BPoly>> atoms;
  for (int s : local) atoms.push_back(atom_bpolys(sampled[s]));
  atoms.push_back(atom_bpolys(reg));
  Cad fine = Cad::build(atoms);
  int me = static_cast<int>(local.size());
  int off = fine.atom_offset(me);

  const auto& cb = coarse.base_points();
  const auto& fb = fine.base_points();
  int nfb = static_cast<int>(fb.size());
  RealAlg rl(L), rr(R);
  std::map<int, std::pair<bool, bool>> seen;  // coarse cell -> (any in, any out)

  for (int j = 0; j < fine.num_base_cells(); ++j) {
    const CadStack& st = fine.stack(j);
    bool inside;
    int cj;
    if (st.over_point) {
      const RealAlg& x = fb[j / 2];
      inside = compare(x, rl) >= 0 && compare(x, rr) <= 0;
      cj = base_cell_of(cb, x);
    } else {
      int a = j / 2;
      inside = a > 0 && a < nfb && compare(fb[a - 1], rl) >= 0 && compare(fb[a], rr) <= 0;
      cj = base_cell_of(cb, st.x);
      if (inside && cj % 2 == 0) {
        // no coarse base point strictly inside the fine interval
        auto [below_hi, eq_hi] = locate(cb, fb[a]);
        auto [below_lo, eq_lo] = locate(cb, fb[a - 1]);
        if (below_hi - below_lo - (eq_lo ? 1 : 0) != 0) return false;
      } else if (inside) {
        return false;
      }
    }
    if (!inside) {
      // reg lies over [L, R]; a cell reaching outside it cannot meet reg
      for (int q = 0; q < st.size(); ++q)
        if (eval_on_signs(reg.formula_x, fine.atom_signs(fine.cell_id(j, q)) + off))
          throw std::logic_error("region meets a cell outside its x-range");
      continue;
    }
    const CadStack& cst = coarse.stack(cj);
    int below = 0;
    for (int q = 0; q < st.size(); ++q) {
      bool sampled_section = false;
      if (q % 2 == 1)
        for (auto& [e, mult] : st.sections[q / 2].elems)
          for (int m : fine.basis()[e].members) sampled_section = sampled_section || m < me;
      int cpos = sampled_section ? 2 * below + 1 : 2 * below;
      if (cpos >= cst.size()) return false;
      bool in = eval_on_signs(reg.formula_x, fine.atom_signs(fine.cell_id(j, q)) + off);
      auto& flags = seen[coarse.cell_id(cj, cpos)];
      (in ? flags.first : flags.second) = true;
      if (sampled_section) ++below;
    }
    if (2 * below + 1 != cst.size()) return false;
  }

  int ncb = static_cast<int>(cb.size());
  for (auto& [c, flags] : seen) {
    if (!flags.first) continue;
    int j = coarse.cell(c).base;
    bool inside;
    if (j % 2 == 1) {
      inside = true;
    } else {
      int a = j / 2;
      inside = a > 0 && a < ncb && compare(cb[a - 1], rl) >= 0 && compare(cb[a], rr) <= 0;
    }
    if (flags.second || !inside)
      out.crossing.push_back(c);
    else
      out.containing.push_back(c);
  }
  return true;
}

Classification classify(const Cad& coarse, const std::vector<MemberSet>& sampled,
                        const std::vector<std::pair<Q, Q>>& ranges, const MemberSet& reg, const std::pair<Q, Q>& range,
                        bool windowed) {
  std::vector<int> local, all;
  for (int s = 0; s < static_cast<int>(sampled.size()); ++s) {
    all.push_back(s);
    if (!windowed || (ranges[s].first <= range.second && range.first <= ranges[s].second)) local.push_back(s);
  }
  Classification c;
  if (classify_with(coarse, sampled, local, reg, range.first, range.second, c)) return c;
  c = {};
  if (local.size() < all.size() && classify_with(coarse, sampled, all, reg, range.first, range.second, c)) return c;
  throw std::logic_error("the refined decomposition does not refine the sample's");
}

std::vector<int> draw_sample(int n, int r, uint64_t seed, int attempt) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < r; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(r);
  std::sort(idx.begin(), idx.end());
  return idx;
}

CuttingResult cut_once(const std::vector<std::vector<Q>>& points, const Relation& rel, const std::vector<int>& sample,
                       bool windowed) {
  int n = static_cast<int>(points.size());
  CuttingResult out;
  out.sample = sample;
  std::vector<MemberSet> regions;
  std::vector<std::pair<Q, Q>> ranges;
  for (auto& y : points) {
    regions.push_back(rel.region_at(y));
    ranges.push_back(rel.x_range(y));
  }
  std::vector<MemberSet> sampled;
  std::vector<std::pair<Q, Q>> sampled_ranges;
  std::vector<bool> in_sample(n, false);
  for (int s : sample) {
    sampled.push_back(regions[s]);
    sampled_ranges.push_back(ranges[s]);
    in_sample[s] = true;
  }
  out.tree = build_cdcd(sampled, 2);
  const Cad& cad = *out.tree.cad;
  int nc = cad.num_cells();
  out.points_in.assign(nc, {});
  out.crossing.assign(nc, {});
  out.containing.assign(nc, {});

  for (int i = 0; i < n; ++i) {
    int c = cell_of_point(cad, points[i]);
    // the cell's atom signs must be the point's
    for (int s = 0; s < static_cast<int>(sampled.size()); ++s) {
      auto ev = sign_eval(sampled[s], points[i], 64);
      for (size_t a = 0; a < ev.signs.size(); ++a)
        if (ev.signs[a] != cad.atom_sign(c, cad.atom_offset(s) + static_cast<int>(a)))
          throw std::logic_error("point location disagrees with the atom signs");
    }
    out.point_cell.push_back(c);
    out.points_in[c].push_back(i);
  }

  for (int i = 0; i < n; ++i) {
    if (in_sample[i]) {
      int s = static_cast<int>(std::lower_bound(sample.begin(), sample.end(), i) - sample.begin());
      for (int c = 0; c < nc; ++c)
        if (eval_on_signs(sampled[s].formula_x, cad.atom_signs(c) + cad.atom_offset(s))) out.containing[c].push_back(i);
      continue;
    }
    auto cl = classify(cad, sampled, sampled_ranges, regions[i], ranges[i], windowed);
    for (int c : cl.crossing) out.crossing[c].push_back(i);
    for (int c : cl.containing) out.containing[c].push_back(i);
  }

  for (int c = 0; c < nc; ++c) {
    out.max_crossing = std::max<long>(out.max_crossing, static_cast<long>(out.crossing[c].size()));
    if (out.heavy < 0 || out.points_in[c].size() > out.points_in[out.heavy].size()) out.heavy = c;
  }
  return out;
}

}  // namespace

bool Relation::holds(const std::vector<Q>& z, const std::vector<Q>& y) const {
  auto ev = sign_eval(region_at(y), z, 64);
  if (ev.member == Tri::Unknown) throw std::logic_error("relation is not exactly decidable here");
  return ev.member == Tri::True;
}

Relation compile_relation(const FamilyTemplate& t) {
  std::function<Relation()> make;
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(t.name);
    if (it == registry().end()) throw NoIntersectionPredicate("no intersection predicate for template '" + t.name + "'");
    make = it->second;
  }
  Relation r = make();
  r.region.validate();
  if (r.region.k != r.l || r.region.l != r.l) throw InvalidTemplate("relation regions must live in R^l x R^l");
  if (r.l != 2) throw NoIntersectionPredicate("exact relations are planar only");
  return r;
}

void register_intersection_predicate(const std::string& template_name, std::function<Relation()> make) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[template_name] = std::move(make);
}

CuttingResult build_cutting(const std::vector<std::vector<Q>>& points, const Relation& rel, int r, uint64_t seed,
                            const CuttingOptions& opt) {
  int n = static_cast<int>(points.size());
  if (r < 1 || r > n) throw std::invalid_argument("cutting needs 1 <= r <= n");
  for (auto& p : points)
    if (static_cast<int>(p.size()) != rel.l) throw DimensionMismatch("point of the wrong dimension");
  double bound = opt.c1.get_d() * n * std::max(1.0, std::log(static_cast<double>(r))) / r;
  long best = -1;
  for (int attempt = 0; attempt <= opt.retries; ++attempt) {
    CuttingResult c = cut_once(points, rel, draw_sample(n, r, seed, attempt), opt.windowed);
    c.crossing_bound = bound;
    c.attempts = attempt + 1;
    if (static_cast<double>(c.max_crossing) <= bound) return c;
    if (best < 0 || c.max_crossing < best) best = c.max_crossing;
  }
  throw CuttingFailed("no sample met the crossing bound", best);
}

const char* polarity_name(Polarity p) { return p == Polarity::All ? "ALL" : "NONE"; }

HomogeneousPairs homogeneous_pairs(const std::vector<std::vector<Q>>& points, const Relation& rel, int r,
                                   uint64_t seed, const CuttingOptions& opt) {
  CuttingResult cut = build_cutting(points, rel, r, seed, opt);
  int n = static_cast<int>(points.size());
  int t = cut.heavy;
  std::vector<bool> crosses(n, false), contains(n, false);
  for (int i : cut.crossing[t]) crosses[i] = true;
  for (int i : cut.containing[t]) contains[i] = true;
  std::vector<int> all, none;
  for (int i = 0; i < n; ++i) {
    if (crosses[i]) continue;
    (contains[i] ? all : none).push_back(i);
  }
  HomogeneousPairs out;
  out.f1 = cut.points_in[t];
  out.polarity = all.size() > none.size() ? Polarity::All : Polarity::None;
  out.f2 = out.polarity == Polarity::All ? all : none;
  out.eps_achieved = Q(static_cast<long>(std::min(out.f1.size(), out.f2.size())), n);
  out.eps_achieved.canonicalize();
  out.r = r;
  out.attempts = cut.attempts;
  out.max_crossing = cut.max_crossing;
  return out;
}

HomogeneityReport verify_homogeneity(const std::vector<std::vector<Q>>& points, const std::vector<int>& f1,
                                     const std::vector<int>& f2, const Relation& rel) {
  HomogeneityReport rep;
  if (f1.empty() || f2.empty()) {
    rep.degenerate = true;
    return rep;
  }
  bool first = rel.holds(points[f1[0]], points[f2[0]]);
  rep.polarity = first ? Polarity::All : Polarity::None;
  for (int i : f1)
    for (int j : f2)
      if (rel.holds(points[i], points[j]) != first) {
        rep.ok = false;
        rep.polarity.reset();
        rep.witness = {i, j};
        return rep;
      }
  return rep;
}

int default_r(const Q& c1, const Q& c2) {
  int best = 4;
  double best_eps = -1e300;
  for (int r = 4; r <= 32; ++r) {
    double alpha = 1.0 / (c2.get_d() * std::pow(r, 6));
    double beta = 0.5 * (1.0 - c1.get_d() * std::log(static_cast<double>(r)) / r);
    double eps = std::min(alpha, beta);
    if (eps > best_eps) {
      best_eps = eps;
      best = r;
    }
  }
  return best;
}

}  // namespace omin
