#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "omin/family.hpp"

namespace omin {

namespace {

// a.u + c >= 0, or > 0 when strict
struct Ineq {
  std::vector<Q> a;
  Q c;
  bool strict;
};

// Fourier-Motzkin feasibility with witness recovery by back substitution.
bool fm_feasible(std::vector<Ineq> sys, int nv, std::vector<Q>* witness) {
  std::vector<std::vector<Ineq>> levels;
  for (int v = nv - 1; v >= 0; --v) {
    levels.push_back(sys);
    std::vector<Ineq> pos, neg, next;
    for (auto& q : sys) (q.a[v] > 0 ? pos : q.a[v] < 0 ? neg : next).push_back(q);
    for (auto& p : pos)
      for (auto& n : neg) {
        Q sp = -n.a[v], sn = p.a[v];
        Ineq r{std::vector<Q>(nv), sp * p.c + sn * n.c, p.strict || n.strict};
        for (int j = 0; j < v; ++j) r.a[j] = sp * p.a[j] + sn * n.a[j];
        next.push_back(std::move(r));
      }
    // drop exact duplicates to contain growth
    std::sort(next.begin(), next.end(), [](const Ineq& x, const Ineq& y) {
      if (x.a != y.a) return x.a < y.a;
      if (x.c != y.c) return x.c < y.c;
      return x.strict < y.strict;
    });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Ineq& x, const Ineq& y) { return x.a == y.a && x.c == y.c && x.strict == y.strict; }),
               next.end());
    sys = std::move(next);
  }
  for (auto& q : sys)
    if (q.strict ? q.c <= 0 : q.c < 0) return false;
  if (!witness) return true;
  std::vector<Q> u(nv);
  for (int v = 0; v < nv; ++v) {
    const auto& lev = levels[nv - 1 - v];
    bool has_lo = false, has_hi = false;
    Q lo, hi;
    for (auto& q : lev) {
      if (q.a[v] == 0) continue;
      Q rest = q.c;
      for (int j = 0; j < v; ++j) rest += q.a[j] * u[j];
      Q b = -rest / q.a[v];  // q.a[v] * u_v + rest >= 0
      if (q.a[v] > 0) {
        if (!has_lo || b > lo) lo = b;
        has_lo = true;
      } else {
        if (!has_hi || b < hi) hi = b;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      u[v] = lo == hi ? lo : Q((lo + hi) / 2);
    else if (has_lo)
      u[v] = lo + 1;
    else if (has_hi)
      u[v] = hi - 1;
    else
      u[v] = 0;
  }
  *witness = u;
  return true;
}

bool in_subset(unsigned long long s, size_t i) { return (s >> i) & 1ULL; }

bool contiguous_realizes(const std::vector<std::vector<Q>>& pts, unsigned long long subset) {
  std::vector<size_t> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pts[a][0] < pts[b][0]; });
  int runs = 0;
  bool prev = false;
  for (size_t i : order) {
    bool in = in_subset(subset, i);
    if (in && !prev) ++runs;
    prev = in;
  }
  return runs <= 1;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, RealizationOracle>& registry() {
  static std::map<std::string, RealizationOracle> r = {
      {"disk", [](const auto& p, unsigned long long s) { return disk_realizes(p, s); }},
      {"halfplane", [](const auto& p, unsigned long long s) { return halfplane_realizes(p, s); }},
      {"segment", contiguous_realizes},
      {"interval", contiguous_realizes},
  };
  return r;
}

}  // namespace

bool disk_realizes(const std::vector<std::vector<Q>>& pts, unsigned long long subset, std::vector<Q>* witness) {
  if (subset == 0) {
    // a point disk away from every input
    Q far = 1;
    for (auto& p : pts) far = std::max(far, Q(abs_q(p[0]) + 1));
    if (witness) *witness = {far, Q(0), Q(0)};
    return true;
  }
  // lift p -> (p, |p|^2): inside iff |p|^2 - 2 p.c + d <= 0, with r^2 = |c|^2 - d
  std::vector<Ineq> sys;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Q &x = pts[i][0], &y = pts[i][1];
    Q z = x * x + y * y;
    if (in_subset(subset, i))
      sys.push_back({{2 * x, 2 * y, Q(-1)}, -z, false});
    else
      sys.push_back({{-2 * x, -2 * y, Q(1)}, z, true});
  }
  std::vector<Q> u;
  if (!fm_feasible(sys, 3, witness ? &u : nullptr)) return false;
  if (witness) *witness = {u[0], u[1], u[0] * u[0] + u[1] * u[1] - u[2]};
  return true;
}

bool halfplane_realizes(const std::vector<std::vector<Q>>& pts, unsigned long long subset, std::vector<Q>* witness) {
  std::vector<Ineq> sys;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Q &x = pts[i][0], &y = pts[i][1];
    if (in_subset(subset, i))
      sys.push_back({{-x, -y, Q(1)}, Q(0), false});
    else
      sys.push_back({{x, y, Q(-1)}, Q(0), true});
  }
  return fm_feasible(sys, 3, witness);
}

void register_realization_oracle(const std::string& name, RealizationOracle oracle) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[name] = std::move(oracle);
}

bool shatter_check(const FamilyTemplate& t, const std::vector<std::vector<Q>>& points) {
  if (points.empty()) return true;
  if (points.size() > 40) throw std::invalid_argument("shatter_check: too many points");
  std::set<std::vector<Q>> distinct;
  for (auto& p : points) {
    if (static_cast<int>(p.size()) != t.k) throw DimensionMismatch("point dimension differs from k");
    if (!distinct.insert(p).second) throw std::invalid_argument("shatter_check: repeated point");
  }
  RealizationOracle oracle;
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(t.name);
    if (it == registry().end()) throw NoRealizationOracle("no realization oracle for template '" + t.name + "'");
    oracle = it->second;
  }
  unsigned long long total = 1ULL << points.size();
  for (unsigned long long s = 0; s < total; ++s)
    if (!oracle(points, s)) return false;
  return true;
}

}  // namespace omin
