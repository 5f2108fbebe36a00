#include "omin/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "omin/cdcd.hpp"
#include "omin/census.hpp"
#include "omin/homotopy.hpp"

namespace omin {

namespace {

const std::vector<std::pair<BoundId, const char*>> kNames = {
    {BoundId::EQ1, "EQ1"},
    {BoundId::EQ2, "EQ2"},
    {BoundId::BETTI_KI, "BETTI_KI"},
    {BoundId::BETTI_MCELLS, "BETTI_MCELLS"},
    {BoundId::VARIETY, "VARIETY"},
    {BoundId::ASETS_CLOSED, "ASETS_CLOSED"},
    {BoundId::ASETS_GENERAL, "ASETS_GENERAL"},
    {BoundId::ASETS_IMPROVED, "ASETS_IMPROVED"},
    {BoundId::PROJECTION, "PROJECTION"},
    {BoundId::CDCD, "CDCD"},
};

Q power(const Q& base, long e) {
  Q out = 1;
  for (long t = 0; t < e; ++t) out *= base;
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameters(what);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

Q grid_value(std::mt19937_64& rng, const Q& lo, const Q& hi, long denom) {
  Q a = ceil_q(lo * denom), b = floor_q(hi * denom);
  long ia = a.get_num().get_si(), ib = b.get_num().get_si();
  std::uniform_int_distribution<long> pick(ia, ib);
  Q v(pick(rng), denom);
  v.canonicalize();
  return v;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::optional<ExponentFit> fit_means(const std::map<int, std::pair<double, int>>& acc) {
  std::vector<std::pair<double, double>> samples;
  for (auto& [n, s] : acc)
    if (n > 0 && s.second > 0 && s.first > 0) samples.push_back({static_cast<double>(n), s.first / s.second});
  if (samples.size() < 3) return std::nullopt;
  return fit_exponent(samples);
}

}  // namespace

const char* bound_name(BoundId id) {
  for (auto& [i, name] : kNames)
    if (i == id) return name;
  return "?";
}

BoundId parse_bound_id(const std::string& name) {
  for (auto& [i, n] : kNames)
    if (name == n) return i;
  throw InvalidParameters("unknown bound formula '" + name + "'");
}

std::vector<BoundId> all_bounds() {
  std::vector<BoundId> out;
  for (auto& [i, n] : kNames) out.push_back(i);
  return out;
}

Q evaluate_bound(const BoundFormula& f) {
  const BoundParams& p = f.p;
  require(p.n >= 0, "n must be non-negative");
  auto need_C = [&] { require(p.C > 0, "C must be positive"); };
  switch (f.id) {
    case BoundId::EQ1:
      require(p.k >= 1 && p.d >= 1, "EQ1 needs k >= 1 and d >= 1");
      need_C();
      return power(Q(p.n), 2 * p.k) * power(p.C * p.d, p.k);
    case BoundId::EQ2: {
      require(p.k >= 1 && p.d >= 1 && p.i >= 0 && p.i <= p.k, "EQ2 needs k >= 1, d >= 1 and 0 <= i <= k");
      Q tail = Q(p.d) * power(Q(2 * p.d - 1), p.k - 1);
      Q sum = 0;
      for (long j = 0; j <= p.k - p.i; ++j) {
        Z binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(p.n), static_cast<unsigned long>(j));
        sum += Q(binom) * power(Q(4), j);
      }
      return sum * tail;
    }
    case BoundId::BETTI_KI:
      require(p.k >= 1 && p.i >= 0 && p.i <= p.k, "BETTI_KI needs k >= 1 and 0 <= i <= k");
      need_C();
      return p.C * power(Q(p.n), p.k - p.i);
    case BoundId::BETTI_MCELLS:
      require(p.k >= 1 && p.m >= 0, "BETTI_MCELLS needs k >= 1 and m >= 0");
      need_C();
      return Q(p.m) + p.C * power(Q(p.n), p.k - 1);
    case BoundId::VARIETY:
      require(p.kp >= 0 && p.i >= 0 && p.i <= p.kp && (p.k == 0 || p.kp <= p.k),
              "VARIETY needs 0 <= i <= k' (and k' <= k when k is given)");
      need_C();
      return p.C * power(Q(p.n), p.kp - p.i);
    case BoundId::ASETS_CLOSED:
    case BoundId::ASETS_IMPROVED:
    case BoundId::ASETS_GENERAL:
      require(p.kp >= 0 && (p.k == 0 || p.kp <= p.k), "A-set bounds need 0 <= k' (and k' <= k when k is given)");
      need_C();
      return p.C * power(Q(p.n), f.id == BoundId::ASETS_GENERAL ? 2 * p.kp : p.kp);
    case BoundId::PROJECTION:
      require(p.k1 >= 1 && p.k2 >= 1, "PROJECTION needs k1, k2 >= 1");
      need_C();
      return p.C * power(Q(p.n), (p.k1 + 1) * p.k2);
    case BoundId::CDCD:
      require(p.k >= 1 && p.k <= 16, "CDCD needs 1 <= k <= 16");
      need_C();
      return p.C * power(Q(p.n), 2 * ((1L << p.k) - 1));
  }
  throw InvalidParameters("unknown bound formula");
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw DegenerateSamples("need at least 3 samples");
  for (size_t t = 0; t < samples.size(); ++t) {
    if (!(samples[t].first > 0) || !(samples[t].second > 0)) throw DegenerateSamples("n and counts must be positive");
    if (t > 0 && !(samples[t].first > samples[t - 1].first)) throw DegenerateSamples("n must strictly increase");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = static_cast<double>(samples.size());
  for (auto& [n, c] : samples) {
    double x = std::log(n), y = std::log(c);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ExponentFit f;
  f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / m;
  for (auto& [n, c] : samples)
    f.max_residual = std::max(f.max_residual, std::abs(std::log(c) - (f.intercept + f.slope * std::log(n))));
  return f;
}

// ---- configuration

Q calibrated_c_b0(const std::string& family) { return family == "segments" ? Q(3) : Q(4); }
Q calibrated_c_b1(const std::string& family) { return family == "segments" ? Q(1) : Q(2); }

Q ExperimentConfig::cb0() const { return c_b0 ? *c_b0 : calibrated_c_b0(family); }
Q ExperimentConfig::cb1() const { return c_b1 ? *c_b1 : calibrated_c_b1(family); }

void ExperimentConfig::validate() const {
  if (family != "circles" && family != "segments") throw ConfigError("unknown family '" + family + "'");
  if (n_schedule.empty()) throw ConfigError("empty n schedule");
  for (size_t t = 0; t < n_schedule.size(); ++t) {
    if (n_schedule[t] < 0) throw ConfigError("n must be non-negative");
    if (t > 0 && n_schedule[t] <= n_schedule[t - 1]) throw ConfigError("n schedule must strictly increase");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (box < 1 || denom < 1) throw ConfigError("box and denom must be positive");
  if (family == "circles" && (radius_min <= 0 || radius_max < radius_min))
    throw ConfigError("radii need 0 < radius_min <= radius_max");
  if (family == "circles" && floor_q(radius_max * denom) < ceil_q(radius_min * denom))
    throw ConfigError("no grid radius in [radius_min, radius_max]");
  if (cb0() <= 0 || cb1() <= 0) throw ConfigError("calibrated constants must be positive");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      size_t eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key = value");
      std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
      if (key == "family") {
        c.family = value;
      } else if (key == "n") {
        c.n_schedule.clear();
        for (auto& v : split(value, ',')) c.n_schedule.push_back(std::stoi(v));
      } else if (key == "trials") {
        c.trials = std::stoi(value);
      } else if (key == "seed") {
        c.seed = std::stoull(value);
      } else if (key == "box") {
        c.box = std::stol(value);
      } else if (key == "denom") {
        c.denom = std::stol(value);
      } else if (key == "radius_min") {
        c.radius_min = parse_rational(value);
      } else if (key == "radius_max") {
        c.radius_max = parse_rational(value);
      } else if (key == "c_b0") {
        c.c_b0 = parse_rational(value);
      } else if (key == "c_b1") {
        c.c_b1 = parse_rational(value);
      } else if (key == "cdcd") {
        if (value != "true" && value != "false") throw ConfigError("cdcd must be true or false");
        c.cdcd = value == "true";
      } else if (key == "out") {
        c.out = value;
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    }
  } catch (const ConfigError& e) {
    throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
  } catch (const std::exception& e) {
    throw ConfigError("config line " + std::to_string(lineno) + ": bad value (" + e.what() + ")");
  }
  c.validate();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ExperimentConfig ExperimentConfig::load(const std::string& path) { return parse(read_file(path)); }

uint64_t trial_seed(uint64_t seed, int n, int trial) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(n),
                    static_cast<uint32_t>(trial)};
  uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

std::vector<MemberSet> random_members(const ExperimentConfig& cfg, int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<MemberSet> out;
  auto t = std::make_shared<const FamilyTemplate>(cfg.family == "segments" ? templates::segment() : templates::circle());
  for (int i = 0; i < n; ++i) {
    if (cfg.family == "segments") {
      Q a = grid_value(rng, 0, cfg.box, cfg.denom), b = grid_value(rng, 0, cfg.box, cfg.denom);
      if (b < a) std::swap(a, b);
      out.push_back(instantiate(t, {a, b}));
    } else {
      Q cx = grid_value(rng, 0, cfg.box, cfg.denom), cy = grid_value(rng, 0, cfg.box, cfg.denom);
      Q r = grid_value(rng, cfg.radius_min, cfg.radius_max, cfg.denom);
      out.push_back(instantiate(t, {cx, cy, r}));
    }
  }
  return out;
}

ArrangementMeasure measure_arrangement(const std::vector<MemberSet>& members, int k) {
  ArrangementMeasure m;
  if (k == 1) {
    std::vector<IntervalSet> sets;
    for (auto& s : members) sets.push_back(realize_on_line(s));
    auto cells = line_cells(sets, IntervalSet::line());
    m.cells = static_cast<long>(cells.size());
    m.sum_b0 = m.cells;
    m.max_cell_b = m.cells > 0 ? 1 : 0;
    return m;
  }
  auto arr = PlaneArrangement::build(members);
  Census c = all_cells_census(arr);
  m.cells = c.size();
  m.sum_b0 = c.sum_b0;
  m.sum_b1 = c.sum_b1;
  m.max_cell_b = c.max_cell_b;
  return m;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  int k = cfg.k();
  std::map<int, std::pair<double, int>> acc0, acc1;
  for (int n : cfg.n_schedule)
    for (int trial = 0; trial < cfg.trials; ++trial) {
      ExperimentRow row;
      row.n = n;
      row.trial = trial;
      row.seed = trial_seed(cfg.seed, n, trial);
      try {
        auto members = random_members(cfg, n, row.seed);
        auto m = measure_arrangement(members, k);
        row.sum_b0 = m.sum_b0;
        row.sum_b1 = m.sum_b1;
        row.cells = m.cells;
        if (cfg.cdcd) row.cdcd_cells = build_cdcd(members, k).num_cells();
        long nn = std::max(n, 1);
        Q lim0 = evaluate_bound({BoundId::BETTI_KI, {nn, k, 0, 0, 0, 0, 0, 0, cfg.cb0()}});
        Q lim1 = evaluate_bound({BoundId::BETTI_KI, {nn, k, 0, 0, 0, 1, 0, 0, cfg.cb1()}});
        row.bound_ok = Q(row.sum_b0) <= lim0 && Q(row.sum_b1) <= lim1;
        auto& a0 = acc0[n];
        a0.first += static_cast<double>(row.sum_b0);
        ++a0.second;
        auto& a1 = acc1[n];
        a1.first += static_cast<double>(row.sum_b1);
        ++a1.second;
      } catch (const std::exception& e) {
        row.status = std::string("FAILED: ") + e.what();
        row.bound_ok = false;
      }
      rep.all_bounds_ok = rep.all_bounds_ok && row.bound_ok;
      rep.rows.push_back(row);
    }
  rep.fit_b0 = fit_means(acc0);
  rep.fit_b1 = fit_means(acc1);
  double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto& row : rep.rows) {
    row.fit_slope_b0 = rep.fit_b0 ? rep.fit_b0->slope : nan;
    row.fit_slope_b1 = rep.fit_b1 ? rep.fit_b1->slope : nan;
  }
  return rep;
}

// ---- reports

std::string experiment_csv(const ExperimentReport& r) {
  std::ostringstream s;
  s << "n,trial,seed,sum_b0,sum_b1,cells,cdcd_cells,fit_slope_b0,fit_slope_b1,bound_ok,status\n";
  for (auto& row : r.rows) {
    std::string status = row.status;
    std::replace(status.begin(), status.end(), ',', ';');
    s << row.n << ',' << row.trial << ',' << row.seed << ',' << row.sum_b0 << ',' << row.sum_b1 << ',' << row.cells
      << ',' << row.cdcd_cells << ',' << fmt_double(row.fit_slope_b0) << ',' << fmt_double(row.fit_slope_b1) << ','
      << (row.bound_ok ? "true" : "false") << ',' << status << '\n';
  }
  return s.str();
}

std::string experiment_json(const ExperimentReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  for (auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"trial", row.trial},
                    {"seed", row.seed},
                    {"sum_b0", row.sum_b0},
                    {"sum_b1", row.sum_b1},
                    {"cells", row.cells},
                    {"cdcd_cells", row.cdcd_cells},
                    {"fit_slope_b0", num(row.fit_slope_b0)},
                    {"fit_slope_b1", num(row.fit_slope_b1)},
                    {"bound_ok", row.bound_ok},
                    {"status", row.status}});
  return rows.dump(2) + "\n";
}

std::string census_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream s;
  s << "n,seed,total_cells,sum_b0,sum_b1,max_cell_b,wall_time_ms\n";
  for (auto& r : rows)
    s << r.n << ',' << r.seed << ',' << r.m.cells << ',' << r.m.sum_b0 << ',' << r.m.sum_b1 << ',' << r.m.max_cell_b
      << ',' << fmt_double(r.wall_time_ms) << '\n';
  return s.str();
}

std::string ramsey_csv(const std::vector<RamseyRow>& rows) {
  std::ostringstream s;
  s << "n,r,seed,eps_achieved,polarity,f1_size,f2_size,retries\n";
  for (auto& r : rows)
    s << r.n << ',' << r.r << ',' << r.seed << ',' << to_string(r.h.eps_achieved) << ',' << polarity_name(r.h.polarity)
      << ',' << r.h.f1.size() << ',' << r.h.f2.size() << ',' << r.h.attempts - 1 << '\n';
  return s.str();
}

std::string projection_csv(const std::vector<std::pair<std::string, ProjectionReport>>& reports) {
  std::ostringstream s;
  s << "instance_id,q,lhs,rhs,pass\n";
  for (auto& [id, rep] : reports)
    for (auto& l : rep.lines) s << id << ',' << l.q << ',' << l.lhs << ',' << l.rhs << ',' << (l.pass ? "true" : "false") << '\n';
  return s.str();
}

std::vector<std::vector<Q>> parse_rational_rows(const std::string& text) {
  std::vector<std::vector<Q>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::vector<Q> row;
    try {
      for (auto& v : split(line, ',')) row.push_back(parse_rational(v));
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace omin
