#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "omin/cdcd.hpp"
#include "omin/census.hpp"
#include "omin/harness.hpp"
#include "omin/homotopy.hpp"

using namespace omin;
using nlohmann::json;

namespace {

struct Globals {
  uint64_t seed = 1;
  std::string config, out, format = "csv";
};

struct Inputs {
  std::string tmpl = "circle", tmpl_file, params, family = "circles";
  int n = -1;
  long box = 10;
};

FamilyTemplate template_by_name(const std::string& name) {
  static const std::map<std::string, std::function<FamilyTemplate()>> table = {
      {"circle", templates::circle},       {"disk", templates::disk},
      {"disk_complement", templates::disk_complement},
      {"halfplane", templates::halfplane}, {"hyperplane", templates::hyperplane},
      {"plane_segment", templates::plane_segment},
      {"unit_disk", templates::unit_disk}, {"unit_square", templates::unit_square},
      {"plane_point", templates::plane_point},
      {"interval", templates::interval},   {"segment", templates::segment},
  };
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown template '" + name + "'");
  return it->second();
}

// Members from a parameter file, or n random ones drawn from the seed.
std::vector<MemberSet> load_members(const Inputs& in, uint64_t seed) {
  if (!in.params.empty()) {
    auto t = std::make_shared<const FamilyTemplate>(in.tmpl_file.empty() ? template_by_name(in.tmpl)
                                                                          : FamilyTemplate::parse(read_file(in.tmpl_file)));
    std::vector<MemberSet> ms;
    for (auto& row : parse_rational_rows(read_file(in.params))) {
      if (static_cast<int>(row.size()) != t->l) throw ConfigError("parameter row has the wrong length");
      ms.push_back(instantiate(t, row));
    }
    return ms;
  }
  if (in.n < 0) throw ConfigError("give --params or --n");
  ExperimentConfig cfg;
  cfg.family = in.family;
  cfg.box = in.box;
  cfg.validate();
  return random_members(cfg, in.n, seed);
}

void add_inputs(CLI::App* sub, Inputs& in) {
  sub->add_option("--template", in.tmpl, "built-in template name");
  sub->add_option("--template-file", in.tmpl_file, "template in the text format");
  sub->add_option("--params", in.params, "parameter file: one member per line, comma-separated rationals");
  sub->add_option("--n", in.n, "number of random members (instead of --params)");
  sub->add_option("--family", in.family, "random family: circles | segments")->check(CLI::IsMember({"circles", "segments"}));
  sub->add_option("--box", in.box, "random parameters lie in [0, box]");
}

// "0,1;2;-" -> {{0,1},{2},{}}
std::vector<std::vector<int>> parse_sigma(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::vector<int> I;
    if (part != "-" && !part.empty()) {
      std::stringstream ps(part);
      std::string v;
      while (std::getline(ps, v, ',')) I.push_back(std::stoi(v));
    }
    std::sort(I.begin(), I.end());
    out.push_back(I);
  }
  return out;
}

std::vector<Q> parse_q_list(const std::string& text) {
  auto rows = parse_rational_rows(text);
  if (rows.size() != 1) throw ConfigError("expected one comma-separated list");
  return rows[0];
}

IntervalSet closed_interval(const std::vector<Q>& v) {
  if (v.size() != 2 || v[1] < v[0]) throw ConfigError("expected lo,hi");
  return IntervalSet::closed(RealAlg(v[0]), RealAlg(v[1]));
}

// Rows of a table in csv or json.
std::string table(const Globals& g, const std::vector<std::string>& cols, const std::vector<std::vector<std::string>>& rows) {
  if (g.format == "json") {
    json arr = json::array();
    for (auto& r : rows) {
      json o;
      for (size_t c = 0; c < cols.size(); ++c) o[cols[c]] = r[c];
      arr.push_back(o);
    }
    return arr.dump(2) + "\n";
  }
  std::string s;
  for (size_t c = 0; c < cols.size(); ++c) s += (c ? "," : "") + cols[c];
  s += "\n";
  for (auto& r : rows) {
    for (size_t c = 0; c < r.size(); ++c) s += (c ? "," : "") + r[c];
    s += "\n";
  }
  return s;
}

// CSV text to a json array of string-valued objects.
std::string csv_as(const Globals& g, const std::string& csv) {
  if (g.format != "json") return csv;
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  std::vector<std::string> cols;
  std::stringstream hs(line);
  for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(ss, line)) {
    std::vector<std::string> r;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) r.push_back(c);
    r.resize(cols.size());
    rows.push_back(r);
  }
  return table(g, cols, rows);
}

void emit(const Globals& g, const std::string& text, const std::string& fallback_path = "") {
  std::string path = g.out.empty() ? fallback_path : g.out;
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arrangements of definable sets: exact decompositions, Betti numbers and bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for every random choice");
  app.add_option("--config", g.config, "experiment configuration file");
  app.add_option("--out", g.out, "output path (default: standard output)");
  app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  std::function<void()> action;

  Inputs arrange_in;
  auto* arrange = app.add_subcommand("arrange", "cell census of a planar or linear arrangement");
  add_inputs(arrange, arrange_in);
  arrange->callback([&] {
    action = [&] {
      auto ms = load_members(arrange_in, g.seed);
      int k = ms.empty() ? (arrange_in.family == "segments" ? 1 : 2) : ms[0].k();
      auto t0 = std::chrono::steady_clock::now();
      CensusRow row;
      row.n = static_cast<int>(ms.size());
      row.seed = g.seed;
      row.m = measure_arrangement(ms, k);
      row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      emit(g, csv_as(g, census_csv({row})));
    };
  });

  Inputs cdcd_in;
  std::string c2_text;
  auto* cdcd = app.add_subcommand("cdcd", "cylindrical decomposition adapted to the members");
  add_inputs(cdcd, cdcd_in);
  cdcd->add_option("--c2", c2_text, "cell-count constant (default: calibrated)");
  cdcd->callback([&] {
    action = [&] {
      auto ms = load_members(cdcd_in, g.seed);
      int k = ms.empty() ? (cdcd_in.family == "segments" ? 1 : 2) : ms[0].k();
      auto tree = build_cdcd(ms, k);
      auto adapted = verify_adapted_partition(tree, ms);
      Q c2 = c2_text.empty() ? default_cdcd_c2(k) : parse_rational(c2_text);
      auto census = cell_census(tree, c2);
      size_t det = 0;
      for (int c = 0; c < tree.num_cells(); ++c) det = std::max(det, determinant_indices(tree, c).size());
      emit(g, table(g, {"n", "k", "cells", "adapted", "max_determinants", "bound", "bound_ok"},
                    {{std::to_string(ms.size()), std::to_string(k), std::to_string(census.cells),
                      adapted.ok ? "true" : "false", std::to_string(det), to_string(census.bound),
                      census.ok ? "true" : "false"}}));
      if (!adapted.ok) throw std::logic_error("decomposition is not adapted: " + adapted.reason);
    };
  });

  Inputs betti_in;
  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of each member and of their union");
  add_inputs(betti_cmd, betti_in);
  betti_cmd->callback([&] {
    action = [&] {
      auto ms = load_members(betti_in, g.seed);
      std::vector<std::vector<std::string>> rows;
      for (size_t i = 0; i < ms.size(); ++i) {
        auto b = member_betti(ms[i]);
        rows.push_back({std::to_string(i), std::to_string(b.b0), std::to_string(b.b1)});
      }
      if (!ms.empty()) {
        BettiVector u;
        if (ms[0].k() == 1) {
          IntervalSet s;
          for (auto& m : ms) s = s | realize_on_line(m);
          u = {b0_1d(s), 0};
        } else {
          auto arr = PlaneArrangement::build(ms);
          u = betti_of_membership(arr, [](const std::vector<bool>& v) {
            return std::find(v.begin(), v.end(), true) != v.end();
          });
        }
        rows.push_back({"union", std::to_string(u.b0), std::to_string(u.b1)});
      }
      emit(g, table(g, {"member", "b0", "b1"}, rows));
    };
  });

  Inputs gv_in;
  std::string gv_v, gv_sigma;
  auto* gv = app.add_subcommand("gv", "replace a union of basic sets by a closed bounded set of equal Betti numbers");
  add_inputs(gv, gv_in);
  gv->add_option("--v", gv_v, "V: lo,hi on the line, or cx,cy,R (a closed disk) in the plane")->required();
  gv->add_option("--sigma", gv_sigma, "index sets, e.g. \"0,1;2;-\" ('-' is the empty set)")->required();
  gv->callback([&] {
    action = [&] {
      auto ms = load_members(gv_in, g.seed);
      auto sigma = parse_sigma(gv_sigma);
      auto v = parse_q_list(gv_v);
      GvResult r;
      if (!ms.empty() && ms[0].k() == 2) {
        if (v.size() != 3) throw ConfigError("planar V is cx,cy,R");
        r = gv_replace_planar(ms, instantiate(templates::disk(), v), sigma);
      } else {
        std::vector<IntervalSet> sets;
        for (auto& m : ms) sets.push_back(realize_on_line(m));
        IntervalSet V = closed_interval(v);
        r = gv_replace(sets, V, sigma, admissible_ladder(line_endpoints(sets, V), 2 * static_cast<int>(sets.size())));
      }
      std::string eps;
      for (auto& e : r.ladder.eps) eps += (eps.empty() ? "" : " ") + to_string(e);
      emit(g, table(g, {"b0_before", "b1_before", "b0_after", "b1_after", "closed", "bounded", "ladder"},
                    {{std::to_string(r.before.b0), std::to_string(r.before.b1), std::to_string(r.after.b0),
                      std::to_string(r.after.b1), r.closed ? "true" : "false", r.bounded ? "true" : "false", eps}}));
      if (!(r.before == r.after)) throw std::logic_error("replacement changed the Betti numbers");
    };
  });

  Inputs mv_in;
  int mv_split = 1;
  auto* mv = app.add_subcommand("mv", "Mayer-Vietoris inequalities for two unions of closed members");
  add_inputs(mv, mv_in);
  mv->add_option("--split", mv_split, "S1 = union of members [0, split), S2 = the rest");
  mv->callback([&] {
    action = [&] {
      auto ms = load_members(mv_in, g.seed);
      int n = static_cast<int>(ms.size());
      if (mv_split < 1 || mv_split >= n) throw ConfigError("--split must leave both sides non-empty");
      BettiSet s1, s2;
      if (ms[0].k() == 1) {
        IntervalSet a, b;
        for (int i = 0; i < n; ++i) (i < mv_split ? a : b) = (i < mv_split ? a : b) | realize_on_line(ms[i]);
        s1 = a;
        s2 = b;
      } else {
        auto arr = std::make_shared<const PlaneArrangement>(PlaneArrangement::build(ms));
        PlanarSet a{arr, std::vector<bool>(arr->num_cells())}, b = a;
        for (int c = 0; c < arr->num_cells(); ++c)
          for (int i = 0; i < n; ++i) (i < mv_split ? a : b).cells[c] = (i < mv_split ? a : b).cells[c] || arr->in_member(c, i);
        s1 = a;
        s2 = b;
      }
      auto rep = mv_pair_check(s1, s2);
      std::vector<std::vector<std::string>> rows;
      auto add = [&](const char* name, const std::vector<MvLine>& ls) {
        for (auto& l : ls)
          rows.push_back({name, std::to_string(l.degree), std::to_string(l.lhs), std::to_string(l.rhs),
                          l.pass ? "true" : "false"});
      };
      add("MV1", rep.mv1);
      add("MV2", rep.mv2);
      add("MV3", rep.mv3);
      emit(g, table(g, {"inequality", "degree", "lhs", "rhs", "pass"}, rows));
    };
  });

  Inputs ann_in;
  std::string ann_v, ann_e1, ann_e2;
  auto* annulus = app.add_subcommand("annulus", "cells of a linear arrangement against the annulus complement");
  add_inputs(annulus, ann_in);
  annulus->add_option("--v", ann_v, "V = lo,hi")->required();
  annulus->add_option("--eps1", ann_e1, "outer radius")->required();
  annulus->add_option("--eps2", ann_e2, "inner radius, below eps1")->required();
  annulus->callback([&] {
    action = [&] {
      auto ms = load_members(ann_in, g.seed);
      std::vector<IntervalSet> sets;
      for (auto& m : ms) sets.push_back(realize_on_line(m));
      auto r = annulus_reduction(sets, closed_interval(parse_q_list(ann_v)), parse_rational(ann_e1),
                                 parse_rational(ann_e2));
      emit(g, table(g, {"cells", "components", "bijection"},
                    {{std::to_string(r.cells.size()), std::to_string(r.components.size()), "true"}}));
    };
  });

  Inputs proj_in;
  auto* project = app.add_subcommand("project", "projection inequality for the union of planar members");
  add_inputs(project, proj_in);
  project->callback([&] {
    action = [&] {
      auto ms = load_members(proj_in, g.seed);
      auto rep = projection_inequality_check(ms);
      std::string id = proj_in.params.empty() ? "seed" + std::to_string(g.seed) : proj_in.params;
      emit(g, csv_as(g, projection_csv({{id, rep}})));
      if (!rep.ok) throw std::logic_error("projection inequality failed");
    };
  });

  std::string points_path, relation = "unit-disks", c1_text;
  int r_opt = 0, retries = 8;
  auto* ramsey = app.add_subcommand("ramsey", "homogeneous pair extraction by cuttings");
  ramsey->add_option("--points", points_path, "points file: x,y per line")->required();
  ramsey->add_option("--relation", relation, "unit-disks | unit-squares | points")
      ->check(CLI::IsMember({"unit-disks", "unit-squares", "points"}));
  ramsey->add_option("--r", r_opt, "sample size (default: grid-searched)");
  ramsey->add_option("--c1", c1_text, "crossing constant (default 8)");
  ramsey->add_option("--retries", retries, "resampling budget");
  ramsey->callback([&] {
    action = [&] {
      auto pts = parse_rational_rows(read_file(points_path));
      FamilyTemplate t = relation == "unit-disks"     ? templates::unit_disk()
                         : relation == "unit-squares" ? templates::unit_square()
                                                      : templates::plane_point();
      Relation rel = compile_relation(t);
      CuttingOptions opt;
      if (!c1_text.empty()) opt.c1 = parse_rational(c1_text);
      opt.retries = retries;
      int n = static_cast<int>(pts.size());
      int r = r_opt > 0 ? r_opt : std::min(n, default_r(opt.c1, default_cdcd_c2(2)));
      RamseyRow row{n, r, g.seed, homogeneous_pairs(pts, rel, r, g.seed, opt)};
      auto rep = verify_homogeneity(pts, row.h.f1, row.h.f2, rel);
      emit(g, csv_as(g, ramsey_csv({row})));
      if (!rep.ok) throw std::logic_error("extracted families are not homogeneous");
    };
  });

  std::string formula;
  BoundParams bp;
  std::string c_text = "1";
  auto* bounds = app.add_subcommand("bounds", "evaluate a closed-form bound exactly");
  bounds->add_option("--formula", formula, "EQ1 EQ2 BETTI_KI BETTI_MCELLS VARIETY ASETS_CLOSED ASETS_GENERAL "
                                           "ASETS_IMPROVED PROJECTION CDCD")
      ->required();
  bounds->add_option("--n", bp.n);
  bounds->add_option("--k", bp.k);
  bounds->add_option("--kp", bp.kp, "k' (dimension of V)");
  bounds->add_option("--k1", bp.k1);
  bounds->add_option("--k2", bp.k2);
  bounds->add_option("--i", bp.i);
  bounds->add_option("--d", bp.d);
  bounds->add_option("--m", bp.m);
  bounds->add_option("--C", c_text, "constant (rational)");
  bounds->callback([&] {
    action = [&] {
      bp.C = parse_rational(c_text);
      Q v = evaluate_bound({parse_bound_id(formula), bp});
      if (g.format == "json")
        emit(g, json{{"formula", formula}, {"value", to_string(v)}}.dump() + "\n");
      else
        emit(g, to_string(v) + "\n");
    };
  });

  auto* experiment = app.add_subcommand("experiment", "scaling experiment from a configuration file");
  experiment->callback([&] {
    action = [&] {
      if (g.config.empty()) throw ConfigError("experiment needs --config");
      auto cfg = ExperimentConfig::load(g.config);
      if (app.count("--seed")) cfg.seed = g.seed;
      auto rep = run_experiment(cfg);
      emit(g, g.format == "json" ? experiment_json(rep) : experiment_csv(rep), cfg.out);
      if (!rep.all_bounds_ok) throw std::logic_error("a row exceeded its calibrated bound or failed");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
