#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "poschart/json_io.hpp"

namespace poschart {
namespace cli {

struct Options {
  std::string catalog;
  std::string input_file;
  std::string sections_file;
  std::string s_list, t_list, x_list;
  uint64_t seed = 0;
  int starts = 200;
  double tol = 1e-10;
  long budget = 200000;
  int jobs = 1;
  std::string output_file;
};

namespace detail {

inline RatVec parse_list(const std::string& text) {
  RatVec v;
  std::string cur;
  try {
    for (char ch : text) {
      if (ch == ',') {
        v.push_back(parse_rat(cur));
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        cur += ch;
      }
    }
    if (!cur.empty()) v.push_back(parse_rat(cur));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return v;
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw InputError("bad JSON in '" + path + "': " + ex.what());
  }
  return j;
}

struct ChartSet {
  std::vector<std::string> labels;
  std::vector<PositiveChart> charts;
};

// Charts named by the options: catalog fixtures, a sections file, or a
// polytope input run through the full pipeline.
inline ChartSet resolve_charts(const Options& opt) {
  ChartSet set;
  if (!opt.catalog.empty()) {
    const CatalogEntry& entry = catalog_get(opt.catalog);
    if (!entry.charts.empty()) {
      for (const auto& fixture : entry.charts) {
        set.labels.push_back(fixture.label);
        set.charts.push_back(chart_from_fixture(fixture));
      }
      return set;
    }
    set.labels.push_back("default");
    set.charts.push_back(build_from_polytope(entry_polytope(entry), entry.fan_ray_order));
    return set;
  }
  if (!opt.sections_file.empty()) {
    Json j = load_json(opt.sections_file);
    int d = j.at("d").get<int>();
    std::vector<LaurentPolynomial> fs;
    for (const auto& s : j.at("polynomials")) fs.push_back(parse_polynomial(s.get<std::string>(), d));
    std::optional<IntegerMatrix> order;
    if (j.contains("ray_order")) {
      std::vector<IntVec> cols;
      for (const auto& c : j.at("ray_order")) cols.push_back(intvec_from_json(c));
      IntegerMatrix m(d, int(cols.size()));
      for (size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < d; ++r) m(r, int(c)) = cols[c][r];
      order = m;
    }
    set.labels.push_back("default");
    set.charts.push_back(build_from_sections(fs, order));
    return set;
  }
  if (!opt.input_file.empty()) {
    set.labels.push_back("default");
    set.charts.push_back(build_from_polytope(polytope_from_json(load_json(opt.input_file))));
    return set;
  }
  throw InputError("give --catalog NAME, --sections FILE or --input FILE");
}

inline Polytope resolve_polytope(const Options& opt) {
  if (!opt.catalog.empty()) {
    const CatalogEntry& entry = catalog_get(opt.catalog);
    if (entry.polytope_vertices) return entry_polytope(entry);
    // entries defined by sections: take the sum of the Newton polytopes
    if (!entry.charts.empty()) return chart_from_fixture(entry.charts[0]).P;
    throw InputError("entry '" + entry.name + "' has no polytope");
  }
  if (!opt.input_file.empty()) return polytope_from_json(load_json(opt.input_file));
  throw InputError("give --catalog NAME or --input FILE");
}

inline std::optional<IntegerMatrix> resolve_fan_order(const Options& opt) {
  if (opt.catalog.empty()) return std::nullopt;
  const CatalogEntry& entry = catalog_get(opt.catalog);
  if (entry.fan_ray_order) return entry.fan_ray_order;
  if (!entry.charts.empty()) return entry.charts[0].ray_order;
  return std::nullopt;
}

inline Json wrap_charts(const ChartSet& set, const std::function<Json(const PositiveChart&)>& fn) {
  if (set.charts.size() == 1) return fn(set.charts[0]);
  Json arr = Json::array();
  for (size_t i = 0; i < set.charts.size(); ++i) {
    Json j = fn(set.charts[i]);
    Json labeled;
    labeled["label"] = set.labels[i];
    for (auto& [key, val] : j.items()) labeled[key] = val;
    arr.push_back(labeled);
  }
  return Json{{"charts", arr}};
}

inline Json verify_chart_json(const PositiveChart& chart) {
  Json checks;
  // block identities and assumptions were enforced during assembly
  checks["assumptions"] = true;
  checks["block_identities"] = true;
  SectionIdentityReport rep = verify_section_identities(chart);
  checks["pullback_identity"] = rep.pullback_identity;
  checks["section_property"] = rep.section_property;
  checks["base_locus_disjoint"] = rep.base_locus_disjoint;
  bool homog = true;
  for (const auto& s : chart.sections) homog = homog && s.homog.homogeneous_for(chart.K);
  checks["homogeneous"] = homog;
  // moment plane identity at a handful of rational points
  RatVec ones(chart.k, Rat(1));
  MomentSpec spec(chart, ones);
  bool plane = true;
  for (int q = 1; q <= 5 && plane; ++q) {
    RatVec t(chart.d);
    for (int r = 0; r < chart.d; ++r) t[r] = Rat(q) / Rat(r + 2);
    plane = moment_plane_check(spec, t);
  }
  checks["moment_plane"] = plane;
  bool ok = true;
  for (const auto& [key, val] : checks.items()) ok = ok && val.get<bool>();
  return Json{{"checks", checks}, {"ok", ok}};
}

}  // namespace detail

/// Entry point shared by the binary and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"positive charts of smooth projective toric varieties"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--catalog", opt.catalog, "catalog entry name");
    sub->add_option("--input", opt.input_file, "polytope JSON file");
    sub->add_option("--sections", opt.sections_file, "sections JSON file");
    sub->add_option("--output", opt.output_file, "also write the JSON to this file");
    sub->add_option("--budget", opt.budget, "S-pair budget for basis computations");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--starts", opt.starts, "Newton starts per batch");
    sub->add_option("--tol", opt.tol, "residual tolerance");
    sub->add_option("--jobs", opt.jobs, "parallel Newton workers");
    sub->add_option("--s", opt.s_list, "comma-separated weights (rationals)");
    sub->add_option("--t", opt.t_list, "comma-separated torus point (rationals)");
    sub->add_option("--x", opt.x_list, "comma-separated exponents (rationals)");
  };
  std::vector<std::string> names = {"fan",    "nef",        "chart",  "ideal", "saturate",
                                    "degree", "moment",     "scattering", "verify", "catalog"};
  for (const auto& n : names) add_common(app.add_subcommand(n));

  std::vector<const char*> argv;
  static const std::string prog = "poschart";
  argv.push_back(prog.c_str());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help() << std::endl;
      return 0;
    }
    err << Json{{"error", Json{{"name", "InputError"}, {"kind", "input"},
                               {"message", e.what()}}}}.dump() << std::endl;
    return 2;
  }

  try {
    Json result;
    std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "catalog") {
      if (opt.catalog.empty()) {
        Json entries = Json::array();
        for (const auto& name : catalog_names()) {
          const CatalogEntry& e = catalog_get(name);
          entries.push_back(Json{{"name", e.name}, {"summary", e.summary}});
        }
        result = Json{{"entries", entries}};
      } else {
        result = json_catalog_entry(catalog_get(opt.catalog));
      }
    } else if (sub == "fan") {
      Polytope p = detail::resolve_polytope(opt);
      Fan fan = normal_fan(p, detail::resolve_fan_order(opt));
      result = json_fan(fan);
      if (p.from_ambient)
        result["projection"] = Json{{"origin", json_ratvec(p.from_ambient->origin)},
                                    {"basis", json_matrix_rows(p.from_ambient->basis)}};
    } else if (sub == "nef") {
      Polytope p = detail::resolve_polytope(opt);
      Fan fan = normal_fan(p, detail::resolve_fan_order(opt));
      IntegerMatrix K = gale_dual(fan.rays);
      auto snf = snf_invariants(K.transpose());
      if (!snf.right_inverse) throw TorsionError("kernel lattice is not saturated");
      Cone nef = nef_cone(fan, K, *snf.right_inverse);
      result = Json{{"dim", nef.ambient_dim},
                    {"ray_count", nef.rays->cols()},
                    {"rays", json_matrix_cols(*nef.rays)}};
    } else if (sub == "chart") {
      detail::ChartSet set = detail::resolve_charts(opt);
      result = detail::wrap_charts(set, [](const PositiveChart& c) { return json_chart(c); });
    } else if (sub == "ideal") {
      detail::ChartSet set = detail::resolve_charts(opt);
      result = detail::wrap_charts(set, [](const PositiveChart& c) {
        Json ideal = Json::array();
        for (const auto& g : ideal_strings(c)) ideal.push_back(g);
        return Json{{"ideal", ideal}};
      });
    } else if (sub == "saturate") {
      detail::ChartSet set = detail::resolve_charts(opt);
      result = detail::wrap_charts(set, [&](const PositiveChart& c) {
        PolyIdeal ideal = chart_ideal(c);
        ideal.budget.max_pairs = opt.budget;
        PolyIdeal sat = saturate(ideal, gb::Expo(c.n, 1));
        bool equal = ideal_equal(ideal, sat);
        Json gens = Json::array();
        for (const auto& g : sat.generators) {
          LaurentPolynomial lp(c.n);
          for (const auto& t : g.terms) {
            IntVec e(c.n);
            for (int i = 0; i < c.n; ++i) e[i] = t.e[i];
            lp.add_term(e, t.c);
          }
          gens.push_back(to_string(lp, "y"));
        }
        return Json{{"equal_to_input", equal}, {"saturation_generators", gens}};
      });
    } else if (sub == "degree") {
      detail::ChartSet set = detail::resolve_charts(opt);
      result = detail::wrap_charts(set, [&](const PositiveChart& c) {
        PolyIdeal ideal = chart_ideal(c);
        ideal.budget.max_pairs = opt.budget;
        auto [dim, deg] = affine_dim_degree(ideal);
        return Json{{"dim", dim}, {"degree", json_int(deg)}};
      });
    } else if (sub == "moment") {
      detail::ChartSet set = detail::resolve_charts(opt);
      const PositiveChart& chart = set.charts[0];
      if (opt.t_list.empty() || opt.s_list.empty())
        throw InputError("moment needs --t and --s");
      RatVec t = detail::parse_list(opt.t_list);
      RatVec s = detail::parse_list(opt.s_list);
      if (int(t.size()) != chart.d) throw InputError("--t needs d entries");
      MomentSpec spec(chart, s);
      RatVec x = moment_eval(spec, t);
      result = Json{{"t", json_ratvec(t)},
                    {"s", json_ratvec(s)},
                    {"x", json_ratvec(x)},
                    {"plane_check", moment_plane_check(spec, t)}};
    } else if (sub == "scattering") {
      detail::ChartSet set = detail::resolve_charts(opt);
      const PositiveChart& chart = set.charts[0];
      if (opt.x_list.empty()) throw InputError("scattering needs --x");
      RatVec x = detail::parse_list(opt.x_list);
      if (int(x.size()) != chart.n) throw InputError("--x needs n entries");
      ScatteringProblem problem{chart, x, std::nullopt};
      if (!opt.catalog.empty()) {
        const CatalogEntry& entry = catalog_get(opt.catalog);
        if (!entry.charts.empty()) problem.expected_count = entry.charts[0].scattering_count;
      }
      ScatteringConfig config;
      config.starts = opt.starts;
      config.seed = opt.seed;
      config.tol = opt.tol;
      config.jobs = opt.jobs;
      ScatteringResult res = scattering_solve(problem, config);
      result = json_scattering(res);
      result["s"] = json_ratvec(problem.induced_s());
      if (problem.expected_count) result["expected_count"] = *problem.expected_count;
    } else if (sub == "verify") {
      detail::ChartSet set = detail::resolve_charts(opt);
      result = detail::wrap_charts(set, detail::verify_chart_json);
      bool ok = true;
      if (result.contains("charts")) {
        for (const auto& c : result["charts"]) ok = ok && c["ok"].get<bool>();
      } else {
        ok = result["ok"].get<bool>();
      }
      result["all_ok"] = ok;
      if (!ok) {
        err << Json{{"error", Json{{"name", "IdentityFailed"}, {"kind", "internal"},
                                   {"message", "an invariant check reported false"}}}}.dump()
            << std::endl;
        out << result.dump(2) << std::endl;
        return 1;
      }
    }

    std::string text = result.dump(2);
    out << text << std::endl;
    if (!opt.output_file.empty()) {
      std::ofstream f(opt.output_file);
      if (!f) throw InputError("cannot write '" + opt.output_file + "'");
      f << text << std::endl;
    }
    return 0;
  } catch (const Error& e) {
    std::string kind;
    int code = 1;
    switch (e.kind()) {
      case ErrorKind::Input:
        kind = "input";
        code = 2;
        break;
      case ErrorKind::Assumption:
        kind = "assumption";
        code = 3;
        break;
      case ErrorKind::Resource:
        kind = "resource";
        code = 4;
        break;
      case ErrorKind::Internal:
        kind = "internal";
        code = 1;
        break;
    }
    err << Json{{"error", Json{{"name", e.name()}, {"kind", kind}, {"message", e.what()}}}}.dump()
        << std::endl;
    return code;
  } catch (const std::exception& e) {
    err << Json{{"error", Json{{"name", "Unhandled"}, {"kind", "internal"},
                               {"message", e.what()}}}}.dump()
        << std::endl;
    return 1;
  }
}

}  // namespace cli
}  // namespace poschart
