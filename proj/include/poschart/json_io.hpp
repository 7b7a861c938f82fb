#pragma once

#include <json.hpp>

#include "poschart/catalog.hpp"
#include "poschart/groebner.hpp"

namespace poschart {

using Json = nlohmann::ordered_json;

inline Json json_int(const Int& x) {
  if (x >= std::numeric_limits<int64_t>::min() && x <= std::numeric_limits<int64_t>::max())
    return x.convert_to<int64_t>();
  return x.str();
}

inline Json json_intvec(const IntVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

inline Json json_matrix_rows(const IntegerMatrix& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(json_intvec(m.row(i)));
  return a;
}

inline Json json_matrix_cols(const IntegerMatrix& m) {
  Json a = Json::array();
  for (int j = 0; j < m.cols(); ++j) a.push_back(json_intvec(m.col(j)));
  return a;
}

inline Json json_ratvec(const RatVec& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(rat_to_string(x));
  return a;
}

inline RatVec ratvec_from_json(const Json& a) {
  RatVec v;
  for (const auto& x : a) {
    if (x.is_string()) {
      try {
        v.push_back(parse_rat(x.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }
    else if (x.is_number_integer())
      v.push_back(Rat(Int(x.get<int64_t>())));
    else
      throw InputError("rationals must be integers or 'p/q' strings");
  }
  return v;
}

inline IntVec intvec_from_json(const Json& a) {
  IntVec v;
  for (const auto& x : a) {
    if (x.is_number_integer())
      v.push_back(Int(x.get<int64_t>()));
    else if (x.is_string())
      v.push_back(Int(x.get<std::string>()));
    else
      throw InputError("expected an integer entry");
  }
  return v;
}

inline Json json_polytope(const Polytope& p) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : p.verts) verts.push_back(json_ratvec(v));
  j["vertices"] = verts;
  if (p.normals) {
    Json normals = Json::array();
    for (int c = 0; c < p.normals->cols(); ++c) normals.push_back(json_intvec(p.normals->col(c)));
    Json offsets = Json::array();
    for (const Rat& z : *p.offsets)
      offsets.push_back(is_integer(z) ? Json(json_int(num(z))) : Json(rat_to_string(z)));
    j["facets"] = Json{{"normals", normals}, {"offsets", offsets}};
  }
  j["ambient_dim"] = p.dim;
  j["lattice_dim"] = p.lat_dim;
  if (p.from_ambient) {
    j["projection"] = Json{{"origin", json_ratvec(p.from_ambient->origin)},
                           {"basis", json_matrix_rows(p.from_ambient->basis)}};
  }
  return j;
}

/// Accepts {"vertices": [["p/q", ...], ...]} or
/// {"facets": {"normals": [[int, ...], ...], "offsets": [int, ...]}}.
inline Polytope polytope_from_json(const Json& j) {
  if (j.contains("vertices")) {
    std::vector<RatVec> pts;
    for (const auto& row : j.at("vertices")) pts.push_back(ratvec_from_json(row));
    return dual_convert(pts);
  }
  if (j.contains("facets")) {
    const Json& f = j.at("facets");
    std::vector<IntVec> normals;
    for (const auto& row : f.at("normals")) normals.push_back(intvec_from_json(row));
    if (normals.empty()) throw InputError("no facet normals given");
    IntegerMatrix mat(int(normals[0].size()), int(normals.size()));
    for (size_t c = 0; c < normals.size(); ++c) {
      if (normals[c].size() != normals[0].size()) throw InputError("ragged normals");
      for (size_t r = 0; r < normals[c].size(); ++r) mat(int(r), int(c)) = normals[c][r];
    }
    RatVec offsets = ratvec_from_json(f.at("offsets"));
    return dual_convert(mat, offsets);
  }
  throw InputError("polytope JSON needs 'vertices' or 'facets'");
}

inline Json json_fan(const Fan& fan) {
  Json j;
  j["dim"] = fan.dim;
  j["rays"] = json_matrix_cols(fan.rays);
  Json cones = Json::array();
  for (const auto& sigma : fan.maximal_cones) {
    Json c = Json::array();
    for (int i : sigma) c.push_back(i + 1);  // 1-based like the variable names
    cones.push_back(c);
  }
  j["maximal_cones"] = cones;
  return j;
}

inline Json json_chart(const PositiveChart& chart) {
  Json j;
  j["d"] = chart.d;
  j["n"] = chart.n;
  j["k"] = chart.k;
  j["F"] = json_matrix_rows(chart.F);
  j["M"] = json_matrix_rows(chart.M);
  j["M_inv"] = json_matrix_rows(chart.M_inv);
  Json sections = Json::array();
  for (const auto& s : chart.sections) {
    sections.push_back(Json{{"class", json_intvec(s.klass)},
                            {"support_vector", json_intvec(s.support)},
                            {"poly", to_string(s.f)}});
  }
  j["sections"] = sections;
  Json ideal = Json::array();
  for (const auto& g : ideal_strings(chart)) ideal.push_back(g);
  j["ideal"] = ideal;
  Json phi = Json::array();
  for (const auto& pc : chart.phi)
    phi.push_back(Json{{"t_exponent", json_intvec(pc.t_exponent)},
                       {"f_powers", json_intvec(pc.f_powers)}});
  j["phi"] = phi;
  return j;
}

inline Json json_complex_vector(const std::vector<std::complex<double>>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(Json::array({z.real(), z.imag()}));
  return a;
}

inline Json json_scattering(const ScatteringResult& res) {
  Json j;
  j["count"] = res.count;
  Json sols = Json::array();
  for (const auto& s : res.solutions) {
    sols.push_back(Json{{"t", json_complex_vector(s.t)},
                        {"y", json_complex_vector(s.y)},
                        {"residual", s.residual}});
  }
  j["solutions"] = sols;
  return j;
}

inline Json json_catalog_entry(const CatalogEntry& e) {
  Json j;
  j["name"] = e.name;
  j["summary"] = e.summary;
  if (e.polytope_vertices) {
    Json verts = Json::array();
    for (const auto& v : *e.polytope_vertices) verts.push_back(json_ratvec(v));
    j["vertices"] = verts;
  }
  if (e.fan_ray_order) j["ray_order"] = json_matrix_cols(*e.fan_ray_order);
  Json charts = Json::array();
  for (const auto& c : e.charts) {
    Json cj;
    cj["label"] = c.label;
    cj["sections"] = c.sections;
    cj["provenance"] = to_string(c.provenance);
    if (c.ray_order) cj["ray_order"] = json_matrix_cols(*c.ray_order);
    if (!c.ideal.empty()) cj["expected_ideal"] = c.ideal;
    if (c.expected_M) cj["expected_M"] = json_matrix_rows(*c.expected_M);
    if (c.dim_degree)
      cj["expected_dim_degree"] = Json::array({c.dim_degree->first, json_int(c.dim_degree->second)});
    if (!c.binary_presentation.empty()) cj["binary_presentation"] = c.binary_presentation;
    if (c.scattering_count) cj["expected_scattering_count"] = *c.scattering_count;
    cj["saturation_in_budget"] = c.saturation_in_budget;
    charts.push_back(cj);
  }
  if (!charts.empty()) j["charts"] = charts;
  if (e.nef_dim) {
    Json nef;
    nef["dim"] = *e.nef_dim;
    nef["ray_count"] = *e.nef_ray_count;
    Json lifts = Json::array();
    for (const auto& v : e.nef_ray_lifts) lifts.push_back(json_intvec(v));
    if (!e.nef_ray_lifts.empty()) nef["ray_lifts"] = lifts;
    nef["provenance"] = to_string(e.nef_provenance);
    j["nef"] = nef;
  }
  if (e.f_vector_expected) {
    Json fv = Json::array();
    for (const Int& c : *e.f_vector_expected) fv.push_back(json_int(c));
    j["expected_f_vector"] = fv;
  }
  if (e.chart_should_fail) j["expected_error"] = e.expected_error;
  return j;
}

}  // namespace poschart
