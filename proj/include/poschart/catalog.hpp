#pragma once

#include "poschart/numeric.hpp"

namespace poschart {

/// Where an expected value comes from: a published worked example, an
/// independent derivation (closed form or oracle), or a triviality.
enum class Provenance { Published, Derived, Trivial };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Published: return "published";
    case Provenance::Derived: return "derived";
    case Provenance::Trivial: return "trivial";
  }
  return "?";
}

/// One chart fixture: verbatim section list, the pinned ray order, and the
/// expected artifacts with their provenance.
struct ChartFixture {
  std::string label = "default";
  std::vector<std::string> sections;         // polynomial strings in t1..td
  int d = 0;                                 // variable count of the sections
  std::optional<IntegerMatrix> ray_order;    // pinned F columns
  std::vector<std::string> ideal;            // expected generators (verbatim)
  std::optional<IntegerMatrix> expected_M;
  std::vector<std::pair<IntVec, IntVec>> expected_phi;  // (t_exponent, f_powers)
  std::optional<std::pair<int, Int>> dim_degree;
  std::vector<std::string> binary_presentation;
  std::optional<long> scattering_count;
  bool saturation_in_budget = true;  // false: expect ResourceLimit at desk scale
  Provenance provenance = Provenance::Published;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::optional<std::vector<RatVec>> polytope_vertices;
  std::optional<IntegerMatrix> fan_ray_order;  // pinned order for the polytope fan
  std::vector<ChartFixture> charts;
  std::optional<int> nef_dim;
  std::optional<int> nef_ray_count;
  std::vector<IntVec> nef_ray_lifts;  // divisor coefficient vectors
  Provenance nef_provenance = Provenance::Published;
  std::optional<std::vector<Int>> f_vector_expected;
  bool chart_should_fail = false;
  std::string expected_error;  // name of the refusing error
};

namespace catalog_detail {

inline std::vector<RatVec> int_points(const std::vector<std::vector<int>>& raw) {
  std::vector<RatVec> pts;
  for (const auto& p : raw) {
    RatVec v(p.size());
    for (size_t i = 0; i < p.size(); ++i) v[i] = Rat(p[i]);
    pts.push_back(std::move(v));
  }
  return pts;
}

inline IntVec unit(int n, int i) {
  IntVec v(n);
  v[i] = 1;
  return v;
}

inline IntVec units(int n, std::initializer_list<int> idx) {
  IntVec v(n);
  for (int i : idx) v[i] += 1;
  return v;
}

inline CatalogEntry make_pentagon() {
  CatalogEntry e;
  e.name = "pentagon";
  e.summary = "pentagon with vertices (0,0),(0,2),(2,2),(2,1),(1,0); the running example";
  e.polytope_vertices = int_points({{0, 0}, {0, 2}, {2, 2}, {2, 1}, {1, 0}});
  e.fan_ray_order = IntegerMatrix{{1, 0, -1, -1, 0}, {0, 1, 1, 0, -1}};
  ChartFixture c;
  c.sections = {"1 + t1", "1 + t2", "1 + t2 + t1*t2"};
  c.d = 2;
  c.ray_order = e.fan_ray_order;
  c.ideal = {"y3*y4 + y1 - 1", "y5 + y2*y3 - 1", "y4*y5 + y2*y3*y4 + y1*y2 - 1"};
  c.expected_M = IntegerMatrix{{1, 0, -1, -1, 0},
                               {0, 1, 1, 0, -1},
                               {0, 0, 1, 1, 0},
                               {0, 0, 0, 0, 1},
                               {0, 0, 0, 1, 1}};
  c.expected_phi = {{{1, 0}, {1, 0, 0}},
                    {{0, 1}, {-1, 0, 1}},
                    {{0, 0}, {1, 1, -1}},
                    {{0, 0}, {0, -1, 1}},
                    {{0, 0}, {0, 1, 0}}};
  c.scattering_count = 2;
  e.charts.push_back(std::move(c));
  e.nef_dim = 3;
  e.nef_ray_count = 3;
  e.nef_ray_lifts = {units(5, {2, 3}), units(5, {4}), units(5, {3, 4})};
  return e;
}

inline CatalogEntry make_square() {
  CatalogEntry e;
  e.name = "square";
  e.summary = "unit square; product of two segments";
  e.polytope_vertices = int_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  e.fan_ray_order = IntegerMatrix{{1, 0, -1, 0}, {0, 1, 0, -1}};
  ChartFixture c;
  c.sections = {"1 + t1", "1 + t2"};
  c.d = 2;
  c.ray_order = e.fan_ray_order;
  c.ideal = {"y1 + y3 - 1", "y2 + y4 - 1"};
  c.expected_M = IntegerMatrix{{1, 0, -1, 0}, {0, 1, 0, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  c.expected_phi = {{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}, {{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}};
  c.scattering_count = 1;
  c.provenance = Provenance::Published;
  e.charts.push_back(std::move(c));
  e.nef_dim = 2;
  e.nef_ray_count = 2;
  e.nef_ray_lifts = {unit(4, 2), unit(4, 3)};
  return e;
}

inline CatalogEntry make_simplex(int d) {
  CatalogEntry e;
  e.name = "simplex" + std::to_string(d);
  e.summary = "standard simplex in dimension " + std::to_string(d);
  std::vector<std::vector<int>> verts(1, std::vector<int>(d, 0));
  for (int i = 0; i < d; ++i) {
    std::vector<int> v(d, 0);
    v[i] = 1;
    verts.push_back(v);
  }
  e.polytope_vertices = int_points(verts);
  IntegerMatrix order(d, d + 1);
  for (int i = 0; i < d; ++i) order(i, i) = 1;
  for (int i = 0; i < d; ++i) order(i, d) = -1;
  e.fan_ray_order = order;
  ChartFixture c;
  std::string poly = "1";
  for (int i = 1; i <= d; ++i) poly += " + t" + std::to_string(i);
  c.sections = {poly};
  c.d = d;
  c.ray_order = order;
  std::string ideal;
  for (int j = 1; j <= d + 1; ++j) ideal += (j > 1 ? " + y" : "y") + std::to_string(j);
  c.ideal = {ideal + " - 1"};
  for (int j = 0; j < d; ++j) c.expected_phi.push_back({unit(d, j), IntVec{1}});
  c.expected_phi.push_back({IntVec(d), IntVec{1}});
  if (d == 1) c.scattering_count = 1;
  c.provenance = Provenance::Published;
  e.charts.push_back(std::move(c));
  e.nef_dim = 1;
  e.nef_ray_count = 1;
  e.nef_ray_lifts = {unit(d + 1, d)};
  return e;
}

inline CatalogEntry make_hexagon() {
  CatalogEntry e;
  e.name = "hexagon";
  e.summary = "hexagon with two published charts of degrees 10 and 7";
  e.polytope_vertices = int_points({{0, 0}, {0, 2}, {1, 3}, {2, 0}, {3, 1}, {3, 3}});
  IntegerMatrix hexF{{0, -1, 1, 0, -1, 1}, {-1, 0, 0, 1, 1, -1}};
  e.fan_ray_order = hexF;
  {
    ChartFixture c;
    c.label = "chart1";
    c.sections = {"1 + t1", "1 + t2", "1 + t1 + t1*t2", "1 + t2 + t1*t2"};
    c.d = 2;
    c.ray_order = hexF;
    c.ideal = {"y2*y5 + y3*y6 - 1", "y1*y6 + y4*y5 - 1",
               "y1*y2*y5 + y1*y3*y6 + y3*y4*y5 - 1",
               "y1*y2*y6 + y2*y4*y5 + y3*y4*y6 - 1"};
    c.dim_degree = {{2, Int(10)}};
    e.charts.push_back(std::move(c));
  }
  {
    ChartFixture c;
    c.label = "chart2";
    c.sections = {"1 + t1*t2", "1 + t1", "1 + t2 + t1*t2", "1 + t2"};
    c.d = 2;
    // the published presentation uses the ray order (1,3,4,2,5,6)
    c.ray_order = IntegerMatrix{{0, 1, 0, -1, -1, 1}, {-1, 0, 1, 0, 1, -1}};
    c.ideal = {"y1*y4 + y2*y3 - 1", "y2*y6 + y4*y5 - 1",
               "y1*y4*y6 + y2*y3*y6 + y3*y4*y5 - 1", "y1*y6 + y3*y5 - 1"};
    c.dim_degree = {{2, Int(7)}};
    c.binary_presentation = {"y1 + y2*y3^2*y5 - 1", "y2 + y1*y4^2*y5 - 1",
                             "y3 + y1*y4*y6 - 1",   "y4 + y2*y3*y6 - 1",
                             "y5 + y1*y2*y6^2 - 1", "y6 + y3*y4*y5 - 1"};
    e.charts.push_back(std::move(c));
  }
  e.nef_dim = 4;
  e.nef_ray_count = 5;
  // the five published divisor sums (see the notes in the README about the
  // two that do not lift to rays of the computed cone)
  e.nef_ray_lifts = {units(6, {4, 5}), units(6, {0, 5}), units(6, {0, 1, 5}),
                     units(6, {1, 4}), units(6, {1, 4, 5})};
  return e;
}

inline CatalogEntry make_perm3() {
  CatalogEntry e;
  e.name = "perm3";
  e.summary = "3-dimensional permutohedron on 24 permutation points";
  std::vector<std::vector<int>> pts;
  std::vector<int> perm = {1, 2, 3, 4};
  do {
    pts.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  e.polytope_vertices = int_points(pts);
  e.nef_dim = 11;
  e.nef_ray_count = 37;
  e.nef_provenance = Provenance::Published;

  ChartFixture c;
  c.sections = {"1 + t1",
                "1 + t2",
                "1 + t3",
                "t1 + t2",
                "t2 + t3",
                "1 + t2 + t3",
                "t1 + t3 + t1*t3",
                "t1 + t2 + t1*t2 + t1*t3 + t2*t3",
                "t1 + t3 + t1*t2 + t1*t3 + t2*t3",
                "t1*t2 + t1*t3 + t2*t3 + t1*t2*t3",
                "t1 + t2 + t3 + t1*t2 + t1*t3 + t2*t3 + t3^2"};
  c.d = 3;
  c.expected_M = IntegerMatrix{
      {-1, -1, -1, -1, 1, 1, 1, 0, 0, 1, 0, 0, 0, 0},
      {0, -1, -1, 0, 0, 1, 0, -1, 1, 1, 1, -1, 0, 0},
      {0, 0, -1, -1, 1, 0, 0, -1, 1, 1, 0, 0, -1, 1},
      {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0},
      {0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0},
      {1, 1, 1, 1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 0},
      {0, 1, 1, 1, 0, 0, 0, 1, -1, -1, 0, 1, 1, 0},
      {0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0},
      {1, 1, 2, 2, -1, 0, 0, 1, 0, -1, 0, 0, 1, 0},
      {1, 2, 2, 2, 0, -1, 0, 2, 0, -1, 0, 1, 1, 0},
      {1, 2, 2, 2, -1, 0, 0, 2, 0, -1, 0, 1, 1, 0},
      {1, 2, 3, 2, -1, -1, 0, 2, -1, -2, 0, 1, 1, 0},
      {1, 2, 2, 2, 0, 0, 0, 2, 0, -1, 0, 1, 2, 0}};
  IntegerMatrix order(3, 14);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 14; ++j) order(i, j) = (*c.expected_M)(i, j);
  c.ray_order = order;
  c.saturation_in_budget = false;  // the saturation is beyond desk scale
  e.charts.push_back(std::move(c));
  return e;
}

inline CatalogEntry make_pezzotope() {
  CatalogEntry e;
  e.name = "pezzotope";
  e.summary = "toric fourfold from eleven sections; binary presentation on 15 rays";
  ChartFixture c;
  // the eleven sections are the all-ones sections of the nef-cone rays;
  // each of the last four carries the monomials of a full 3-cube face
  c.sections = {"1 + t1",
                "1 + t2",
                "1 + t2 + t1*t2",
                "1 + t3",
                "1 + t3 + t2*t3",
                "1 + t4",
                "1 + t4 + t2*t4 + t1*t2*t4",
                "1 + t3 + t4 + t2*t3 + t2*t4 + t3*t4 + t2*t3*t4",
                "1 + t3 + t4 + t2*t3 + t2*t4 + t3*t4 + t1*t2*t4 + t2*t3*t4",
                "1 + t3 + t4 + t2*t3 + t2*t4 + t3*t4 + t1*t2*t4 + t2*t3*t4 + t1*t2*t3*t4",
                "1 + t3 + t4 + t2*t3 + t2*t4 + t3*t4 + t1*t2*t3 + t1*t2*t4 + t2*t3*t4 + "
                "t1*t2*t3*t4"};
  c.d = 4;
  c.ray_order = IntegerMatrix{
      {0, 0, 0, 0, -1, 0, 0, -1, -1, 1, 0, 0, -1, -1, 0},
      {0, 0, 0, -1, 0, 0, -1, 0, 1, 0, 1, -1, 0, 0, -1},
      {0, 0, -1, 1, 0, 1, 0, 0, 0, 0, 0, 0, -1, 1, 1},
      {1, -1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0}};
  c.binary_presentation = {
      "y1 + y2*y5*y7*y13*y15 - 1",
      "y2 + y1*y4*y8*y12*y14 - 1",
      "y3 + y4*y5*y6*y14*y15 - 1",
      "y4 + y2*y3*y9*y11*y13 - 1",
      "y5 + y1*y3*y10*y11*y12 - 1",
      "y6 + y3*y7*y8*y12*y13 - 1",
      "y7 + y1*y6*y9*y11*y14 - 1",
      "y8 + y2*y6*y10*y11*y15 - 1",
      "y9 + y4*y7*y10*y12*y15 - 1",
      "y10 + y5*y8*y9*y13*y14 - 1",
      "y11 + y4*y5*y7*y8*y12*y13*y14*y15 - 1",
      "y12 + y2*y5*y6*y9*y11*y13*y14*y15 - 1",
      "y13 + y1*y4*y6*y10*y11*y12*y14*y15 - 1",
      "y14 + y2*y3*y7*y10*y11*y12*y13*y15 - 1",
      "y15 + y1*y3*y8*y9*y11*y12*y13*y14 - 1"};
  c.saturation_in_budget = false;  // deliberately not attempted
  e.charts.push_back(std::move(c));
  e.f_vector_expected = std::vector<Int>{45, 90, 60, 15};
  return e;
}

inline CatalogEntry make_p121() {
  CatalogEntry e;
  e.name = "p121";
  e.summary = "weighted projective plane; the normal fan is singular";
  e.polytope_vertices = int_points({{0, 0}, {0, 1}, {2, 0}});
  e.fan_ray_order = IntegerMatrix{{1, 0, -1}, {0, 1, -2}};
  e.chart_should_fail = true;
  e.expected_error = "NotSmoothFan";
  return e;
}

inline CatalogEntry make_diamond() {
  CatalogEntry e;
  e.name = "diamond";
  e.summary = "diamond whose class lattice has torsion";
  e.polytope_vertices = int_points({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  e.fan_ray_order = IntegerMatrix{{1, -1, -1, 1}, {1, 1, -1, -1}};
  e.chart_should_fail = true;
  e.expected_error = "Torsion";
  return e;
}

inline const std::vector<CatalogEntry>& all_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> list;
    list.push_back(make_pentagon());
    list.push_back(make_square());
    for (int d = 1; d <= 5; ++d) list.push_back(make_simplex(d));
    list.push_back(make_hexagon());
    list.push_back(make_perm3());
    list.push_back(make_pezzotope());
    list.push_back(make_p121());
    list.push_back(make_diamond());
    return list;
  }();
  return entries;
}

}  // namespace catalog_detail

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog_detail::all_entries()) names.push_back(e.name);
  return names;
}

inline const CatalogEntry& catalog_get(const std::string& name) {
  for (const auto& e : catalog_detail::all_entries())
    if (e.name == name) return e;
  std::string avail;
  for (const auto& n : catalog_names()) avail += (avail.empty() ? "" : ", ") + n;
  throw UnknownEntryError("no entry '" + name + "'; available: " + avail);
}

/// Builds the chart of a fixture (sections route, pinned ray order).
inline PositiveChart chart_from_fixture(const ChartFixture& fixture) {
  std::vector<LaurentPolynomial> fs;
  for (const auto& s : fixture.sections) fs.push_back(parse_polynomial(s, fixture.d));
  return build_from_sections(fs, fixture.ray_order);
}

/// Builds the polytope of an entry (with projection for non-full-dimensional
/// vertex sets).
inline Polytope entry_polytope(const CatalogEntry& entry) {
  if (!entry.polytope_vertices) throw InputError("entry '" + entry.name + "' has no polytope");
  return dual_convert(*entry.polytope_vertices);
}

}  // namespace poschart
