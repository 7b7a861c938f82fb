#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "poschart/groebner.hpp"

using namespace poschart;

namespace {

PositiveChart pentagon_chart() {
  IntegerMatrix F{{1, 0, -1, -1, 0}, {0, 1, 1, 0, -1}};
  return build_from_sections({parse_polynomial("1 + t1", 2), parse_polynomial("1 + t2", 2),
                              parse_polynomial("1 + t2 + t1*t2", 2)},
                             F);
}

gb::Expo all_ones(int n) { return gb::Expo(n, 1); }

std::string poly_str(const gb::Poly& p, int nvars) {
  LaurentPolynomial lp(nvars);
  for (const auto& t : p.terms) {
    IntVec e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = t.e[i];
    lp.add_term(e, t.c);
  }
  return to_string(lp, "y");
}

}  // namespace

TEST_CASE("groebner bases of simple ideals") {
  // already a reduced basis: linear with disjoint leads
  PolyIdeal plane = PolyIdeal::from_strings({"y1 + y3 - 1", "y2 + y4 - 1"}, 4);
  PolyIdeal gb1 = groebner_basis(plane);
  REQUIRE(gb1.generators.size() == 2);
  CHECK(poly_str(gb1.generators[0], 4) == "-1 + y4 + y2");
  CHECK(poly_str(gb1.generators[1], 4) == "-1 + y3 + y1");

  // x^2 - y, x^3 in degrevlex: the basis reveals x*y and y^2
  PolyIdeal twisted = PolyIdeal::from_strings({"y1^2 - y2", "y1^3"}, 2);
  PolyIdeal gb2 = groebner_basis(twisted);
  std::set<std::string> lead_strings;
  for (const auto& g : gb2.generators) {
    gb::Poly lead;
    lead.terms.push_back(g.lead());
    lead_strings.insert(poly_str(lead, 2));
  }
  CHECK(lead_strings.count("y1^2") == 1);
  CHECK(lead_strings.count("y1*y2") == 1);
  CHECK(lead_strings.count("y2^2") == 1);
  // membership: x*y in the ideal
  PolyIdeal probe = PolyIdeal::from_strings({"y1*y2"}, 2);
  CHECK(normal_form(probe.generators[0], gb2.generators, gb2.order).is_zero());

  // idempotence
  PolyIdeal gb3 = groebner_basis(gb2);
  REQUIRE(gb3.generators.size() == gb2.generators.size());
  for (size_t i = 0; i < gb2.generators.size(); ++i)
    CHECK(poly_str(gb3.generators[i], 2) == poly_str(gb2.generators[i], 2));
}

TEST_CASE("normal form is linear and kills combinations") {
  PolyIdeal ideal = PolyIdeal::from_strings(
      {"y1*y2 - y3", "y2^2 - y1", "y1^2*y3 - y2"}, 3);
  PolyIdeal basis = groebner_basis(ideal);
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> coeff(-3, 3), expo(0, 2);
  for (int iter = 0; iter < 20; ++iter) {
    // random polynomial combination of the generators reduces to zero
    std::vector<gb::Term> terms;
    for (const auto& g : ideal.generators) {
      gb::Expo e{int32_t(expo(rng)), int32_t(expo(rng)), int32_t(expo(rng))};
      Rat c(coeff(rng));
      for (const auto& t : g.terms) {
        gb::Expo sum = t.e;
        for (int i = 0; i < 3; ++i) sum[i] += e[i];
        terms.push_back({sum, t.c * c});
      }
    }
    gb::Poly combo = gb::make_poly(std::move(terms), ideal.order);
    CHECK(normal_form(combo, basis.generators, basis.order).is_zero());
  }
}

TEST_CASE("saturation basics") {
  PolyIdeal y1 = PolyIdeal::from_strings({"y1"}, 2);
  PolyIdeal sat1 = saturate(y1, gb::Expo{1, 0});
  REQUIRE(sat1.generators.size() == 1);
  CHECK(poly_str(sat1.generators[0], 2) == "1");

  PolyIdeal prod = PolyIdeal::from_strings({"y1*y2"}, 2);
  PolyIdeal sat2 = saturate(prod, gb::Expo{1, 0});
  REQUIRE(sat2.generators.size() == 1);
  CHECK(poly_str(sat2.generators[0], 2) == "y2");

  // saturation contains the ideal and is idempotent
  PolyIdeal sat3 = saturate(sat2, gb::Expo{1, 0});
  CHECK(ideal_equal(sat2, sat3));
  for (const auto& g : prod.generators)
    CHECK(normal_form(g, groebner_basis(sat2).generators, sat2.order).is_zero());
}

TEST_CASE("pentagon ideal equals its torus saturation") {
  PositiveChart chart = pentagon_chart();
  PolyIdeal ideal = chart_ideal(chart);
  PolyIdeal sat = saturate(ideal, all_ones(5));
  CHECK(ideal_equal(ideal, sat));
}

TEST_CASE("ideal equality") {
  PolyIdeal a = PolyIdeal::from_strings({"y1", "y2"}, 2);
  PolyIdeal b = PolyIdeal::from_strings({"y1 + y2", "y2"}, 2);
  CHECK(ideal_equal(a, b));
  PolyIdeal c = PolyIdeal::from_strings({"y2", "y1"}, 2);
  CHECK(ideal_equal(a, c));
  PolyIdeal d = PolyIdeal::from_strings({"y1"}, 2);
  CHECK_FALSE(ideal_equal(a, d));
}

TEST_CASE("affine dimension and degree") {
  PolyIdeal plane = PolyIdeal::from_strings({"y1 + y3 - 1", "y2 + y4 - 1"}, 4);
  auto [dim, deg] = affine_dim_degree(plane);
  CHECK(dim == 2);
  CHECK(deg == 1);

  // zero-dimensional: degree equals the count of standard monomials
  PolyIdeal points = PolyIdeal::from_strings({"y1^2 - 1", "y2^3 - y2"}, 2);
  auto [dim0, deg0] = affine_dim_degree(points);
  CHECK(dim0 == 0);
  CHECK(deg0 == 6);

  PolyIdeal unit = PolyIdeal::from_strings({"1"}, 2);
  CHECK(affine_dim_degree(unit).first == -1);

  PolyIdeal everything;
  everything.num_vars = 3;
  auto [dimall, degall] = affine_dim_degree(everything);
  CHECK(dimall == 3);
  CHECK(degall == 1);
}

TEST_CASE("hexagon charts: degrees, saturation, binary presentation") {
  IntegerMatrix hexF{{0, -1, 1, 0, -1, 1}, {-1, 0, 0, 1, 1, -1}};
  PositiveChart chart1 = build_from_sections(
      {parse_polynomial("1 + t1", 2), parse_polynomial("1 + t2", 2),
       parse_polynomial("1 + t1 + t1*t2", 2), parse_polynomial("1 + t2 + t1*t2", 2)},
      hexF);
  auto ideal1 = ideal_strings(chart1);
  CHECK(ideal1[0] == "y3*y6 + y2*y5 - 1");
  CHECK(ideal1[1] == "y4*y5 + y1*y6 - 1");

  PolyIdeal I1 = chart_ideal(chart1);
  auto [d1, deg1] = affine_dim_degree(I1);
  CHECK(d1 == 2);
  CHECK(deg1 == 10);
  CHECK(ideal_equal(I1, saturate(I1, all_ones(6))));

  // second chart: rays reordered as in the printed presentation
  IntegerMatrix hexF2{{0, 1, 0, -1, -1, 1}, {-1, 0, 1, 0, 1, -1}};
  PositiveChart chart2 = build_from_sections(
      {parse_polynomial("1 + t1*t2", 2), parse_polynomial("1 + t1", 2),
       parse_polynomial("1 + t2 + t1*t2", 2), parse_polynomial("1 + t2", 2)},
      hexF2);
  auto ideal2 = ideal_strings(chart2);
  CHECK(ideal2[0] == "y2*y3 + y1*y4 - 1");

  PolyIdeal I2 = chart_ideal(chart2);
  auto [d2, deg2] = affine_dim_degree(I2);
  CHECK(d2 == 2);
  CHECK(deg2 == 7);
  CHECK(ideal_equal(I2, saturate(I2, all_ones(6))));

  // the printed generators of the second chart, as one ideal
  PolyIdeal printed = PolyIdeal::from_strings(
      {"y1*y4 + y2*y3 - 1", "y2*y6 + y4*y5 - 1",
       "y1*y4*y6 + y2*y3*y6 + y3*y4*y5 - 1", "y1*y6 + y3*y5 - 1"},
      6);
  CHECK(ideal_equal(I2, printed));

  // binary presentation with six equations
  PolyIdeal binary = PolyIdeal::from_strings(
      {"y1 + y2*y3^2*y5 - 1", "y2 + y1*y4^2*y5 - 1", "y3 + y1*y4*y6 - 1",
       "y4 + y2*y3*y6 - 1", "y5 + y1*y2*y6^2 - 1", "y6 + y3*y4*y5 - 1"},
      6);
  CHECK(ideal_equal(I2, binary));
}
