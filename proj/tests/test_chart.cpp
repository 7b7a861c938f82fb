#include <catch2/catch_amalgamated.hpp>

#include "poschart/chart.hpp"

using namespace poschart;

namespace {

RatVec rv(std::vector<int> v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

IntegerMatrix pentagon_F() {
  return IntegerMatrix{{1, 0, -1, -1, 0}, {0, 1, 1, 0, -1}};
}

// kernel matrix with the worked grading: rows are the divisor classes
IntegerMatrix pentagon_K() {
  return IntegerMatrix{{1, 0, 0}, {-1, 0, 1}, {1, 1, -1}, {0, -1, 1}, {0, 1, 0}};
}

PositiveChart pentagon_chart() {
  std::vector<LaurentPolynomial> fs = {parse_polynomial("1 + t1", 2),
                                       parse_polynomial("1 + t2", 2),
                                       parse_polynomial("1 + t2 + t1*t2", 2)};
  return build_from_sections(fs, pentagon_F());
}

}  // namespace

TEST_CASE("laurent parsing and printing") {
  LaurentPolynomial f = parse_polynomial("1 + t2 + t1*t2", 2);
  CHECK(f.terms.size() == 3);
  CHECK(to_string(f) == "1 + t2 + t1*t2");
  CHECK(to_string(parse_polynomial("2*t1^2 - 1/2*t2", 2)) == "-1/2*t2 + 2*t1^2");
  CHECK(parse_polynomial("t1^-1 + t1", 1).terms.count(IntVec{-1}) == 1);
  CHECK_THROWS_AS(parse_polynomial("x1 + 1", 2), InputError);
  CHECK_THROWS_AS(parse_polynomial("t3", 2), InputError);

  LaurentPolynomial prod = parse_polynomial("1 + t1", 1).pow(2);
  CHECK(to_string(prod) == "1 + 2*t1 + t1^2");

  auto quot = laurent_divide(prod, parse_polynomial("1 + t1", 1));
  REQUIRE(quot.has_value());
  CHECK(to_string(*quot) == "1 + t1");
  CHECK_FALSE(laurent_divide(parse_polynomial("1 + t1 + t1^3", 1),
                             parse_polynomial("1 + t1", 1))
                  .has_value());
}

TEST_CASE("homogenization of the worked sections") {
  IntegerMatrix F = pentagon_F(), K = pentagon_K();
  CoxPolynomial h1 = homogenize(parse_polynomial("1 + t1", 2), IntVec{0, 0, 1, 1, 0}, F, K);
  CHECK(to_string(h1) == "y3*y4 + y1");
  CHECK(h1.degree == IntVec{1, 0, 0});

  CoxPolynomial h3 =
      homogenize(parse_polynomial("1 + t2 + t1*t2", 2), IntVec{0, 0, 0, 1, 1}, F, K);
  CHECK(to_string(h3) == "y4*y5 + y2*y3*y4 + y1*y2");
  CHECK(h3.degree == IntVec{0, 0, 1});

  CoxPolynomial h2 = homogenize(parse_polynomial("1 + t2", 2), IntVec{0, 0, 0, 0, 1}, F, K);
  CHECK(to_string(h2) == "y5 + y2*y3");

  CHECK(to_string(homogenize(LaurentPolynomial::constant(2, 1), IntVec(5), F, K)) == "1");

  // Newt(f) outside P_z
  CHECK_THROWS_AS(homogenize(parse_polynomial("1 + t1^2", 2), IntVec{0, 0, 1, 1, 0}, F, K),
                  NegativeExponentError);
}

TEST_CASE("sections from nef classes") {
  Polytope pent =
      dual_convert({rv({0, 0}), rv({0, 2}), rv({2, 2}), rv({2, 1}), rv({1, 0})});
  Fan fan = normal_fan(pent, pentagon_F());
  IntegerMatrix K = pentagon_K();
  auto snf = snf_invariants(K.transpose());
  REQUIRE(snf.right_inverse.has_value());
  const IntegerMatrix& S = *snf.right_inverse;

  SectionData s1 = section_from_class(IntVec{1, 0, 0}, fan, K, S);
  CHECK(to_string(s1.f) == "1 + t1");
  CHECK(s1.support == IntVec{0, 0, 1, 1, 0});

  SectionData s3 = section_from_class(IntVec{0, 0, 1}, fan, K, S);
  CHECK(to_string(s3.f) == "1 + t2 + t1*t2");
  CHECK(s3.support == IntVec{0, 0, 0, 1, 1});

  SectionData s0 = section_from_class(IntVec{0, 0, 0}, fan, K, S);
  CHECK(to_string(s0.f) == "1");
  CHECK(s0.support == IntVec{0, 0, 0, 0, 0});

  CHECK_THROWS_AS(section_from_class(IntVec{-1, 0, 0}, fan, K, S), NotNefError);
}

TEST_CASE("pentagon chart end to end") {
  PositiveChart chart = pentagon_chart();
  CHECK(chart.d == 2);
  CHECK(chart.k == 3);
  CHECK(chart.n == 5);

  IntegerMatrix expectM{{1, 0, -1, -1, 0},
                        {0, 1, 1, 0, -1},
                        {0, 0, 1, 1, 0},
                        {0, 0, 0, 0, 1},
                        {0, 0, 0, 1, 1}};
  CHECK(chart.M == expectM);

  IntegerMatrix expectMinv{{1, 0, 1, 0, 0},
                           {0, 1, -1, 0, 1},
                           {0, 0, 1, 1, -1},
                           {0, 0, 0, -1, 1},
                           {0, 0, 0, 1, 0}};
  CHECK(chart.M_inv == expectMinv);

  std::vector<std::string> ideal = ideal_strings(chart);
  REQUIRE(ideal.size() == 3);
  CHECK(ideal[0] == "y3*y4 + y1 - 1");
  CHECK(ideal[1] == "y5 + y2*y3 - 1");
  CHECK(ideal[2] == "y4*y5 + y2*y3*y4 + y1*y2 - 1");

  std::vector<std::pair<IntVec, IntVec>> expect_phi = {
      {{1, 0}, {1, 0, 0}}, {{0, 1}, {-1, 0, 1}}, {{0, 0}, {1, 1, -1}},
      {{0, 0}, {0, -1, 1}}, {{0, 0}, {0, 1, 0}}};
  REQUIRE(chart.phi.size() == 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(chart.phi[j].t_exponent == expect_phi[j].first);
    CHECK(chart.phi[j].f_powers == expect_phi[j].second);
  }

  SectionIdentityReport rep = verify_section_identities(chart);
  CHECK(rep.pullback_identity);
  CHECK(rep.section_property);
  CHECK(rep.base_locus_disjoint);

  // phi(1, 1) lands on Y: check the three equations at a rational point
  RatVec y = phi_eval(chart, {Rat(1), Rat(1)});
  CHECK(y[0] == Rat(1) / 2);          // t1/(1+t1)
  CHECK(y[2] * y[3] + y[0] == 1);     // y3 y4 + y1 = 1
  CHECK(y[4] + y[1] * y[2] == 1);     // y5 + y2 y3 = 1
  CHECK(y[3] * y[4] + y[1] * y[2] * y[3] + y[0] * y[1] == 1);
}

TEST_CASE("pentagon Newt(phi) matches the printed decomposition") {
  PositiveChart chart = pentagon_chart();
  Polytope newt = newton_polytope_of_parametrization(chart);
  // support vector of Newt(t1)+Newt(t2)+3 Newt(f1)+3 Newt(f2)+3 Newt(f3)
  CHECK(support_vector(newt, pentagon_F()) == IntVec{-1, -1, 3, 7, 7});
  CHECK(fans_equal(normal_fan(newt), chart.fan));
}

TEST_CASE("product-of-segments charts") {
  IntegerMatrix sqF{{1, 0, -1, 0}, {0, 1, 0, -1}};
  PositiveChart chart = build_from_sections(
      {parse_polynomial("1 + t1", 2), parse_polynomial("1 + t2", 2)}, sqF);
  auto ideal = ideal_strings(chart);
  CHECK(ideal[0] == "y3 + y1 - 1");
  CHECK(ideal[1] == "y4 + y2 - 1");
  verify_section_identities(chart);

  // the affine plane is recovered for every nonnegative unimodular exponent
  // matrix; phi does not depend on it
  PositiveChart twisted = build_from_sections(
      {parse_polynomial("1 + t1", 2).pow(2) * parse_polynomial("1 + t2", 2),
       parse_polynomial("1 + t1", 2) * parse_polynomial("1 + t2", 2)},
      sqF);
  verify_section_identities(twisted);
  for (int j = 0; j < 4; ++j) CHECK(twisted.phi[j].t_exponent == chart.phi[j].t_exponent);
  IntegerMatrix expectK{{1, -1}, {-1, 2}, {1, -1}, {-1, 2}};
  CHECK(twisted.K == expectK);

  Polytope rect = newton_polytope_of_parametrization(twisted);
  CHECK(rect.facet_count() == 4);
}

TEST_CASE("simplex charts give the standard parametrization") {
  for (int d = 1; d <= 5; ++d) {
    std::vector<RatVec> verts;
    verts.push_back(RatVec(d));
    for (int i = 0; i < d; ++i) {
      RatVec e(d);
      e[i] = 1;
      verts.push_back(e);
    }
    IntegerMatrix order(d, d + 1);
    for (int i = 0; i < d; ++i) order(i, i) = 1;
    for (int i = 0; i < d; ++i) order(i, d) = -1;
    PositiveChart chart = build_from_polytope(dual_convert(verts), order);
    CHECK(chart.k == 1);
    // single equation y1 + ... + y_{d+1} = 1
    auto ideal = ideal_strings(chart);
    REQUIRE(ideal.size() == 1);
    LaurentPolynomial sum(d + 1);
    for (int j = 0; j < d + 1; ++j) {
      IntVec e(d + 1);
      e[j] = 1;
      sum.add_term(e, Rat(1));
    }
    CHECK(to_string(sum, "y") + " - 1" == ideal[0]);
    // phi_i = t_i / (1 + t_1 + ... + t_d), last component 1 / (...)
    for (int j = 0; j < d; ++j) {
      IntVec e(d);
      e[j] = 1;
      CHECK(chart.phi[j].t_exponent == e);
      CHECK(chart.phi[j].f_powers == IntVec{1});
    }
    CHECK(chart.phi[d].t_exponent == IntVec(d));
    CHECK(chart.phi[d].f_powers == IntVec{1});
    verify_section_identities(chart);
  }
}

TEST_CASE("assumption violations are reported by name") {
  // 1-dimensional sum in two variables
  CHECK_THROWS_AS(build_from_sections({parse_polynomial("1 + t1", 2)}),
                  AssumptionFacetCountError);
  // facet count: this pair spans a pentagon-like sum with 5 facets, not 4
  CHECK_THROWS_AS(
      build_from_sections({parse_polynomial("1 + t1", 2),
                           parse_polynomial("1 + t2 + t1*t2^2", 2)}),
      AssumptionFacetCountError);
  // negative coefficient
  CHECK_THROWS_AS(build_from_sections({parse_polynomial("1 - t1", 2),
                                       parse_polynomial("1 + t2", 2)}),
                  AssumptionPositivityError);
  // non-unimodular M: the diagonal segments span the torsion diamond fan
  CHECK_THROWS_AS(build_from_sections({parse_polynomial("1 + t1*t2", 2),
                                       parse_polynomial("1 + t1*t2^-1", 2)}),
                  AssumptionUnimodularError);

  // singular fan refusal with the offending cone in the message
  Polytope p121 = dual_convert({rv({0, 0}), rv({0, 1}), rv({2, 0})});
  CHECK_THROWS_AS(build_from_polytope(p121), NotSmoothFanError);
  // torsion refusal
  Polytope diamond = dual_convert({rv({1, 0}), rv({0, 1}), rv({-1, 0}), rv({0, -1})});
  CHECK_THROWS_AS(build_from_polytope(diamond), TorsionError);
}

TEST_CASE("chart from the pentagon polytope equals the section chart") {
  Polytope pent =
      dual_convert({rv({0, 0}), rv({0, 2}), rv({2, 2}), rv({2, 1}), rv({1, 0})});
  PositiveChart from_poly = build_from_polytope(pent, pentagon_F());
  PositiveChart from_sections = pentagon_chart();
  CHECK(from_poly.F == from_sections.F);
  // the nef cone is smooth, so the section classes are its three rays and
  // the resulting sections agree up to order
  std::set<std::string> a, b;
  for (const auto& s : from_poly.sections) a.insert(to_string(s.f));
  for (const auto& s : from_sections.sections) b.insert(to_string(s.f));
  CHECK(a == b);
  verify_section_identities(from_poly);
}
