// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "poschart/catalog.hpp"
#include "poschart/groebner.hpp"
#include "poschart/json_io.hpp"

using namespace poschart;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;
  double seconds = 0.0;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::vector<Criterion> results;

template <typename Fn>
void run_criterion(int number, const std::string& name, Fn&& body) {
  Criterion c;
  c.number = number;
  c.name = name;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  results.push_back(std::move(c));
}

IntVec apply_kt(const IntegerMatrix& k, const IntVec& v) {
  IntVec c(k.cols());
  for (int j = 0; j < k.cols(); ++j)
    for (int i = 0; i < k.rows(); ++i) c[j] += k(i, j) * v[i];
  return c;
}

std::set<IntVec> column_set(const IntegerMatrix& m) {
  std::set<IntVec> s;
  for (int j = 0; j < m.cols(); ++j) s.insert(m.col(j));
  return s;
}

std::set<std::string> canonical_ideal(const std::vector<std::string>& gens, int nvars) {
  std::set<std::string> out;
  for (const auto& g : gens) out.insert(to_string(parse_polynomial(g, nvars, "y"), "y"));
  return out;
}

Rat rq(long p, long q = 1) { return Rat(p) / Rat(q); }

struct NefData {
  Fan fan;
  IntegerMatrix K, S;
  Cone nef;
};

NefData nef_of_entry(const CatalogEntry& entry) {
  Polytope p = entry_polytope(entry);
  Fan fan = normal_fan(p, entry.fan_ray_order);
  IntegerMatrix K = gale_dual(fan.rays);
  IntegerMatrix S = *snf_invariants(K.transpose()).right_inverse;
  return {fan, K, S, nef_cone(fan, K, S)};
}

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
  const ChartFixture& fx = catalog_get("pentagon").charts[0];
  PositiveChart chart = chart_from_fixture(fx);
  c.require(chart.M == *fx.expected_M, "M differs from the worked matrix");
  std::vector<std::string> ideal = ideal_strings(chart);
  c.require(ideal == fx.ideal, "ideal strings are not string-exact");
  c.require(chart.phi.size() == 5, "phi has five components");
  for (int j = 0; j < 5; ++j) {
    c.require(chart.phi[j].t_exponent == fx.expected_phi[j].first,
              "phi exponent " + std::to_string(j + 1));
    c.require(chart.phi[j].f_powers == fx.expected_phi[j].second,
              "phi powers " + std::to_string(j + 1));
  }
}

void criterion2(Criterion& c) {
  const CatalogEntry& entry = catalog_get("pentagon");
  NefData nd = nef_of_entry(entry);
  c.require(nd.nef.rays->cols() == 3, "nef cone has three rays");
  std::set<IntVec> computed = column_set(*nd.nef.rays);
  std::set<IntVec> lifted;
  for (const IntVec& v : entry.nef_ray_lifts) lifted.insert(apply_kt(nd.K, v));
  c.require(computed == lifted, "nef rays equal the classes of the listed divisors");
}

void criterion3(Criterion& c) {
  const CatalogEntry& entry = catalog_get("hexagon");
  NefData nd = nef_of_entry(entry);
  c.require(nd.nef.rays->cols() == 5, "nef cone has five rays");
  {
    std::set<IntVec> computed = column_set(*nd.nef.rays);
    int matched = 0;
    for (const IntVec& v : entry.nef_ray_lifts)
      if (computed.count(apply_kt(nd.K, v))) ++matched;
    c.require(matched == 5,
              "only " + std::to_string(matched) +
                  "/5 published divisor sums lift to computed rays "
                  "(the published list is inconsistent with the published ray "
                  "matrix; see the project notes)");
  }
  for (const ChartFixture& fx : entry.charts) {
    PositiveChart chart = chart_from_fixture(fx);
    c.require(canonical_ideal(ideal_strings(chart), chart.n) ==
                  canonical_ideal(fx.ideal, chart.n),
              fx.label + ": printed ideal reproduced");
    PolyIdeal ideal = chart_ideal(chart);
    auto [dim, deg] = affine_dim_degree(ideal);
    c.require(dim == fx.dim_degree->first && deg == fx.dim_degree->second,
              fx.label + ": dimension and degree (" + std::to_string(dim) + ", " + deg.str() +
                  ")");
    PolyIdeal sat = saturate(ideal, gb::Expo(chart.n, 1));
    c.require(ideal_equal(ideal, sat), fx.label + ": saturation equals the input ideal");
    if (!fx.binary_presentation.empty()) {
      PolyIdeal binary = PolyIdeal::from_strings(fx.binary_presentation, chart.n);
      c.require(ideal_equal(ideal, binary), fx.label + ": six-equation binary presentation");
    }
  }
}

void criterion4(Criterion& c) {
  IntegerMatrix sqF{{1, 0, -1, 0}, {0, 1, 0, -1}};
  PolyIdeal plane = PolyIdeal::from_strings({"y1 + y3 - 1", "y2 + y4 - 1"}, 4);
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> pick(0, 1), reps(1, 3);
  LaurentPolynomial u = parse_polynomial("1 + t1", 2);
  LaurentPolynomial v = parse_polynomial("1 + t2", 2);
  int built = 0;
  while (built < 10) {
    // random nonnegative unimodular E as a word in the elementary matrices
    Int a = 1, b = 0, cc = 0, dd = 1;
    int len = reps(rng) + reps(rng);
    for (int w = 0; w < len; ++w) {
      if (pick(rng)) {  // left multiply by [[1,1],[0,1]]
        a += cc;
        b += dd;
      } else {  // [[1,0],[1,1]]
        cc += a;
        dd += b;
      }
    }
    LaurentPolynomial f1 = u.pow(a) * v.pow(b);
    LaurentPolynomial f2 = u.pow(cc) * v.pow(dd);
    PositiveChart chart = build_from_sections({f1, f2}, sqF);
    PolyIdeal ideal = chart_ideal(chart);
    bool equal = ideal_equal(ideal, plane);
    std::ostringstream label;
    label << "E = [[" << a << "," << b << "],[" << cc << "," << dd << "]]";
    c.require(equal, label.str() + ": ideal equals the affine plane");
    ++built;
  }

  // moment map of the twisted chart with exponent matrix [[2,1],[1,1]]
  PositiveChart chart =
      build_from_sections({u.pow(2) * v, u * v}, sqF);
  // expected printed components: per (component, section, monomial) -> coeff
  struct Term { int j; int i; std::vector<long> eta; long coeff; };
  std::vector<Term> printed = {
      {0, 0, {2, 1, 0, 0}, 2}, {0, 1, {1, 1, 0, 0}, 1}, {0, 0, {2, 0, 0, 1}, 2},
      {0, 1, {1, 0, 0, 1}, 1}, {0, 0, {1, 1, 1, 0}, 2}, {0, 0, {1, 0, 1, 1}, 2},
      {1, 0, {2, 1, 0, 0}, 1}, {1, 1, {1, 1, 0, 0}, 1}, {1, 0, {1, 1, 1, 0}, 2},
      {1, 0, {0, 1, 2, 0}, 1}, {1, 1, {0, 1, 1, 0}, 1},
      {2, 0, {1, 1, 1, 0}, 2}, {2, 0, {1, 0, 1, 1}, 2}, {2, 0, {0, 1, 2, 0}, 2},
      {2, 1, {0, 1, 1, 0}, 1}, {2, 0, {0, 0, 2, 1}, 2}, {2, 1, {0, 0, 1, 1}, 1},
      {3, 0, {2, 0, 0, 1}, 1}, {3, 1, {1, 0, 0, 1}, 1}, {3, 0, {1, 0, 1, 1}, 2},
      {3, 0, {0, 0, 2, 1}, 1}, {3, 1, {0, 0, 1, 1}, 1}};
  std::map<std::tuple<int, int, std::vector<long>>, Rat> expected, actual;
  for (const auto& t : printed) expected[{t.j, t.i, t.eta}] += Rat(t.coeff);
  for (const MomentTerm& t : moment_map_terms(chart)) {
    std::vector<long> eta;
    for (const Int& e : t.eta) eta.push_back(e.convert_to<long>());
    for (int j = 0; j < chart.n; ++j) {
      Rat contrib = t.coeff * Rat(t.eta[j]);
      if (contrib != 0) actual[{j, t.section, eta}] += contrib;
    }
  }
  c.require(expected == actual, "moment map matches the four printed components");
}

void criterion5(Criterion& c) {
  const ChartFixture& fx = catalog_get("pezzotope").charts[0];
  std::vector<LaurentPolynomial> fs;
  for (const auto& s : fx.sections) fs.push_back(parse_polynomial(s, fx.d));
  std::vector<std::pair<Polytope, Rat>> parts;
  for (const auto& f : fs) parts.emplace_back(f.newton_polytope(), Rat(1));
  Polytope sum = minkowski_weighted(parts);
  FVector fv = f_vector(sum);
  c.require(fv.counts == *catalog_get("pezzotope").f_vector_expected,
            "f-vector of the Minkowski sum is (45,90,60,15)");

  PositiveChart chart = chart_from_fixture(fx);
  c.require(chart.F == *fx.ray_order, "ray matrix matches the published 4x15 matrix");
  c.require(abs(det_bareiss(chart.M)) == 1, "M is unimodular");
  verify_section_identities(chart);  // throws on any identity failure
  c.note("11 section identities hold symbolically");
  for (const auto& rel : fx.binary_presentation) {
    LaurentPolynomial p = parse_polynomial(rel, chart.n, "y");
    std::vector<std::pair<Rat, IntVec>> terms;
    for (const auto& [e, co] : p.terms) terms.emplace_back(co, e);
    c.require(pullback_equals(chart, terms, LaurentPolynomial::constant(chart.d, 0)),
              "binary relation vanishes on phi: " + rel);
  }
  c.note("saturation deliberately not attempted (beyond desk scale)");
  c.require(c.seconds < 300.0, "runtime under 5 minutes");
}

void criterion6(Criterion& c) {
  const CatalogEntry& entry = catalog_get("perm3");
  NefData nd = nef_of_entry(entry);
  c.require(nd.nef.ambient_dim == 11, "nef cone dimension 11");
  c.require(nd.nef.rays->cols() == 37, "nef cone has 37 rays");

  const ChartFixture& fx = entry.charts[0];
  PositiveChart chart = chart_from_fixture(fx);
  c.require(chart.M == *fx.expected_M, "M matches the published 14x14 matrix");
  verify_section_identities(chart);
  c.note("section identities hold symbolically");

  PolyIdeal ideal = chart_ideal(chart);
  ideal.budget.max_pairs = 1000;  // desk-scale budget; the saturation blows past it
  bool limited = false;
  try {
    saturate(ideal, gb::Expo(chart.n, 1));
  } catch (const ResourceLimitError&) {
    limited = true;
  }
  c.require(limited, "saturation hits the resource limit as expected");
}

void criterion7(Criterion& c) {
  // pentagon: 20 generic rational x, always two stable clusters
  PositiveChart pent = chart_from_fixture(catalog_get("pentagon").charts[0]);
  std::mt19937 rng(90210);
  // a fine rational grid keeps the draws clear of the discriminant locus,
  // where the generic count statement does not apply
  std::uniform_int_distribution<int> num(1, 999), den(1, 97), sign(0, 1);
  int trials = 0;
  while (trials < 20) {
    RatVec x(5);
    for (auto& q : x) q = Rat((sign(rng) ? 1 : -1) * num(rng)) / Rat(den(rng));
    ScatteringProblem prob{pent, x, 2};
    bool generic = true;
    for (const Rat& si : prob.induced_s())
      if (si == 0) generic = false;
    if (!generic) continue;
    ++trials;
    ScatteringResult res = scattering_solve(prob);
    c.require(res.count == 2, "pentagon trial " + std::to_string(trials) + " has two clusters");
    for (const auto& sol : res.solutions)
      c.require(sol.residual < 1e-8, "pentagon residual below 1e-8");
  }

  // product of segments: closed form to 1e-10
  PositiveChart square = chart_from_fixture(catalog_get("square").charts[0]);
  ScatteringProblem sq{square, {rq(3), rq(5, 2), rq(1), rq(7, 3)}, 1};
  ScatteringResult sres = scattering_solve(sq);
  c.require(sres.count == 1, "product chart has one solution");
  {
    double x1 = 3, x2 = 2.5, x3 = 1, x4 = 7.0 / 3;
    const auto& y = sres.solutions[0].y;
    c.require(std::abs(y[0] - x1 / (x1 + x3)) < 1e-10 &&
                  std::abs(y[1] - x2 / (x2 + x4)) < 1e-10 &&
                  std::abs(y[2] - x3 / (x1 + x3)) < 1e-10 &&
                  std::abs(y[3] - x4 / (x2 + x4)) < 1e-10,
              "product chart closed form to 1e-10");
  }

  PositiveChart seg = chart_from_fixture(catalog_get("simplex1").charts[0]);
  ScatteringProblem sp{seg, {rq(4), rq(9, 2)}, 1};
  ScatteringResult pres = scattering_solve(sp);
  c.require(pres.count == 1, "segment chart has one solution");
  {
    double x1 = 4, x2 = 4.5;
    const auto& y = pres.solutions[0].y;
    c.require(std::abs(y[0] - x1 / (x1 + x2)) < 1e-10 &&
                  std::abs(y[1] - x2 / (x1 + x2)) < 1e-10,
              "segment chart closed form to 1e-10");
  }
}

void criterion8(Criterion& c) {
  for (int d = 1; d <= 5; ++d) {
    const CatalogEntry& entry = catalog_get("simplex" + std::to_string(d));
    PositiveChart chart = build_from_polytope(entry_polytope(entry), entry.fan_ray_order);
    const ChartFixture& fx = entry.charts[0];
    c.require(canonical_ideal(ideal_strings(chart), chart.n) ==
                  canonical_ideal(fx.ideal, chart.n),
              "simplex" + std::to_string(d) + ": single equation sum(y) = 1");
    bool phi_ok = chart.phi.size() == fx.expected_phi.size();
    for (size_t j = 0; phi_ok && j < chart.phi.size(); ++j)
      phi_ok = chart.phi[j].t_exponent == fx.expected_phi[j].first &&
               chart.phi[j].f_powers == fx.expected_phi[j].second;
    c.require(phi_ok, "simplex" + std::to_string(d) + ": standard parametrization");
  }
}

void criterion9(Criterion& c) {
  std::vector<std::pair<std::string, PositiveChart>> charts;
  for (const auto& name :
       {"pentagon", "square", "simplex1", "simplex2", "simplex3", "simplex4", "simplex5",
        "hexagon", "perm3", "pezzotope"}) {
    const CatalogEntry& entry = catalog_get(name);
    for (const auto& fx : entry.charts)
      charts.emplace_back(entry.name + "/" + fx.label, chart_from_fixture(fx));
  }
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> num(1, 9), den(1, 7), jitter(-2, 2);

  for (auto& [label, chart] : charts) {
    // block identities, symbolic identities, base locus
    verify_section_identities(chart);

    // homogenization exponents and grading
    for (const auto& s : chart.sections) {
      c.require(s.homog.homogeneous_for(chart.K), label + ": grading");
      for (const auto& [e, co] : s.homog.terms)
        for (const Int& x : e) c.require(x >= 0, label + ": nonnegative exponents");
    }

    // K^t mu = s at 100 random rational points, exactly
    RatVec s(chart.k);
    for (int i = 0; i < chart.k; ++i) s[i] = rq(i + 1, 1) + rq(1, i + 2);
    MomentSpec spec(chart, s);
    bool plane = true;
    std::set<RatVec> images;
    std::set<RatVec> sample_points;
    for (int iter = 0; iter < 100 && plane; ++iter) {
      RatVec t(chart.d);
      for (int r = 0; r < chart.d; ++r) t[r] = rq(num(rng), den(rng));
      plane = moment_plane_check(spec, t);
      if (sample_points.insert(t).second && int(images.size()) < 50)
        images.insert(moment_eval(spec, t));
    }
    c.require(plane, label + ": K^t mu = s at 100 rational points");
    c.require(images.size() == std::min<size_t>(sample_points.size(), 50),
              label + ": moment injectivity on 50 samples");

    // support-vector tightness on 50 deformation-cone points
    Cone def = deformation_cone(chart.fan);
    IntVec ap = support_vector(chart.P, chart.F);
    const IntegerMatrix& W = *def.ineqs;
    int accepted = 0;
    int guard = 0;
    while (accepted < 50 && guard < 4000) {
      ++guard;
      IntVec z(chart.n);
      for (int j = 0; j < chart.n; ++j) z[j] = 8 * ap[j] + jitter(rng);
      bool inside = true;
      for (int i = 0; i < W.rows() && inside; ++i) {
        Int acc = 0;
        for (int j = 0; j < chart.n; ++j) acc += W(i, j) * z[j];
        if (acc < 0) inside = false;
      }
      if (!inside) continue;
      ++accepted;
      RatVec zr(chart.n);
      for (int j = 0; j < chart.n; ++j) zr[j] = Rat(z[j]);
      Polytope pz = dual_convert(chart.F, zr);
      if (support_vector(pz, chart.F) != z) {
        c.require(false, label + ": tight support vector for a deformation-cone point");
        break;
      }
    }
    c.require(accepted == 50, label + ": sampled 50 deformation-cone points");
  }

  // dual conversion against the brute-force oracle
  std::uniform_int_distribution<int> dd(2, 3), nn(3, 8), entry_dist(-3, 3), off(0, 4);
  int tested = 0;
  while (tested < 100) {
    int d = dd(rng), n = nn(rng);
    IntegerMatrix f(d, n);
    RatVec z(n);
    for (int j = 0; j < n; ++j) {
      IntVec col(d);
      bool zero = true;
      for (int i = 0; i < d; ++i) {
        col[i] = entry_dist(rng);
        if (col[i] != 0) zero = false;
      }
      if (zero) col[0] = 1;
      col = primitive(col);
      for (int i = 0; i < d; ++i) f(i, j) = col[i];
      z[j] = Rat(off(rng));
    }
    try {
      Polytope p = dual_convert(f, z);
      // oracle: solve all d-subsets, filter feasibility
      std::set<RatVec> expect;
      std::vector<int> sel(d);
      std::function<void(int, int)> rec = [&](int start, int kk) {
        if (kk == d) {
          RationalMatrix a(d, d);
          RatVec b(d);
          for (int i = 0; i < d; ++i) {
            for (int r = 0; r < d; ++r) a(i, r) = Rat(f(r, sel[i]));
            b[i] = -z[sel[i]];
          }
          if (rank(a) != d) return;
          auto x = solve(a, b);
          if (!x) return;
          for (int j = 0; j < n; ++j) {
            Rat vquery = z[j];
            for (int r = 0; r < d; ++r) vquery += Rat(f(r, j)) * (*x)[r];
            if (vquery < 0) return;
          }
          expect.insert(*x);
          return;
        }
        for (int j = start; j < n; ++j) {
          sel[kk] = j;
          rec(j + 1, kk + 1);
        }
      };
      rec(0, 0);
      std::set<RatVec> got(p.verts.begin(), p.verts.end());
      if (got != expect) {
        c.require(false, "dual conversion matches the subset oracle");
        break;
      }
      ++tested;
    } catch (const UnboundedError&) {
    } catch (const EmptyError&) {
    }
  }
  c.require(tested == 100, "100 random dual-conversion instances");
}

}  // namespace

int main() {
  run_criterion(1, "pentagon end-to-end (M, ideal, phi; < 1 s)", criterion1);
  run_criterion(2, "pentagon nef rays via divisor lifts", criterion2);
  run_criterion(3, "hexagon nef rays, charts, degrees, saturation, binary presentation",
                criterion3);
  run_criterion(4, "product-of-lines family and printed moment map", criterion4);
  run_criterion(5, "pezzotope f-vector, ray matrix, identities, binary relations", criterion5);
  run_criterion(6, "permutohedron nef cone, published M, saturation budget", criterion6);
  run_criterion(7, "scattering counts (pentagon 2, product 1, segment 1)", criterion7);
  run_criterion(8, "simplices d <= 5: hyperplane chart and parametrization", criterion8);
  run_criterion(9, "property suites on every catalog chart", criterion9);

  // post-hoc runtime requirements
  for (auto& c : results) {
    if (c.number == 1 && c.seconds >= 1.0) {
      c.pass = false;
      c.notes.push_back("FAILED: runtime " + std::to_string(c.seconds) + " s exceeds 1 s");
    }
    if (c.number == 3 && c.seconds >= 60.0) {
      c.pass = false;
      c.notes.push_back("FAILED: runtime exceeds 60 s");
    }
    if (c.number == 5 && c.seconds >= 300.0) {
      c.pass = false;
      c.notes.push_back("FAILED: runtime exceeds 5 min");
    }
  }

  bool all = true;
  for (const auto& c : results) {
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.number << "  " << c.name << "  ("
         << c.seconds << " s)";
    std::cout << line.str() << "\n";
    for (const auto& n : c.notes)
      if (!c.pass || n.rfind("FAILED", 0) != 0) std::cout << "      " << n << "\n";
    all = all && c.pass;
  }
  std::cout << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
  return all ? 0 : 1;
}
