#pragma once

#include "poschart/cox.hpp"
#include "poschart/fan.hpp"

namespace poschart {

/// One defining section: the Laurent polynomial, its tight support vector,
/// its class in the chart's internal basis, and its homogenization.
struct Section {
  LaurentPolynomial f;
  IntVec support;      // a_i
  IntVec klass;        // K^t a_i (standard basis vector e_i for valid charts)
  CoxPolynomial homog; // f_i^h
  Polytope newt;       // Newt(f_i), ambient coordinates
};

/// phi_i = t^{t_exponent} * prod_l f_l^{-f_powers[l]}.
struct PhiComponent {
  IntVec t_exponent;  // row of B
  IntVec f_powers;    // row of K
};

struct PositiveChart {
  int d = 0, n = 0, k = 0;
  IntegerMatrix F;      // d x n
  IntegerMatrix M;      // rows (F; a_1; ...; a_k)
  IntegerMatrix M_inv;  // columns (B | K)
  IntegerMatrix B;      // n x d
  IntegerMatrix K;      // n x k
  std::vector<Section> sections;
  std::vector<PhiComponent> phi;
  Polytope P;  // sum of the Newton polytopes
  Fan fan;
};

namespace detail {

inline IntVec mat_kt(const IntegerMatrix& k, const IntVec& v) {
  IntVec c(k.cols());
  for (int j = 0; j < k.cols(); ++j) {
    Int acc = 0;
    for (int i = 0; i < k.rows(); ++i) acc += k(i, j) * v[i];
    c[j] = acc;
  }
  return c;
}

inline void check_block_identities(const PositiveChart& chart) {
  IntegerMatrix A(chart.k, chart.n);
  for (int i = 0; i < chart.k; ++i)
    for (int j = 0; j < chart.n; ++j) A(i, j) = chart.M(chart.d + i, j);
  const IntegerMatrix& F = chart.F;
  const IntegerMatrix& B = chart.B;
  const IntegerMatrix& K = chart.K;
  if (!(F * B).is_identity()) throw IdentityFailedError("FB = id");
  if (!(F * K).is_zero()) throw IdentityFailedError("FK = 0");
  if (!(A * B).is_zero()) throw IdentityFailedError("AB = 0");
  if (!(A * K).is_identity()) throw IdentityFailedError("AK = id");
  IntegerMatrix bfka = B * F;
  IntegerMatrix ka = K * A;
  for (int i = 0; i < chart.n; ++i)
    for (int j = 0; j < chart.n; ++j)
      if (bfka(i, j) + ka(i, j) != (i == j ? 1 : 0))
        throw IdentityFailedError("BF + KA = id");
}

}  // namespace detail

/// Product of section powers  prod_l f_l^{p_l}  for nonnegative p.
inline LaurentPolynomial power_product(const PositiveChart& chart, const IntVec& p) {
  LaurentPolynomial r = LaurentPolynomial::constant(chart.d, 1);
  for (int l = 0; l < chart.k; ++l) {
    if (p[l] < 0) throw InputError("negative power in section product");
    for (Int q = 0; q < p[l]; ++q) r = r * chart.sections[l].f;
  }
  return r;
}

/// Pulls back a y-expression Sum c_m y^{e_m} (integer exponents of either
/// sign) along phi and compares with rhs as rational functions in t. The
/// comparison is an exact Laurent-polynomial identity after clearing all
/// section denominators.
inline bool pullback_equals(const PositiveChart& chart,
                            const std::vector<std::pair<Rat, IntVec>>& yterms,
                            const LaurentPolynomial& rhs) {
  std::vector<IntVec> vs, ws;
  for (const auto& [c, e] : yterms) {
    IntVec v(chart.d), w(chart.k);
    for (int j = 0; j < chart.n; ++j) {
      if (e[j] == 0) continue;
      for (int i = 0; i < chart.d; ++i) v[i] += e[j] * chart.B(j, i);
      for (int l = 0; l < chart.k; ++l) w[l] += e[j] * chart.K(j, l);
    }
    vs.push_back(std::move(v));
    ws.push_back(std::move(w));
  }
  IntVec cap(chart.k);
  for (const auto& w : ws)
    for (int l = 0; l < chart.k; ++l) cap[l] = std::max(cap[l], w[l]);
  for (int l = 0; l < chart.k; ++l) cap[l] = std::max(cap[l], Int(0));
  LaurentPolynomial lhs(chart.d);
  for (size_t m = 0; m < yterms.size(); ++m) {
    IntVec rest(chart.k);
    for (int l = 0; l < chart.k; ++l) rest[l] = cap[l] - ws[m][l];
    LaurentPolynomial term =
        LaurentPolynomial::monomial(vs[m], yterms[m].first) * power_product(chart, rest);
    lhs = lhs + term;
  }
  LaurentPolynomial cleared_rhs = rhs * power_product(chart, cap);
  return (lhs - cleared_rhs).is_zero();
}

/// Exact rational evaluation of phi at a torus point.
inline RatVec phi_eval(const PositiveChart& chart, const RatVec& t) {
  for (const Rat& x : t)
    if (x == 0) throw PoleError("phi needs a point of the torus");
  RatVec fvals(chart.k);
  for (int l = 0; l < chart.k; ++l) {
    fvals[l] = chart.sections[l].f.eval(t);
    if (fvals[l] == 0) throw PoleError("section " + std::to_string(l + 1) + " vanishes at t");
  }
  RatVec y(chart.n);
  for (int j = 0; j < chart.n; ++j) {
    Rat val = LaurentPolynomial::monomial(chart.phi[j].t_exponent).eval(t);
    for (int l = 0; l < chart.k; ++l) {
      Int p = chart.phi[j].f_powers[l];
      Int a = abs(p);
      Rat fp(1);
      for (Int q = 0; q < a; ++q) fp *= fvals[l];
      val *= (p > 0) ? Rat(1) / fp : fp;
    }
    y[j] = val;
  }
  return y;
}

/// Section of a nef class c: the lift S c, translated so the lex-smallest
/// vertex sits at the origin and re-tightened, with the all-ones section on
/// the lattice points of its polytope.
struct SectionData {
  Polytope polytope;
  IntVec support;
  LaurentPolynomial f;
};

inline SectionData section_from_class(const IntVec& c, const Fan& fan, const IntegerMatrix& K,
                                      const IntegerMatrix& S,
                                      const Cone* deformation = nullptr) {
  int d = fan.dim, n = fan.rays.cols();
  IntVec z(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < K.cols(); ++j) z[i] += S(i, j) * c[j];
  Cone def = deformation ? *deformation : deformation_cone(fan);
  const IntegerMatrix& w = *def.ineqs;
  for (int i = 0; i < w.rows(); ++i) {
    Int acc = 0;
    for (int j = 0; j < n; ++j) acc += w(i, j) * z[j];
    if (acc < 0)
      throw NotNefError("class violates deformation inequality " + std::to_string(i + 1));
  }
  Polytope pz = dual_convert(fan.rays, z);
  RatVec shift = pz.lex_min_vertex();
  for (const Rat& x : shift)
    if (!is_integer(x)) throw NotLatticeError("lift has a non-integral vertex");
  std::vector<RatVec> shifted;
  for (const auto& v : pz.verts) {
    RatVec s(d);
    for (int i = 0; i < d; ++i) s[i] = v[i] - shift[i];
    shifted.push_back(std::move(s));
  }
  IntVec a(n);
  for (int j = 0; j < n; ++j) {
    Rat mn;
    bool started = false;
    for (const auto& v : shifted) {
      Rat val;
      for (int i = 0; i < d; ++i) val += Rat(fan.rays(i, j)) * v[i];
      if (!started || val < mn) mn = val, started = true;
    }
    if (!is_integer(mn)) throw NotLatticeError("support value not integral");
    a[j] = -num(mn);
  }
  SectionData out;
  out.support = a;
  out.polytope = dual_convert(fan.rays, a);
  LaurentPolynomial f(d);
  for (const IntVec& m : lattice_points(out.polytope)) f.add_term(m, Rat(1));
  if (f.is_zero()) throw IdentityFailedError("section polytope has no lattice points");
  out.f = f;
  return out;
}

/// Core assembly from k Laurent polynomials. Checks the facet-count and
/// unimodularity assumptions and nonnegativity of coefficients, builds M,
/// its inverse blocks, the homogenized ideal generators and phi.
inline PositiveChart build_from_sections(const std::vector<LaurentPolynomial>& fs,
                                         const std::optional<IntegerMatrix>& ray_order = std::nullopt) {
  if (fs.empty()) throw InputError("no sections given");
  int d = fs[0].nvars;
  int k = int(fs.size());
  for (const auto& f : fs) {
    if (f.nvars != d) throw InputError("sections in different variable counts");
    if (f.is_zero()) throw InputError("zero section");
  }

  for (int i = 0; i < k; ++i)
    for (const auto& [e, c] : fs[i].terms)
      if (c < 0)
        throw AssumptionPositivityError("section " + std::to_string(i + 1) +
                                        " has a negative coefficient");

  std::vector<Polytope> parts;
  for (const auto& f : fs) parts.push_back(f.newton_polytope());
  std::vector<std::pair<Polytope, Rat>> weighted;
  for (const auto& p : parts) weighted.emplace_back(p, Rat(1));
  Polytope sum = minkowski_weighted(weighted);
  if (sum.lat_dim != d)
    throw AssumptionFacetCountError("sum of Newton polytopes is " +
                                    std::to_string(sum.lat_dim) + "-dimensional, expected " +
                                    std::to_string(d));

  PositiveChart chart;
  chart.d = d;
  chart.k = k;
  chart.P = sum;
  chart.fan = normal_fan(sum, ray_order);
  chart.F = chart.fan.rays;
  chart.n = chart.F.cols();
  if (chart.n != d + k)
    throw AssumptionFacetCountError("sum of Newton polytopes has " + std::to_string(chart.n) +
                                    " facets, expected d + k = " + std::to_string(d + k));

  // vertex coefficients must be present and positive
  for (int i = 0; i < k; ++i)
    for (const auto& v : parts[i].verts) {
      IntVec e(d);
      for (int c = 0; c < d; ++c) e[c] = num(v[c]);
      auto it = fs[i].terms.find(e);
      if (it == fs[i].terms.end() || it->second <= 0)
        throw AssumptionPositivityError("section " + std::to_string(i + 1) +
                                        " has a non-positive vertex coefficient");
    }

  chart.M = IntegerMatrix(chart.n, chart.n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < chart.n; ++j) chart.M(i, j) = chart.F(i, j);
  for (int i = 0; i < k; ++i) {
    IntVec a = support_vector(parts[i], chart.F);
    for (int j = 0; j < chart.n; ++j) chart.M(d + i, j) = a[j];
  }
  Int det = det_bareiss(chart.M);
  if (det != 1 && det != -1)
    throw AssumptionUnimodularError(det, "divisor matrix M is not unimodular");
  chart.M_inv = unimodular_inverse(chart.M);
  chart.B = IntegerMatrix(chart.n, d);
  chart.K = IntegerMatrix(chart.n, k);
  for (int i = 0; i < chart.n; ++i) {
    for (int j = 0; j < d; ++j) chart.B(i, j) = chart.M_inv(i, j);
    for (int j = 0; j < k; ++j) chart.K(i, j) = chart.M_inv(i, d + j);
  }

  for (int i = 0; i < k; ++i) {
    Section s;
    s.f = fs[i];
    s.newt = parts[i];
    s.support = chart.M.row(d + i);
    s.klass = detail::mat_kt(chart.K, s.support);
    for (int j = 0; j < k; ++j)
      if (s.klass[j] != (i == j ? 1 : 0))
        throw IdentityFailedError("section class is not the standard basis vector");
    s.homog = homogenize(fs[i], s.support, chart.F, chart.K);
    chart.sections.push_back(std::move(s));
  }

  for (int j = 0; j < chart.n; ++j) {
    PhiComponent pc;
    pc.t_exponent = chart.B.row(j);
    pc.f_powers = chart.K.row(j);
    chart.phi.push_back(std::move(pc));
  }

  detail::check_block_identities(chart);
  return chart;
}

/// Full pipeline from a smooth lattice polytope: normal fan, Gale dual,
/// nef cone, smooth subcone at the class of the polytope, one all-ones
/// section per subcone ray, then the section assembly.
inline PositiveChart build_from_polytope(const Polytope& p,
                                         const std::optional<IntegerMatrix>& ray_order = std::nullopt) {
  if (p.lat_dim != p.dim || !p.facets_exact)
    throw InputError("chart construction needs a full-dimensional polytope with facets");
  if (!p.is_lattice()) throw NotLatticeError("polytope has non-integral vertices");
  Fan fan = normal_fan(p, ray_order);
  IntegerMatrix K = gale_dual(fan.rays);  // torsion classes are refused here
  FanProperties props = fan_properties(fan);
  if (!props.smooth) {
    std::string which;
    for (const auto& sigma : fan.maximal_cones) {
      if (int(sigma.size()) != fan.dim) {
        which = "non-simplicial cone";
        break;
      }
      IntegerMatrix sub(fan.dim, fan.dim);
      for (int c = 0; c < fan.dim; ++c)
        for (int r = 0; r < fan.dim; ++r) sub(r, c) = fan.rays(r, sigma[c]);
      Int dt = det_bareiss(sub);
      if (dt != 1 && dt != -1) {
        which = "cone on rays {";
        for (size_t q = 0; q < sigma.size(); ++q)
          which += (q ? "," : "") + std::to_string(sigma[q] + 1);
        which += "} with determinant " + dt.str();
        break;
      }
    }
    throw NotSmoothFanError("normal fan is not smooth: " + which);
  }
  auto snf = snf_invariants(K.transpose());
  if (!snf.right_inverse) throw TorsionError("kernel lattice is not saturated");
  const IntegerMatrix& S = *snf.right_inverse;
  Cone def = deformation_cone(fan);
  Cone nef = nef_cone(fan, K, S);
  IntVec reference = detail::mat_kt(K, support_vector(p, fan.rays));
  if (!cone_contains(nef, reference, /*strict=*/true))
    throw IdentityFailedError("polytope class is not interior to the nef cone");
  Cone sub = smooth_subcone(nef, reference);
  std::vector<LaurentPolynomial> fs;
  for (int j = 0; j < sub.rays->cols(); ++j)
    fs.push_back(section_from_class(sub.rays->col(j), fan, K, S, &def).f);
  return build_from_sections(fs, fan.rays);
}

/// Ideal generators f_i^h - 1, rendered in the canonical term order.
inline std::vector<std::string> ideal_strings(const PositiveChart& chart) {
  std::vector<std::string> out;
  for (const auto& s : chart.sections) out.push_back(to_string(s.homog) + " - 1");
  return out;
}

struct SectionIdentityReport {
  bool pullback_identity = false;   // f_i^h(phi(t)) = 1 for all i
  bool section_property = false;    // phi_{F^t}(phi(t)) = t
  bool base_locus_disjoint = false; // prod f_i^h lands in the irrelevant ideal
};

/// Symbolic verification of the defining identities; throws IdentityFailed
/// naming the first violated identity (which indicates an implementation
/// bug, not bad input).
inline SectionIdentityReport verify_section_identities(const PositiveChart& chart) {
  SectionIdentityReport report;
  for (int i = 0; i < chart.k; ++i) {
    std::vector<std::pair<Rat, IntVec>> yterms;
    for (const auto& [e, c] : chart.sections[i].homog.terms) yterms.emplace_back(c, e);
    if (!pullback_equals(chart, yterms, LaurentPolynomial::constant(chart.d, 1)))
      throw IdentityFailedError("f_" + std::to_string(i + 1) + "^h(phi(t)) = 1");
  }
  report.pullback_identity = true;

  for (int r = 0; r < chart.d; ++r) {
    IntVec row = chart.F.row(r);
    IntVec er(chart.d);
    er[r] = 1;
    if (!pullback_equals(chart, {{Rat(1), row}}, LaurentPolynomial::monomial(er)))
      throw IdentityFailedError("monomial section property in t_" + std::to_string(r + 1));
  }
  report.section_property = true;

  LaurentPolynomial prod = LaurentPolynomial::constant(chart.d, 1);
  IntVec total(chart.n);
  for (const auto& s : chart.sections) {
    prod = prod * s.f;
    for (int j = 0; j < chart.n; ++j) total[j] += s.support[j];
  }
  for (const auto& [m, c] : prod.terms) {
    IntVec e(chart.n);
    for (int j = 0; j < chart.n; ++j) {
      e[j] = total[j];
      for (int i = 0; i < chart.d; ++i) e[j] += chart.F(i, j) * m[i];
      if (e[j] < 0) throw IdentityFailedError("product homogenization exponent");
    }
    bool divisible = false;
    for (const auto& sigma : chart.fan.maximal_cones) {
      bool ok = true;
      size_t s = 0;
      for (int j = 0; j < chart.n && ok; ++j) {
        if (s < sigma.size() && sigma[s] == j) {
          ++s;
          continue;  // y_j may be absent inside the cone
        }
        if (e[j] < 1) ok = false;
      }
      if (ok) {
        divisible = true;
        break;
      }
    }
    if (!divisible)
      throw IdentityFailedError("a monomial of prod f_i^h escapes the irrelevant ideal");
  }
  report.base_locus_disjoint = true;
  return report;
}

inline bool fans_equal(const Fan& a, const Fan& b) {
  if (a.dim != b.dim || a.rays.cols() != b.rays.cols()) return false;
  std::map<IntVec, int> bindex;
  for (int j = 0; j < b.rays.cols(); ++j) bindex[b.rays.col(j)] = j;
  std::vector<int> translate(a.rays.cols());
  for (int j = 0; j < a.rays.cols(); ++j) {
    auto it = bindex.find(a.rays.col(j));
    if (it == bindex.end()) return false;
    translate[j] = it->second;
  }
  std::set<std::vector<int>> acones, bcones(b.maximal_cones.begin(), b.maximal_cones.end());
  for (const auto& sigma : a.maximal_cones) {
    std::vector<int> t;
    for (int j : sigma) t.push_back(translate[j]);
    std::sort(t.begin(), t.end());
    acones.insert(t);
  }
  return acones == bcones;
}

/// Newton polytope of the parametrization: sum over components of
/// Newt(numerator) + Newt(denominator) after cancelling shared section
/// factors. Asserts that its normal fan is the chart's fan.
inline Polytope newton_polytope_of_parametrization(const PositiveChart& chart) {
  std::vector<std::pair<Polytope, Rat>> parts;
  for (int j = 0; j < chart.n; ++j) {
    LaurentPolynomial num = LaurentPolynomial::monomial(chart.phi[j].t_exponent);
    LaurentPolynomial den = LaurentPolynomial::constant(chart.d, 1);
    for (int l = 0; l < chart.k; ++l) {
      Int p = chart.phi[j].f_powers[l];
      if (p < 0)
        for (Int q = 0; q < -p; ++q) num = num * chart.sections[l].f;
      if (p > 0)
        for (Int q = 0; q < p; ++q) den = den * chart.sections[l].f;
    }
    // cancel common section factors (full multivariate gcd is out of scope;
    // catalog charts have coprime components by construction)
    bool changed = true;
    while (changed) {
      changed = false;
      for (int l = 0; l < chart.k; ++l) {
        auto qn = laurent_divide(num, chart.sections[l].f);
        if (!qn) continue;
        auto qd = laurent_divide(den, chart.sections[l].f);
        if (!qd) continue;
        num = *qn;
        den = *qd;
        changed = true;
      }
    }
    parts.emplace_back(num.newton_polytope(), Rat(1));
    parts.emplace_back(den.newton_polytope(), Rat(1));
  }
  Polytope newt = minkowski_weighted(parts);
  if (!fans_equal(normal_fan(newt), chart.fan))
    throw IdentityFailedError("normal fan of Newt(phi) differs from the chart fan");
  return newt;
}

}  // namespace poschart
