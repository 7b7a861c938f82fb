#pragma once

#include "poschart/laurent.hpp"

namespace poschart {

/// Polynomial in the homogeneous coordinate ring: nonnegative exponents in
/// N^n and a Z^k-grading class. Every stored exponent e satisfies
/// K^t e = degree; this is checked at construction.
struct CoxPolynomial {
  int nvars = 0;
  std::map<IntVec, Rat> terms;
  IntVec degree;

  bool homogeneous_for(const IntegerMatrix& k) const {
    for (const auto& [e, c] : terms) {
      for (int j = 0; j < k.cols(); ++j) {
        Int acc = 0;
        for (int i = 0; i < k.rows(); ++i) acc += k(i, j) * e[i];
        if (acc != degree[j]) return false;
      }
    }
    return true;
  }
};

/// Homogenization: c_m t^m  ->  c_m y^{F^t m + z}, of degree K^t z.
/// Requires Newt(f) inside P_z, i.e. every image exponent nonnegative.
inline CoxPolynomial homogenize(const LaurentPolynomial& f, const IntVec& z,
                                const IntegerMatrix& F, const IntegerMatrix& K) {
  int d = F.rows(), n = F.cols();
  if (f.nvars != d) throw InputError("homogenize: variable count mismatch");
  CoxPolynomial h;
  h.nvars = n;
  for (const auto& [m, c] : f.terms) {
    IntVec e(n);
    for (int j = 0; j < n; ++j) {
      Int acc = z[j];
      for (int i = 0; i < d; ++i) acc += F(i, j) * m[i];
      if (acc < 0)
        throw NegativeExponentError("monomial leaves the polytope of the lift at ray " +
                                    std::to_string(j + 1));
      e[j] = acc;
    }
    h.terms[e] = c;
  }
  h.degree.assign(K.cols(), Int(0));
  for (int j = 0; j < K.cols(); ++j)
    for (int i = 0; i < n; ++i) h.degree[j] += K(i, j) * z[i];
  if (!h.homogeneous_for(K)) throw IdentityFailedError("homogenization grading");
  return h;
}

/// Rendering order for homogenized sections follows the y-exponent lex
/// order used by the ideal strings.
inline std::string to_string(const CoxPolynomial& p, const std::string& var = "y") {
  LaurentPolynomial proxy(p.nvars);
  proxy.terms = p.terms;
  return to_string(proxy, var);
}

}  // namespace poschart
