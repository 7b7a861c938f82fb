#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "poschart/matrix.hpp"

namespace poschart {

struct HnfResult {
  IntegerMatrix H;  // row Hermite normal form
  IntegerMatrix U;  // unimodular, U * A = H
};

/// Row Hermite normal form. Pivots are positive, entries above a pivot are
/// reduced into [0, pivot), zero rows come last.
inline HnfResult hnf(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  int m = a.rows(), n = a.cols();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // Euclidean elimination below the pivot row.
    while (true) {
      int best = -1;
      for (int i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        if (best < 0 || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best < 0) break;
      if (best != r) {
        h.swap_rows(r, best);
        u.swap_rows(r, best);
      }
      bool cleared = true;
      for (int i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);  // truncated; loop handles remainders
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return {h, u};
}

/// Basis of the integer kernel {x : A x = 0}, returned as columns.
/// The columns generate the full kernel lattice (it is saturated).
inline IntegerMatrix integer_kernel(const IntegerMatrix& a) {
  // Rows of U mapping A^t to zero rows of its HNF span ker A.
  HnfResult res = hnf(a.transpose());
  int n = a.cols();
  int r = 0;
  for (int i = 0; i < res.H.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < res.H.cols(); ++j)
      if (res.H(i, j) != 0) {
        zero = false;
        break;
      }
    if (!zero) ++r;
  }
  IntegerMatrix k(n, n - r);
  for (int j = r; j < n; ++j)
    for (int i = 0; i < n; ++i) k(i, j - r) = res.U(j, i);
  return k;
}

struct SnfResult {
  std::vector<Int> divisors;                    // d_1 | d_2 | ..., all positive
  std::optional<IntegerMatrix> right_inverse;   // S with A*S = id, iff all divisors are 1
};

namespace detail {

// Diagonalizes A by elementary row/column operations, tracking V so that
// the original A equals U^{-1} D V^{-1}; only V is needed by callers.
inline void snf_diagonalize(IntegerMatrix& d, IntegerMatrix& u, IntegerMatrix& v) {
  int m = d.rows(), n = d.cols();
  int t = 0;
  while (t < std::min(m, n)) {
    // Locate a smallest nonzero entry in the remaining block.
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
    }
    if (pj != t) {
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);
    }
    bool clean = true;
    for (int i = t + 1; i < m; ++i) {
      Int q = d(i, t) / d(t, t);
      d.add_row_multiple(i, t, -q);
      u.add_row_multiple(i, t, -q);
      if (d(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < n; ++j) {
      Int q = d(t, j) / d(t, t);
      d.add_col_multiple(j, t, -q);
      v.add_col_multiple(j, t, -q);
      if (d(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders left; repeat with a smaller pivot
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  // Enforce the divisibility chain d_i | d_{i+1}.
  int r = t;
  for (int i = 0; i < r - 1; ++i) {
    for (int j = i + 1; j < r; ++j) {
      if (d(j, j) % d(i, i) == 0) continue;
      // Fold d(j,j) into column i and re-diagonalize the 2x2 block.
      d.add_col_multiple(i, j, 1);
      v.add_col_multiple(i, j, 1);
      while (d(j, i) != 0) {
        Int q = d(i, i) / d(j, i);
        d.add_row_multiple(i, j, -q);
        u.add_row_multiple(i, j, -q);
        if (d(i, i) == 0) {
          d.swap_rows(i, j);
          u.swap_rows(i, j);
          continue;
        }
        if (d(j, i) == 0) break;
        q = d(j, i) / d(i, i);
        d.add_row_multiple(j, i, -q);
        u.add_row_multiple(j, i, -q);
      }
      while (d(i, j) != 0) {
        Int q = d(i, j) / d(i, i);
        d.add_col_multiple(j, i, -q);
        v.add_col_multiple(j, i, -q);
      }
      if (d(i, i) < 0) {
        d.negate_row(i);
        u.negate_row(i);
      }
      if (d(j, j) < 0) {
        d.negate_row(j);
        u.negate_row(j);
      }
    }
  }
}

}  // namespace detail

/// Elementary divisors of a full-row-rank matrix, plus an integer right
/// inverse when the cokernel Z^cols / im A^t is torsion-free.
inline SnfResult snf_invariants(const IntegerMatrix& a) {
  int m = a.rows(), n = a.cols();
  IntegerMatrix d = a;
  IntegerMatrix u = IntegerMatrix::identity(m);
  IntegerMatrix v = IntegerMatrix::identity(n);
  detail::snf_diagonalize(d, u, v);
  std::vector<Int> divisors;
  for (int i = 0; i < std::min(m, n); ++i)
    if (d(i, i) != 0) divisors.push_back(d(i, i));
  if (int(divisors.size()) < m)
    throw RankDeficientError("matrix does not have full row rank");
  SnfResult res;
  res.divisors = divisors;
  bool free_cokernel = std::all_of(divisors.begin(), divisors.end(),
                                   [](const Int& x) { return x == 1; });
  if (free_cokernel) {
    // A = U^{-1} (id | 0) V^{-1}, so S = V (id; 0) U satisfies A S = id.
    IntegerMatrix pad(n, m);
    for (int i = 0; i < m; ++i) pad(i, i) = 1;
    IntegerMatrix s = v * pad * u;
    if (!(a * s).is_identity()) throw IdentityFailedError("SNF right inverse check");
    res.right_inverse = s;
  }
  return res;
}

/// Gale dual: columns generate ker_Z F. Requires the class lattice
/// Z^n / im F^t to be torsion-free.
inline IntegerMatrix gale_dual(const IntegerMatrix& f) {
  SnfResult snf = snf_invariants(f);  // throws RankDeficient if rank < d
  for (const Int& di : snf.divisors)
    if (di != 1)
      throw TorsionError("class lattice has torsion; no Gale dual identification");
  return integer_kernel(f);
}

/// Exact inverse of a unimodular integer matrix.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("inverse of non-square matrix");
  Int det = det_bareiss(m);
  if (det != 1 && det != -1)
    throw NotUnimodularError(det, "matrix is not unimodular");
  int n = m.rows();
  RationalMatrix lhs = to_rational(m);
  RationalMatrix rhs = RationalMatrix::identity(n);
  if (gauss_reduce(lhs, rhs) != n) throw NotUnimodularError(det, "unexpected rank drop");
  IntegerMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!is_integer(rhs(i, j))) throw IdentityFailedError("unimodular inverse not integral");
      inv(i, j) = num(rhs(i, j));
    }
  if (!(m * inv).is_identity() || !(inv * m).is_identity())
    throw IdentityFailedError("two-sided inverse check");
  return inv;
}

}  // namespace poschart
