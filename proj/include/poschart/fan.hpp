#pragma once

#include <functional>
#include <set>

#include "poschart/polytope.hpp"

namespace poschart {

/// Complete fan given by primitive ray generators (columns) and maximal
/// cones as sorted ray-index sets.
struct Fan {
  IntegerMatrix rays;
  std::vector<std::vector<int>> maximal_cones;
  int dim = 0;
};

struct FanProperties {
  bool simplicial = false;
  bool smooth = false;
};

/// Polyhedral cone; rays are primitive lex-sorted columns, the H-rep rows
/// are primitive. Either side may be absent until computed.
struct Cone {
  int ambient_dim = 0;
  std::optional<IntegerMatrix> rays;   // columns
  std::optional<IntegerMatrix> ineqs;  // rows w with <w, x> >= 0
};

namespace detail {

inline IntegerMatrix cols_from(const std::vector<IntVec>& cols, int dim) {
  IntegerMatrix m(dim, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < dim; ++i) m(i, int(j)) = cols[j][i];
  return m;
}

inline IntegerMatrix rows_from(const std::vector<IntVec>& rows, int dim) {
  IntegerMatrix m(int(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < dim; ++j) m(int(i), j) = rows[i][j];
  return m;
}

inline Int idot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct DDRay {
  IntVec vec;
  std::vector<uint64_t> zero;  // incidence bits over processed constraints

  bool zero_at(int i) const { return (zero[i >> 6] >> (i & 63)) & 1; }
  void set_zero(int i) { zero[i >> 6] |= uint64_t(1) << (i & 63); }
};

// subset test restricted to processed constraints: a & b subset of c?
inline bool meet_subset(const DDRay& a, const DDRay& b, const DDRay& c) {
  for (size_t w = 0; w < a.zero.size(); ++w) {
    uint64_t m = a.zero[w] & b.zero[w];
    if (m & ~c.zero[w]) return false;
  }
  return true;
}

}  // namespace detail

/// Extreme rays of the pointed cone {x : A x >= 0} (A rows), by the double
/// description method with the combinatorial adjacency test.
inline IntegerMatrix cone_rays(const IntegerMatrix& ineq_rows) {
  using detail::DDRay;
  int e = ineq_rows.cols();
  // primitive, deduped constraint list in first-seen order
  std::vector<IntVec> a;
  {
    std::set<IntVec> seen;
    for (int i = 0; i < ineq_rows.rows(); ++i) {
      IntVec r = primitive(ineq_rows.row(i));
      if (is_zero(r)) continue;
      if (seen.insert(r).second) a.push_back(r);
    }
  }
  int m = int(a.size());
  if (rank(detail::rows_from(a, e)) < e)
    throw NotPointedError("cone has a lineality direction; rays are undefined");

  // initial simplicial cone from the first e independent constraints
  std::vector<int> init;
  {
    std::vector<IntVec> acc;
    for (int i = 0; i < m && int(init.size()) < e; ++i) {
      acc.push_back(a[i]);
      if (rank(detail::rows_from(acc, e)) == int(acc.size()))
        init.push_back(i);
      else
        acc.pop_back();
    }
  }
  int words = (m + 63) / 64;
  std::vector<bool> processed(m, false);
  std::vector<DDRay> rays;
  RationalMatrix ai(e, e);
  for (int r = 0; r < e; ++r)
    for (int c = 0; c < e; ++c) ai(r, c) = Rat(a[init[r]][c]);
  for (int j = 0; j < e; ++j) {
    RatVec b(e);
    b[j] = 1;
    auto x = solve(ai, b);
    if (!x) throw IdentityFailedError("initial cone solve");
    Int lcm = 1;
    for (const Rat& q : *x) lcm = lcm / gcd(lcm, den(q)) * den(q);
    IntVec v(e);
    for (int c = 0; c < e; ++c) v[c] = num((*x)[c]) * (lcm / den((*x)[c]));
    DDRay ray{primitive(std::move(v)), std::vector<uint64_t>(words, 0)};
    rays.push_back(std::move(ray));
  }
  for (int r : init) processed[r] = true;
  for (auto& ray : rays)
    for (int i : init)
      if (detail::idot(a[i], ray.vec) == 0) ray.set_zero(i);

  for (int t = 0; t < m; ++t) {
    if (processed[t]) continue;
    std::vector<Int> val(rays.size());
    std::vector<int> pos, neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      val[r] = detail::idot(a[t], rays[r].vec);
      if (val[r] > 0) pos.push_back(int(r));
      if (val[r] < 0) neg.push_back(int(r));
    }
    std::vector<DDRay> next;
    for (size_t r = 0; r < rays.size(); ++r) {
      if (val[r] < 0) continue;
      DDRay keep = rays[r];
      if (val[r] == 0) keep.set_zero(t);
      next.push_back(std::move(keep));
    }
    for (int p : pos)
      for (int n : neg) {
        // necessary: enough common tight constraints
        int common = 0;
        for (int w = 0; w < words; ++w)
          common += __builtin_popcountll(rays[p].zero[w] & rays[n].zero[w]);
        if (common < e - 2) continue;
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (int(r) == p || int(r) == n) continue;
          if (detail::meet_subset(rays[p], rays[n], rays[r])) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec v(e);
        for (int c = 0; c < e; ++c) v[c] = val[p] * rays[n].vec[c] - val[n] * rays[p].vec[c];
        v = primitive(std::move(v));
        DDRay nr{std::move(v), std::vector<uint64_t>(words, 0)};
        for (int i = 0; i < m; ++i)
          if ((processed[i] || i == t) && detail::idot(a[i], nr.vec) == 0) nr.set_zero(i);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
    processed[t] = true;
  }

  std::vector<IntVec> out;
  for (const auto& r : rays) out.push_back(r.vec);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& r : out)
    for (const auto& row : a)
      if (detail::idot(row, r) < 0) throw IdentityFailedError("double description output ray");
  return detail::cols_from(out, e);
}

/// Irredundant facet inequalities of a full-dimensional cone given by ray
/// generators (columns). Dual to cone_rays.
inline IntegerMatrix cone_inequalities(const IntegerMatrix& ray_cols) {
  if (rank(ray_cols) < ray_cols.rows())
    throw InputError("facet description needs a full-dimensional cone");
  IntegerMatrix facets = cone_rays(ray_cols.transpose());
  return facets.transpose();  // each dual ray is one inequality row
}

inline Cone cone_from_rays(const IntegerMatrix& ray_cols) {
  Cone c;
  c.ambient_dim = ray_cols.rows();
  std::vector<IntVec> cols;
  for (int j = 0; j < ray_cols.cols(); ++j) cols.push_back(primitive(ray_cols.col(j)));
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  c.rays = detail::cols_from(cols, c.ambient_dim);
  return c;
}

inline Cone cone_from_inequalities(const IntegerMatrix& ineq_rows) {
  Cone c;
  c.ambient_dim = ineq_rows.cols();
  c.ineqs = ineq_rows;
  return c;
}

inline const IntegerMatrix& ensure_rays(Cone& c) {
  if (!c.rays) c.rays = cone_rays(*c.ineqs);
  return *c.rays;
}

inline const IntegerMatrix& ensure_inequalities(Cone& c) {
  if (!c.ineqs) c.ineqs = cone_inequalities(*c.rays);
  return *c.ineqs;
}

inline bool cone_contains(Cone& c, const IntVec& x, bool strict = false) {
  const IntegerMatrix& w = ensure_inequalities(c);
  for (int i = 0; i < w.rows(); ++i) {
    Int s = 0;
    for (int j = 0; j < w.cols(); ++j) s += w(i, j) * x[j];
    if (s < 0 || (strict && s == 0)) return false;
  }
  return true;
}

/// Normal fan of a full-dimensional polytope: one maximal cone per vertex,
/// spanned by the normals of the facets through that vertex. An explicit
/// ray order (matching the computed normal set) may be imposed.
inline Fan normal_fan(const Polytope& p,
                      const std::optional<IntegerMatrix>& ray_order = std::nullopt) {
  if (!p.facets_exact || p.lat_dim != p.dim)
    throw InputError("normal fan needs a full-dimensional polytope with exact facets");
  Fan fan;
  fan.dim = p.dim;
  fan.rays = p.facet_normals();
  if (ray_order) {
    if (ray_order->cols() != fan.rays.cols() || ray_order->rows() != fan.rays.rows())
      throw InputError("ray order has the wrong shape");
    std::set<IntVec> have, want;
    for (int j = 0; j < fan.rays.cols(); ++j) {
      have.insert(fan.rays.col(j));
      want.insert(ray_order->col(j));
    }
    if (have != want) throw InputError("ray order is not a permutation of the fan rays");
    fan.rays = *ray_order;
  }
  std::map<IntVec, int> index;
  for (int j = 0; j < fan.rays.cols(); ++j) index[fan.rays.col(j)] = j;
  for (const auto& v : p.verts) {
    std::vector<int> cone;
    for (int j : p.tight_facets(v)) cone.push_back(index.at(p.facet_normals().col(j)));
    std::sort(cone.begin(), cone.end());
    fan.maximal_cones.push_back(std::move(cone));
  }
  std::sort(fan.maximal_cones.begin(), fan.maximal_cones.end());
  return fan;
}

inline FanProperties fan_properties(const Fan& fan) {
  FanProperties props;
  props.simplicial = true;
  props.smooth = true;
  for (const auto& sigma : fan.maximal_cones) {
    if (int(sigma.size()) != fan.dim) {
      props.simplicial = false;
      props.smooth = false;
      return props;
    }
    IntegerMatrix sub(fan.dim, fan.dim);
    for (int c = 0; c < fan.dim; ++c)
      for (int r = 0; r < fan.dim; ++r) sub(r, c) = fan.rays(r, sigma[c]);
    Int det = det_bareiss(sub);
    if (det != 1 && det != -1) props.smooth = false;
  }
  return props;
}

/// H-rep of the deformation cone in R^n: one inequality per (maximal cone,
/// missing ray) pair, from the vertex solution m_sigma(z). Redundancy is
/// kept; coefficients are integer and primitive.
inline Cone deformation_cone(const Fan& fan) {
  int d = fan.dim, n = fan.rays.cols();
  std::vector<IntVec> rows;
  for (const auto& sigma : fan.maximal_cones) {
    if (int(sigma.size()) != d)
      throw NotSimplicialError("deformation cone needs a simplicial fan");
    RationalMatrix fst(d, d);  // F_sigma^t
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < d; ++c) fst(i, c) = Rat(fan.rays(c, sigma[i]));
    for (int j = 0; j < n; ++j) {
      if (std::find(sigma.begin(), sigma.end(), j) != sigma.end()) continue;
      // w solves F_sigma w = u_j, giving <u_j, m_sigma(z)> = -<w, z_sigma>
      RatVec uj(d);
      for (int r = 0; r < d; ++r) uj[r] = Rat(fan.rays(r, j));
      auto w = solve(fst.transpose(), uj);
      if (!w) throw IdentityFailedError("vertex solve in deformation cone");
      RatVec coeff(n);
      coeff[j] = 1;
      for (int i = 0; i < d; ++i) coeff[sigma[i]] -= (*w)[i];
      Int lcm = 1;
      for (const Rat& q : coeff) lcm = lcm / gcd(lcm, den(q)) * den(q);
      IntVec row(n);
      for (int c = 0; c < n; ++c) row[c] = num(coeff[c]) * (lcm / den(coeff[c]));
      rows.push_back(primitive(std::move(row)));
    }
  }
  Cone cone;
  cone.ambient_dim = n;
  cone.ineqs = detail::rows_from(rows, n);
  return cone;
}

/// Nef cone in class coordinates: substitute z = S c into the deformation
/// inequalities. K is a Gale dual of the ray matrix, S an integer right
/// inverse of K^t. Both rays and inequalities are populated.
inline Cone nef_cone(const Fan& fan, const IntegerMatrix& k, const IntegerMatrix& s) {
  Cone def = deformation_cone(fan);
  int kk = k.cols();
  std::set<IntVec> rowset;
  std::vector<IntVec> rows;
  const IntegerMatrix& w = *def.ineqs;
  for (int i = 0; i < w.rows(); ++i) {
    IntVec row(kk);
    for (int c = 0; c < kk; ++c) {
      Int acc = 0;
      for (int j = 0; j < w.cols(); ++j) acc += w(i, j) * s(j, c);
      row[c] = acc;
    }
    if (is_zero(row)) continue;
    row = primitive(std::move(row));
    if (rowset.insert(row).second) rows.push_back(row);
  }
  Cone nef;
  nef.ambient_dim = kk;
  nef.ineqs = detail::rows_from(rows, kk);
  nef.rays = cone_rays(*nef.ineqs);
  return nef;
}

namespace detail {

// Nonzero lattice points of the half-open parallelepiped of the columns of
// r, with their barycentric coordinates in [0, 1).
inline std::vector<std::pair<IntVec, RatVec>> parallelepiped_points(const IntegerMatrix& r) {
  int k = r.rows();
  HnfResult h = hnf(r.transpose());
  Int count = 1;
  for (int i = 0; i < k; ++i) count *= h.H(i, i);
  if (count > 1'000'000) throw ResourceLimitError("parallelepiped too large to enumerate");
  RationalMatrix rq = to_rational(r);
  std::vector<std::pair<IntVec, RatVec>> points;
  IntVec c(k);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      RatVec rc(k);
      for (int j = 0; j < k; ++j) rc[j] = Rat(c[j]);
      auto lam = solve(rq, rc);
      if (!lam) throw IdentityFailedError("parallelepiped solve");
      RatVec frac(k);
      IntVec x(k);
      for (int j = 0; j < k; ++j) frac[j] = (*lam)[j] - Rat(rat_floor((*lam)[j]));
      for (int row = 0; row < k; ++row) {
        Rat acc;
        for (int j = 0; j < k; ++j) acc += rq(row, j) * frac[j];
        if (!is_integer(acc)) throw IdentityFailedError("parallelepiped point not integral");
        x[row] = num(acc);
      }
      if (!is_zero(x)) points.emplace_back(std::move(x), std::move(frac));
      return;
    }
    for (Int v = 0; v < h.H(i, i); ++v) {
      c[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return points;
}

inline bool simplicial_contains(const IntegerMatrix& rays, const IntVec& x) {
  RatVec b(x.size());
  for (size_t i = 0; i < x.size(); ++i) b[i] = Rat(x[i]);
  auto lam = solve(to_rational(rays), b);
  if (!lam) return false;
  for (const Rat& l : *lam)
    if (l < 0) return false;
  return true;
}

// Placing triangulation of a pointed vector configuration (columns),
// inserting in input order. Returns full-dimensional cells as index sets.
inline std::vector<std::vector<int>> placing_triangulation(const IntegerMatrix& rays) {
  int k = rays.rows(), p = rays.cols();
  std::vector<std::vector<int>> cells;
  std::vector<int> spanning;  // indices forming a basis of the current span

  auto rank_of = [&](const std::vector<int>& idx) {
    RationalMatrix m(int(idx.size()), k);
    for (size_t i = 0; i < idx.size(); ++i)
      for (int c = 0; c < k; ++c) m(int(i), c) = Rat(rays(c, idx[i]));
    return rank(m);
  };

  for (int i = 0; i < p; ++i) {
    if (cells.empty()) {
      cells.push_back({i});
      spanning = {i};
      continue;
    }
    std::vector<int> trial = spanning;
    trial.push_back(i);
    if (rank_of(trial) > int(spanning.size())) {
      // dimension grows: join every cell with the new ray
      for (auto& c : cells) {
        c.push_back(i);
        std::sort(c.begin(), c.end());
      }
      spanning.push_back(i);
      continue;
    }
    int ell = int(spanning.size());
    // span basis as columns
    RationalMatrix basis(k, ell);
    for (int c = 0; c < ell; ++c)
      for (int r = 0; r < k; ++r) basis(r, c) = Rat(rays(r, spanning[c]));
    // boundary facets: (ell-1)-subsets appearing in exactly one cell
    std::map<std::vector<int>, std::vector<int>> facet_owner;  // facet -> apexes
    for (const auto& cell : cells)
      for (int drop = 0; drop < int(cell.size()); ++drop) {
        std::vector<int> g;
        for (int q = 0; q < int(cell.size()); ++q)
          if (q != drop) g.push_back(cell[q]);
        facet_owner[g].push_back(cell[drop]);
      }
    std::vector<std::vector<int>> added;
    for (const auto& [g, apexes] : facet_owner) {
      if (apexes.size() != 1) continue;
      // inner normal within the span: w = basis * alpha with <w, ray_g> = 0
      RationalMatrix gsys(int(g.size()), ell);
      for (size_t rI = 0; rI < g.size(); ++rI)
        for (int c = 0; c < ell; ++c) {
          Rat acc;
          for (int row = 0; row < k; ++row) acc += Rat(rays(row, g[rI])) * basis(row, c);
          gsys(int(rI), c) = acc;
        }
      IntegerMatrix gint(int(g.size()), ell);
      Int lcm = 1;
      for (int rI = 0; rI < gsys.rows(); ++rI)
        for (int c = 0; c < ell; ++c) lcm = lcm / gcd(lcm, den(gsys(rI, c))) * den(gsys(rI, c));
      for (int rI = 0; rI < gsys.rows(); ++rI)
        for (int c = 0; c < ell; ++c)
          gint(rI, c) = num(gsys(rI, c)) * (lcm / den(gsys(rI, c)));
      IntegerMatrix kern = integer_kernel(gint);
      if (kern.cols() != 1) continue;  // degenerate facet
      RatVec w(k);
      for (int row = 0; row < k; ++row)
        for (int c = 0; c < ell; ++c) w[row] += basis(row, c) * Rat(kern(c, 0));
      // orient toward the owning cell's apex
      Rat apex_side;
      for (int row = 0; row < k; ++row) apex_side += w[row] * Rat(rays(row, apexes[0]));
      if (apex_side == 0) continue;
      if (apex_side < 0)
        for (Rat& x : w) x = -x;
      Rat side;
      for (int row = 0; row < k; ++row) side += w[row] * Rat(rays(row, i));
      if (side < 0) {
        std::vector<int> cell = g;
        cell.push_back(i);
        std::sort(cell.begin(), cell.end());
        added.push_back(std::move(cell));
      }
    }
    for (auto& c : added) cells.push_back(std::move(c));
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace detail

/// Smooth full-dimensional subcone of a pointed cone N containing the
/// reference point. The triangulation cell holding the reference is
/// resolved by stellar subdivisions at parallelepiped points minimizing
/// the coefficient sum (lex tie-break), keeping the piece that contains
/// the reference (lowest replaced index on ties).
inline Cone smooth_subcone(Cone n, const IntVec& reference) {
  const IntegerMatrix& rays = ensure_rays(n);
  int k = n.ambient_dim;
  if (rank(rays) < k) throw InputError("smooth subcone needs a full-dimensional cone");
  if (!cone_contains(n, reference))
    throw InputError("reference point lies outside the cone");

  auto cells = detail::placing_triangulation(rays);
  IntegerMatrix cur(k, k);
  bool found = false;
  for (const auto& cell : cells) {
    if (int(cell.size()) != k) continue;
    IntegerMatrix cand(k, k);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < k; ++r) cand(r, c) = rays(r, cell[c]);
    if (detail::simplicial_contains(cand, reference)) {
      cur = cand;
      found = true;
      break;
    }
  }
  if (!found) throw IdentityFailedError("no triangulation cell holds the reference");

  Int mult = abs(det_bareiss(cur));
  while (mult > 1) {
    auto pts = detail::parallelepiped_points(cur);
    // minimal coefficient sum, then lex-minimal point
    int best = -1;
    for (int i = 0; i < int(pts.size()); ++i) {
      if (best < 0) {
        best = i;
        continue;
      }
      Rat si, sb;
      for (const Rat& x : pts[i].second) si += x;
      for (const Rat& x : pts[best].second) sb += x;
      if (si < sb || (si == sb && pts[i].first < pts[best].first)) best = i;
    }
    if (best < 0) throw IdentityFailedError("non-unimodular cone without interior points");
    IntVec x = primitive(pts[best].first);
    const RatVec& lambda = pts[best].second;
    bool replaced = false;
    for (int i = 0; i < k && !replaced; ++i) {
      if (lambda[i] == 0) continue;
      IntegerMatrix next = cur;
      for (int r = 0; r < k; ++r) next(r, i) = x[r];
      if (!detail::simplicial_contains(next, reference)) continue;
      Int next_mult = abs(det_bareiss(next));
      if (next_mult == 0 || next_mult >= mult)
        throw IdentityFailedError("stellar subdivision did not reduce multiplicity");
      cur = next;
      mult = next_mult;
      replaced = true;
    }
    if (!replaced) throw IdentityFailedError("stellar subdivision lost the reference");
  }
  return cone_from_rays(cur);
}

}  // namespace poschart
