#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "poschart/exactla.hpp"

namespace poschart {

/// Records how a lower-dimensional input was mapped onto the lattice of its
/// affine hull: ambient_point = origin + basis^t * model_coords.
struct AffineChange {
  RatVec origin;
  IntegerMatrix basis;  // lattice_dim x ambient_dim, rows form a lattice basis
};

/// Bounded polytope with both representations. Vertices are lex-sorted and
/// irredundant. When `facets_exact` the H-rep columns are primitive inner
/// normals of facets, lex-sorted, one per facet. Immutable once built.
class Polytope {
 public:
  int dim = 0;
  std::vector<RatVec> verts;
  std::optional<IntegerMatrix> normals;  // dim x n
  std::optional<RatVec> offsets;         // z, P = {m : normals^t m + z >= 0}
  bool facets_exact = false;
  int lat_dim = 0;
  std::optional<AffineChange> from_ambient;

  int ambient_dim() const { return dim; }
  int lattice_dim() const { return lat_dim; }
  const std::vector<RatVec>& vertices() const { return verts; }
  const IntegerMatrix& facet_normals() const {
    if (!normals) throw InputError("polytope has no facet description");
    return *normals;
  }
  const RatVec& facet_offsets() const {
    if (!offsets) throw InputError("polytope has no facet description");
    return *offsets;
  }
  int facet_count() const { return facet_normals().cols(); }

  bool is_lattice() const {
    for (const auto& v : verts)
      for (const Rat& x : v)
        if (!is_integer(x)) return false;
    return true;
  }

  RatVec lex_min_vertex() const {
    if (verts.empty()) throw EmptyError("polytope has no vertices");
    return verts.front();
  }

  /// Indices of facets tight at the given point (requires an H-rep).
  std::vector<int> tight_facets(const RatVec& p) const {
    const IntegerMatrix& f = facet_normals();
    const RatVec& z = facet_offsets();
    std::vector<int> tight;
    for (int j = 0; j < f.cols(); ++j) {
      Rat v = z[j];
      for (int i = 0; i < dim; ++i) v += Rat(f(i, j)) * p[i];
      if (v == 0) tight.push_back(j);
    }
    return tight;
  }
};

struct FVector {
  std::vector<Int> counts;  // faces per dimension 0 .. d-1

  // Euler relation: f_0 - f_1 + ... = 1 - (-1)^d.
  bool euler_consistent() const {
    Int sum = 0, sign = 1;
    for (const Int& c : counts) {
      sum += sign * c;
      sign = -sign;
    }
    int d = int(counts.size());
    return sum == Int(1) - (d % 2 == 0 ? Int(1) : Int(-1));
  }
};

namespace detail {

inline int affine_rank(const std::vector<RatVec>& pts) {
  if (pts.empty()) return -1;
  int d = int(pts[0].size());
  RationalMatrix diffs(int(pts.size()) - 1, d);
  for (size_t i = 1; i < pts.size(); ++i)
    for (int j = 0; j < d; ++j) diffs(int(i) - 1, j) = pts[i][j] - pts[0][j];
  return rank(diffs);
}

inline void sort_dedupe(std::vector<RatVec>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Primitive integer direction of a rational vector.
inline IntVec primitive_direction(const RatVec& v) {
  Int lcm = 1;
  for (const Rat& x : v) lcm = lcm / gcd(lcm, den(x)) * den(x);
  IntVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = num(v[i]) * (lcm / den(v[i]));
  return primitive(std::move(w));
}

// Canonical sign: first nonzero entry positive.
inline IntVec canonical_sign(IntVec v) {
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

// Primitive spanning vector of the kernel of a (rank-deficient-by-one) matrix
// whose rows are the given integer vectors.
inline std::optional<IntVec> kernel_direction(const std::vector<IntVec>& rows, int d) {
  IntegerMatrix m(int(rows.size()), d);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < d; ++j) m(int(i), j) = rows[i][j];
  IntegerMatrix k = integer_kernel(m);
  if (k.cols() != 1) return std::nullopt;
  return primitive(k.col(0));
}

inline Rat dot(const IntVec& a, const RatVec& b) {
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

// Enumerates vertices of {m : F^t m + z >= 0} by solving all d-subsets of
// tight facet equations. Exact; complete for bounded sets of any dimension.
inline std::vector<RatVec> hrep_vertices(const IntegerMatrix& f, const RatVec& z) {
  int d = f.rows(), n = f.cols();
  std::vector<RatVec> vertices;
  std::vector<int> subset(d);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == d) {
      RationalMatrix a(d, d);
      RatVec b(d);
      for (int i = 0; i < d; ++i) {
        for (int r = 0; r < d; ++r) a(i, r) = Rat(f(r, subset[i]));
        b[i] = -z[subset[i]];
      }
      if (rank(a) != d) return;
      auto x = solve(a, b);
      if (!x) return;
      for (int j = 0; j < n; ++j) {
        Rat v = z[j];
        for (int r = 0; r < d; ++r) v += Rat(f(r, j)) * (*x)[r];
        if (v < 0) return;
      }
      vertices.push_back(*x);
      return;
    }
    for (int j = start; j < n; ++j) {
      subset[k] = j;
      rec(j + 1, k + 1);
    }
  };
  if (d == 0) return {};
  rec(0, 0);
  sort_dedupe(vertices);
  return vertices;
}

// Throws Unbounded when the recession cone {x : F^t x >= 0} is nontrivial.
inline void check_bounded(const IntegerMatrix& f) {
  int d = f.rows(), n = f.cols();
  if (rank(f) < d) throw UnboundedError("facet normals do not span; recession is positive-dimensional");
  if (d == 1) {
    bool pos = false, neg = false;
    for (int j = 0; j < n; ++j) {
      if (f(0, j) > 0) pos = true;
      if (f(0, j) < 0) neg = true;
    }
    if (!pos || !neg) throw UnboundedError("one-dimensional system misses a side");
    return;
  }
  std::vector<int> subset(d - 1);
  bool unbounded = false;
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (unbounded) return;
    if (k == d - 1) {
      std::vector<IntVec> rows;
      for (int i = 0; i < d - 1; ++i) rows.push_back(f.col(subset[i]));
      auto v = kernel_direction(rows, d);
      if (!v) return;
      for (int sign = 0; sign < 2; ++sign) {
        bool ray = true;
        bool nonzero = false;
        for (int j = 0; j < n && ray; ++j) {
          Int s = 0;
          for (int r = 0; r < d; ++r) s += f(r, j) * (*v)[r];
          if (sign) s = -s;
          if (s < 0) ray = false;
          if (s != 0) nonzero = true;
        }
        if (ray && nonzero) {
          unbounded = true;
          return;
        }
      }
      return;
    }
    for (int j = start; j < n; ++j) {
      subset[k] = j;
      rec(j + 1, k + 1);
    }
  };
  rec(0, 0);
  if (unbounded) throw UnboundedError("recession cone has an extreme ray");
}

// Keeps only genuine facets: primitive normals, duplicates merged to the
// binding offset, tight vertex set of affine rank d-1. Lex-sorted columns.
inline void cleanup_facets(const std::vector<RatVec>& verts, int d, IntegerMatrix& f, RatVec& z) {
  std::map<IntVec, Rat> binding;
  for (int j = 0; j < f.cols(); ++j) {
    IntVec u = f.col(j);
    Int g = content(u);
    if (g == 0) continue;
    Rat zj = z[j];
    if (g > 1) {
      for (Int& x : u) x /= g;
      zj /= Rat(g);
    }
    auto it = binding.find(u);
    if (it == binding.end())
      binding.emplace(u, zj);
    else if (zj < it->second)
      it->second = zj;
  }
  std::vector<IntVec> cols;
  std::vector<Rat> offs;
  for (const auto& [u, zj] : binding) {
    std::vector<RatVec> tight;
    for (const auto& v : verts)
      if (dot(u, v) + zj == 0) tight.push_back(v);
    if (int(tight.size()) >= d && affine_rank(tight) == d - 1) {
      cols.push_back(u);
      offs.push_back(zj);
    }
  }
  IntegerMatrix nf(d, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < d; ++i) nf(i, int(j)) = cols[j][i];
  f = nf;
  z = offs;
}

// Candidate facet normals of conv(pts) from (d choose ...) point subsets.
inline std::set<IntVec> facet_candidates_from_points(const std::vector<RatVec>& pts, int d) {
  std::set<IntVec> cands;
  if (d == 1) {
    cands.insert(IntVec{Int(1)});
    cands.insert(IntVec{Int(-1)});
    return cands;
  }
  std::vector<int> subset(d);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == d) {
      std::vector<IntVec> rows;
      for (int i = 1; i < d; ++i) {
        RatVec diff(d);
        for (int c = 0; c < d; ++c) diff[c] = pts[subset[i]][c] - pts[subset[0]][c];
        rows.push_back(primitive_direction(diff));
      }
      auto n = kernel_direction(rows, d);
      if (n) {
        cands.insert(*n);
        IntVec neg = *n;
        for (Int& x : neg) x = -x;
        cands.insert(neg);
      }
      return;
    }
    for (int j = start; j < int(pts.size()); ++j) {
      subset[k] = j;
      rec(j + 1, k + 1);
    }
  };
  if (int(pts.size()) >= d) rec(0, 0);
  return cands;
}

// Full-dimensional convex hull: facets from candidate normals, then vertex
// filtering by tight-set rank. pts must affinely span R^d.
inline void hull_full_dim(const std::vector<RatVec>& pts, int d, std::vector<RatVec>& verts,
                          IntegerMatrix& f, RatVec& z) {
  std::vector<IntVec> cols;
  std::vector<Rat> offs;
  for (const IntVec& u : facet_candidates_from_points(pts, d)) {
    Rat mn = dot(u, pts[0]);
    for (const auto& p : pts) mn = std::min(mn, dot(u, p));
    std::vector<RatVec> tight;
    for (const auto& p : pts)
      if (dot(u, p) == mn) tight.push_back(p);
    if (affine_rank(tight) == d - 1) {
      cols.push_back(u);
      offs.push_back(-mn);
    }
  }
  f = IntegerMatrix(d, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < d; ++i) f(i, int(j)) = cols[j][i];
  z = offs;
  verts = hrep_vertices(f, z);
}

}  // namespace detail

/// V-representation to full polytope. Lower-dimensional input is mapped to
/// the lattice of its affine hull (HNF basis) and the change of coordinates
/// is recorded on the result.
inline Polytope dual_convert(std::vector<RatVec> pts, bool auto_project = true);

/// Convex hull of ambient points without projecting lower-dimensional sets;
/// facet data is only attached when the hull is full-dimensional.
inline Polytope hull_ambient(std::vector<RatVec> pts) {
  if (pts.empty()) throw EmptyError("hull of an empty point set");
  int d = int(pts[0].size());
  detail::sort_dedupe(pts);
  int r = detail::affine_rank(pts);
  Polytope p;
  p.dim = d;
  p.lat_dim = r;
  if (r == 0) {
    p.verts = pts;
    return p;
  }
  if (r == d) {
    detail::hull_full_dim(pts, d, p.verts, p.normals.emplace(), p.offsets.emplace());
    p.facets_exact = true;
    return p;
  }
  // Lower-dimensional: find extreme points via a rational model of the
  // affine hull (no lattice normalization needed, only extremality).
  RatVec origin = pts[0];
  RationalMatrix rdiffs(int(pts.size()) - 1, d);
  for (size_t i = 1; i < pts.size(); ++i)
    for (int c = 0; c < d; ++c) rdiffs(int(i) - 1, c) = pts[i][c] - origin[c];
  RationalMatrix dummy(rdiffs.rows(), 0);
  RationalMatrix echelon = rdiffs;
  gauss_reduce(echelon, dummy);
  RationalMatrix basis(r, d);
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < d; ++c) basis(i, c) = echelon(i, c);
  std::vector<RatVec> model(pts.size(), RatVec(r));
  RationalMatrix bt = basis.transpose();
  for (size_t i = 0; i < pts.size(); ++i) {
    RatVec rhs(d);
    for (int c = 0; c < d; ++c) rhs[c] = pts[i][c] - origin[c];
    auto sol = solve(bt, rhs);
    if (!sol) throw IdentityFailedError("affine hull coordinates");
    model[i] = *sol;
  }
  std::vector<RatVec> mverts;
  if (r == 1) {
    mverts = {*std::min_element(model.begin(), model.end()),
              *std::max_element(model.begin(), model.end())};
  } else {
    IntegerMatrix mf;
    RatVec mz;
    detail::hull_full_dim(model, r, mverts, mf, mz);
  }
  detail::sort_dedupe(mverts);
  std::set<RatVec> extreme(mverts.begin(), mverts.end());
  for (size_t i = 0; i < pts.size(); ++i)
    if (extreme.count(model[i])) p.verts.push_back(pts[i]);
  detail::sort_dedupe(p.verts);
  return p;
}

inline Polytope dual_convert(std::vector<RatVec> pts, bool auto_project) {
  if (pts.empty()) throw EmptyError("no points given");
  int d = int(pts[0].size());
  for (const auto& p : pts)
    if (int(p.size()) != d) throw InputError("points of mixed dimension");
  detail::sort_dedupe(pts);
  int r = detail::affine_rank(pts);
  if (r == d || !auto_project) return hull_ambient(std::move(pts));

  // Project onto the lattice of the affine hull. The HNF rows of the
  // difference lattice give a basis; the lex-min point is the new origin.
  RatVec origin = *std::min_element(pts.begin(), pts.end());
  bool lattice_input = true;
  for (const auto& p : pts)
    for (const Rat& x : p)
      if (!is_integer(x)) lattice_input = false;
  if (!lattice_input)
    throw NotLatticeError("projection to the affine-hull lattice needs lattice points");
  IntegerMatrix diffs(int(pts.size()), d);
  for (size_t i = 0; i < pts.size(); ++i)
    for (int c = 0; c < d; ++c) diffs(int(i), c) = num(pts[i][c] - origin[c]);
  HnfResult h = hnf(diffs);
  IntegerMatrix basis(r, d);
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < d; ++c) basis(i, c) = h.H(i, c);
  RationalMatrix bt = to_rational(basis.transpose());
  std::vector<RatVec> model(pts.size(), RatVec(r));
  for (size_t i = 0; i < pts.size(); ++i) {
    RatVec rhs(d);
    for (int c = 0; c < d; ++c) rhs[c] = pts[i][c] - origin[c];
    auto sol = solve(bt, rhs);
    if (!sol) throw IdentityFailedError("projection coordinates");
    for (const Rat& x : *sol)
      if (!is_integer(x)) throw IdentityFailedError("projection landed outside the lattice");
    model[i] = *sol;
  }
  Polytope p = hull_ambient(std::move(model));
  p.from_ambient = AffineChange{origin, basis};
  return p;
}

/// H-representation to full polytope: {m : F^t m + z >= 0}.
inline Polytope dual_convert(const IntegerMatrix& f, const RatVec& z) {
  if (int(z.size()) != f.cols()) throw InputError("offset count must match facet count");
  detail::check_bounded(f);
  Polytope p;
  p.dim = f.rows();
  p.verts = detail::hrep_vertices(f, z);
  if (p.verts.empty()) throw EmptyError("H-representation is infeasible");
  p.lat_dim = detail::affine_rank(p.verts);
  p.normals = f;
  p.offsets = z;
  if (p.lat_dim == p.dim) {
    detail::cleanup_facets(p.verts, p.dim, *p.normals, *p.offsets);
    p.facets_exact = true;
  }
  return p;
}

inline Polytope dual_convert(const IntegerMatrix& f, const IntVec& z) {
  RatVec rz(z.size());
  for (size_t i = 0; i < z.size(); ++i) rz[i] = Rat(z[i]);
  return dual_convert(f, rz);
}

/// Tight support values: a_j = -min_{m in P} <u_j, m>, one per column of F.
inline RatVec support_vector_rat(const Polytope& p, const IntegerMatrix& f) {
  if (f.rows() != p.dim) throw InputError("normal dimension mismatch");
  if (p.verts.empty()) throw EmptyError("support vector of an empty polytope");
  RatVec a(f.cols());
  for (int j = 0; j < f.cols(); ++j) {
    IntVec u = f.col(j);
    Rat mn = detail::dot(u, p.verts[0]);
    for (const auto& v : p.verts) mn = std::min(mn, detail::dot(u, v));
    a[j] = -mn;
  }
  return a;
}

inline IntVec support_vector(const Polytope& p, const IntegerMatrix& f) {
  RatVec a = support_vector_rat(p, f);
  IntVec ia(a.size());
  for (size_t j = 0; j < a.size(); ++j) {
    if (!is_integer(a[j]))
      throw NotLatticeError("support value " + rat_to_string(a[j]) + " is not integral");
    ia[j] = num(a[j]);
  }
  return ia;
}

/// All lattice points of a lattice polytope, lex-ordered. Bounding-box scan
/// with exact H-rep filtering.
inline std::vector<IntVec> lattice_points(const Polytope& p) {
  if (p.verts.empty()) return {};
  int d = p.dim;
  if (!p.normals) {
    if (p.lat_dim == 0) {
      for (const Rat& x : p.verts[0])
        if (!is_integer(x)) return {};
      IntVec pt(d);
      for (int c = 0; c < d; ++c) pt[c] = num(p.verts[0][c]);
      return {pt};
    }
    throw InputError("lattice point scan needs an H-representation");
  }
  const IntegerMatrix& f = *p.normals;
  const RatVec& z = *p.offsets;
  std::vector<Int> lo(d), hi(d);
  for (int c = 0; c < d; ++c) {
    Rat mn = p.verts[0][c], mx = p.verts[0][c];
    for (const auto& v : p.verts) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = rat_ceil(mn) - 1;  // guard band; filtering is exact anyway
    hi[c] = rat_floor(mx) + 1;
  }
  std::vector<IntVec> points;
  IntVec cur(d);
  long budget = 10'000'000;
  std::function<void(int)> scan = [&](int c) {
    if (--budget < 0) throw ResourceLimitError("lattice point scan exceeded its budget");
    if (c == d) {
      for (int j = 0; j < f.cols(); ++j) {
        Rat v = z[j];
        for (int i = 0; i < d; ++i) v += Rat(f(i, j)) * Rat(cur[i]);
        if (v < 0) return;
      }
      points.push_back(cur);
      return;
    }
    for (Int x = lo[c]; x <= hi[c]; ++x) {
      cur[c] = x;
      scan(c + 1);
    }
  };
  scan(0);
  std::sort(points.begin(), points.end());
  return points;
}

/// Exact weighted Minkowski sum  w_1 P_1 + ... + w_k P_k  (weights > 0).
/// Facet normals are found among kernels of (d-1)-subsets of edge
/// directions; offsets add because support functions are additive.
inline Polytope minkowski_weighted(const std::vector<std::pair<Polytope, Rat>>& parts) {
  if (parts.empty()) throw InputError("empty Minkowski sum");
  int d = parts[0].first.dim;
  for (const auto& [poly, w] : parts) {
    if (poly.dim != d) throw InputError("Minkowski parts of mixed dimension");
    if (w <= 0) throw InputError("Minkowski weights must be positive");
    if (poly.verts.empty()) throw EmptyError("Minkowski part without vertices");
  }

  // Union of primitive edge-direction candidates (pairwise differences).
  std::set<IntVec> dirset;
  for (const auto& [poly, w] : parts)
    for (size_t i = 0; i < poly.verts.size(); ++i)
      for (size_t j = i + 1; j < poly.verts.size(); ++j) {
        RatVec diff(d);
        for (int c = 0; c < d; ++c) diff[c] = poly.verts[j][c] - poly.verts[i][c];
        dirset.insert(detail::canonical_sign(detail::primitive_direction(diff)));
      }
  std::vector<IntVec> dirs(dirset.begin(), dirset.end());

  IntegerMatrix dirmat(int(dirs.size()), d);
  for (size_t i = 0; i < dirs.size(); ++i)
    for (int c = 0; c < d; ++c) dirmat(int(i), c) = dirs[i][c];
  int span = dirs.empty() ? 0 : rank(dirmat);

  if (span < d) {
    // Lower-dimensional sum: recurse inside the affine hull.
    if (span == 0) {
      Polytope p;
      p.dim = d;
      p.lat_dim = 0;
      RatVec v(d);
      for (const auto& [poly, w] : parts)
        for (int c = 0; c < d; ++c) v[c] += w * poly.verts[0][c];
      p.verts = {v};
      return p;
    }
    HnfResult h = hnf(dirmat);
    IntegerMatrix basis(span, d);
    for (int i = 0; i < span; ++i)
      for (int c = 0; c < d; ++c) basis(i, c) = h.H(i, c);
    RationalMatrix bt = to_rational(basis.transpose());
    RatVec base(d);
    std::vector<std::pair<Polytope, Rat>> projected;
    for (const auto& [poly, w] : parts) {
      RatVec p0 = poly.lex_min_vertex();
      for (int c = 0; c < d; ++c) base[c] += w * p0[c];
      std::vector<RatVec> model;
      for (const auto& v : poly.verts) {
        RatVec rhs(d);
        for (int c = 0; c < d; ++c) rhs[c] = v[c] - p0[c];
        auto sol = solve(bt, rhs);
        if (!sol) throw IdentityFailedError("Minkowski projection");
        model.push_back(*sol);
      }
      projected.emplace_back(hull_ambient(std::move(model)), w);
    }
    Polytope inner = minkowski_weighted(projected);
    Polytope p;
    p.dim = d;
    p.lat_dim = inner.lat_dim;
    for (const auto& mv : inner.verts) {
      RatVec v = base;
      for (int c = 0; c < d; ++c)
        for (int i = 0; i < span; ++i) v[c] += Rat(basis(i, c)) * mv[i];
      p.verts.push_back(v);
    }
    detail::sort_dedupe(p.verts);
    return p;
  }

  // Candidate facet normals: primitive kernels of (d-1)-subsets of dirs.
  std::set<IntVec> cands;
  if (d == 1) {
    cands.insert(IntVec{Int(1)});
    cands.insert(IntVec{Int(-1)});
  } else {
    std::vector<int> subset(d - 1);
    std::function<void(int, int)> rec = [&](int start, int k) {
      if (k == d - 1) {
        std::vector<IntVec> rows;
        for (int i = 0; i < d - 1; ++i) rows.push_back(dirs[subset[i]]);
        auto u = detail::kernel_direction(rows, d);
        if (u) {
          cands.insert(*u);
          IntVec neg = *u;
          for (Int& x : neg) x = -x;
          cands.insert(neg);
        }
        return;
      }
      for (int j = start; j < int(dirs.size()); ++j) {
        subset[k] = j;
        rec(j + 1, k + 1);
      }
    };
    rec(0, 0);
  }

  std::vector<IntVec> cols;
  std::vector<Rat> offs;
  for (const IntVec& u : cands) {
    Rat total;
    std::vector<RatVec> active_diffs;
    for (const auto& [poly, w] : parts) {
      Rat mn = detail::dot(u, poly.verts[0]);
      std::vector<const RatVec*> arg;
      for (const auto& v : poly.verts) {
        Rat val = detail::dot(u, v);
        if (val < mn) {
          mn = val;
          arg.clear();
        }
        if (val == mn) arg.push_back(&v);
      }
      total += w * mn;
      for (size_t i = 1; i < arg.size(); ++i) {
        RatVec diff(d);
        for (int c = 0; c < d; ++c) diff[c] = (*arg[i])[c] - (*arg[0])[c];
        active_diffs.push_back(diff);
      }
    }
    RationalMatrix m(int(active_diffs.size()), d);
    for (size_t i = 0; i < active_diffs.size(); ++i)
      for (int c = 0; c < d; ++c) m(int(i), c) = active_diffs[i][c];
    if (rank(m) == d - 1) {
      cols.push_back(u);
      offs.push_back(-total);
    }
  }

  Polytope p;
  p.dim = d;
  p.lat_dim = d;
  p.normals = IntegerMatrix(d, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < d; ++i) (*p.normals)(i, int(j)) = cols[j][i];
  p.offsets = offs;
  p.verts = detail::hrep_vertices(*p.normals, *p.offsets);
  if (p.verts.empty()) throw IdentityFailedError("Minkowski sum lost its vertices");
  p.facets_exact = true;
  return p;
}

/// Face counts per dimension from the vertex-facet incidence lattice.
inline FVector f_vector(const Polytope& p) {
  if (!p.facets_exact || p.lat_dim != p.dim)
    throw InputError("f-vector needs a full-dimensional polytope with exact facets");
  int d = p.dim;
  int nv = int(p.verts.size());
  int nf = p.facet_count();
  // facet -> vertex incidence as index sets
  std::vector<std::vector<int>> facet_verts(nf);
  for (int v = 0; v < nv; ++v)
    for (int j : p.tight_facets(p.verts[v])) facet_verts[j].push_back(v);

  auto face_dim = [&](const std::vector<int>& vs) {
    std::vector<RatVec> pts;
    for (int v : vs) pts.push_back(p.verts[v]);
    return detail::affine_rank(pts);
  };

  FVector fv;
  fv.counts.assign(d, Int(0));
  fv.counts[d - 1] = nf;
  std::set<std::vector<int>> current(facet_verts.begin(), facet_verts.end());
  for (int level = d - 1; level >= 1; --level) {
    std::set<std::vector<int>> next;
    for (const auto& face : current)
      for (int j = 0; j < nf; ++j) {
        std::vector<int> inter;
        std::set_intersection(face.begin(), face.end(), facet_verts[j].begin(),
                              facet_verts[j].end(), std::back_inserter(inter));
        if (inter.empty() || inter == face) continue;
        if (face_dim(inter) == level - 1) next.insert(inter);
      }
    fv.counts[level - 1] = Int(next.size());
    current = std::move(next);
  }
  if (fv.counts[0] != nv) throw IdentityFailedError("face lattice vertex count");
  if (!fv.euler_consistent()) throw IdentityFailedError("Euler relation");
  return fv;
}

}  // namespace poschart
