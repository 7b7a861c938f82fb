#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "poschart/errors.hpp"
#include "poschart/numbers.hpp"

namespace poschart {

/// Dense row-major matrix over an exact scalar type (Int or Rat).
/// Dimensions are fixed at construction; entries are values, so copies
/// are deep and instances can be shared freely across threads.
template <typename T>
class MatrixT {
 public:
  MatrixT() : rows_(0), cols_(0) {}
  MatrixT(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}
  MatrixT(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = int(init.size());
    cols_ = rows_ ? int(init.begin()->size()) : 0;
    data_.reserve(size_t(rows_) * cols_);
    for (const auto& row : init) {
      if (int(row.size()) != cols_) throw InputError("ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static MatrixT identity(int n) {
    MatrixT m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static MatrixT from_rows(const std::vector<std::vector<T>>& rows) {
    MatrixT m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (int(rows[i].size()) != m.cols()) throw InputError("ragged row list");
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static MatrixT from_cols(const std::vector<std::vector<T>>& cols) {
    MatrixT m(cols.empty() ? 0 : int(cols[0].size()), int(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (int(cols[j].size()) != m.rows()) throw InputError("ragged column list");
      for (int i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const T& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }
  T& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }

  std::vector<T> row(int i) const {
    std::vector<T> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  std::vector<T> col(int j) const {
    std::vector<T> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  MatrixT transpose() const {
    MatrixT t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  MatrixT operator*(const MatrixT& other) const {
    if (cols_ != other.rows_) throw InputError("matrix product shape mismatch");
    MatrixT p(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
      }
    return p;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (int(v.size()) != cols_) throw InputError("matrix-vector shape mismatch");
    std::vector<T> r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool operator==(const MatrixT& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator!=(const MatrixT& other) const { return !(*this == other); }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool is_zero() const {
    for (const T& x : data_)
      if (x != 0) return false;
    return true;
  }

  // In-place elementary row operations (used by the normal-form routines).
  void swap_rows(int i, int j) {
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void negate_row(int i) {
    for (int c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }
  void add_row_multiple(int dst, int src, const T& factor) {
    if (factor == 0) return;
    for (int c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
  }
  void swap_cols(int i, int j) {
    for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  void negate_col(int i) {
    for (int r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
  }
  void add_col_multiple(int dst, int src, const T& factor) {
    if (factor == 0) return;
    for (int r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
  }

 private:
  int rows_, cols_;
  std::vector<T> data_;
};

using IntegerMatrix = MatrixT<Int>;
using RationalMatrix = MatrixT<Rat>;

inline RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
  return r;
}

/// Determinant by fraction-free Bareiss elimination; exact on integer input.
inline Int det_bareiss(IntegerMatrix a) {
  if (a.rows() != a.cols()) throw InputError("determinant of non-square matrix");
  int n = a.rows();
  if (n == 0) return 1;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      a.swap_rows(k, pivot);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = t / prev;  // exact division by the previous pivot
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

/// Row-reduces [A | B] over Q; returns the rank of A. A and B are modified.
inline int gauss_reduce(RationalMatrix& a, RationalMatrix& b) {
  int m = a.rows(), n = a.cols();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int pivot = -1;
    for (int i = r; i < m; ++i)
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    a.swap_rows(r, pivot);
    b.swap_rows(r, pivot);
    Rat inv = Rat(1) / a(r, c);
    for (int j = 0; j < n; ++j) a(r, j) *= inv;
    for (int j = 0; j < b.cols(); ++j) b(r, j) *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(r, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(r, j);
    }
    ++r;
  }
  return r;
}

inline int rank(RationalMatrix a) {
  RationalMatrix dummy(a.rows(), 0);
  return gauss_reduce(a, dummy);
}

inline int rank(const IntegerMatrix& a) { return rank(to_rational(a)); }

/// Solves A x = b over Q. Returns nullopt when inconsistent; when the
/// system is underdetermined the free variables are set to zero.
inline std::optional<RatVec> solve(const RationalMatrix& a, const RatVec& b) {
  RationalMatrix lhs = a;
  RationalMatrix rhs(a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) rhs(i, 0) = b[i];
  gauss_reduce(lhs, rhs);
  RatVec x(a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < a.cols(); ++j)
      if (lhs(i, j) != 0) {
        lead = j;
        break;
      }
    if (lead < 0) {
      if (rhs(i, 0) != 0) return std::nullopt;
      continue;
    }
    x[lead] = rhs(i, 0);
  }
  // Verify: free variables at zero must actually satisfy the system.
  for (int i = 0; i < a.rows(); ++i) {
    Rat acc;
    for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    if (acc != b[i]) return std::nullopt;
  }
  return x;
}

inline std::optional<RatVec> solve(const IntegerMatrix& a, const RatVec& b) {
  return solve(to_rational(a), b);
}

}  // namespace poschart
