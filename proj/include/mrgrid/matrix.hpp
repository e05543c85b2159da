#pragma once

// Dense matrices over a Field with Gaussian elimination.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"

namespace mrgrid {

class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols) {}

  static Matrix identity(const Field& field, std::size_t k) {
    Matrix m(field, k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix whose rows are the given vectors.
  static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<std::vector<Element>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InvalidArgument("ragged row");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Element> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::vector<Element> column(std::size_t c) const {
    std::vector<Element> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  /// The submatrix made of the listed columns, in the order given.
  Matrix select_columns(std::span<const std::size_t> columns) const {
    Matrix out(field_, rows_, columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k] >= cols_) throw InvalidArgument("column index out of range");
      for (std::size_t r = 0; r < rows_; ++r) out(r, k) = (*this)(r, columns[k]);
    }
    return out;
  }

  std::vector<Element> apply(std::span<const Element> x) const {
    if (x.size() != cols_) throw InvalidArgument("dimension mismatch in matrix-vector product");
    std::vector<Element> y(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      Element acc = field_.zero();
      for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul((*this)(r, c), x[c]));
      y[r] = acc;
    }
    return y;
  }

  Matrix operator*(const Matrix& other) const {
    require_same_field(other);
    if (cols_ != other.rows_) throw InvalidArgument("dimension mismatch in matrix product");
    Matrix out(field_, rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element a = (*this)(r, k);
        if (a.value == 0) continue;
        for (std::size_t c = 0; c < other.cols_; ++c) {
          out(r, c) = field_.add(out(r, c), field_.mul(a, other(k, c)));
        }
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  void require_same_field(const Matrix& other) const {
    if (!(field_ == other.field_)) throw InvalidArgument("matrices over different fields");
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

inline Echelon rref(Matrix a) {
  const Field& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col).value == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    }
    const Element scale = f.inv(a(row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) = f.mul(a(row, c), scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const Element factor = a(r, col);
      if (factor.value == 0) continue;
      for (std::size_t c = col; c < a.cols(); ++c) {
        a(r, c) = f.sub(a(r, c), f.mul(factor, a(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(a), std::move(pivots)};
}

/// Rank by forward elimination only.
inline std::size_t rank(Matrix a) {
  const Field& f = a.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col).value == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) {
      for (std::size_t c = col; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    }
    const Element pivot_inv = f.inv(a(row, col));
    for (std::size_t r = row + 1; r < a.rows(); ++r) {
      if (a(r, col).value == 0) continue;
      const Element factor = f.mul(a(r, col), pivot_inv);
      for (std::size_t c = col; c < a.cols(); ++c) {
        a(r, c) = f.sub(a(r, c), f.mul(factor, a(row, c)));
      }
    }
    ++row;
  }
  return row;
}

inline Element determinant(Matrix a) {
  if (a.rows() != a.cols()) throw InvalidArgument("determinant of a non-square matrix");
  const Field& f = a.field();
  Element det = f.one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a(sel, col).value == 0) ++sel;
    if (sel == n) return f.zero();
    if (sel != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a(sel, c), a(col, c));
      det = f.neg(det);
    }
    det = f.mul(det, a(col, col));
    const Element pivot_inv = f.inv(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).value == 0) continue;
      const Element factor = f.mul(a(r, col), pivot_inv);
      for (std::size_t c = col; c < n; ++c) a(r, c) = f.sub(a(r, c), f.mul(factor, a(col, c)));
    }
  }
  return det;
}

/// Basis of {x : A x = 0}, returned as the rows of a matrix in reduced row
/// echelon form, so the result only depends on the kernel itself.
inline Matrix kernel_basis(const Matrix& a) {
  const Field& f = a.field();
  const Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Element>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Element> v(a.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix(f, 0, a.cols());
  return rref(Matrix::from_rows(f, a.cols(), basis)).reduced;
}

struct Solution {
  std::vector<Element> x;
  bool unique = true;
};

/// Solves A x = b. Free variables are set to zero when the solution is not unique.
inline Solution solve(const Matrix& a, std::span<const Element> b) {
  if (b.size() != a.rows()) throw InvalidArgument("right-hand side has wrong length");
  const Field& f = a.field();
  Matrix augmented(f, a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) augmented(r, c) = a(r, c);
    augmented(r, a.cols()) = b[r];
  }
  const Echelon e = rref(std::move(augmented));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) {
    throw InconsistentSystem("linear system has no solution");
  }
  Solution s;
  s.x.assign(a.cols(), f.zero());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.x[e.pivots[r]] = e.reduced(r, a.cols());
  s.unique = e.pivots.size() == a.cols();
  return s;
}

/// Whether the given vectors (all of equal length) are linearly independent.
inline bool independent(const Field& field, const std::vector<std::vector<Element>>& vectors) {
  if (vectors.empty()) return true;
  const std::size_t len = vectors.front().size();
  if (vectors.size() > len) return false;
  return rank(Matrix::from_rows(field, len, vectors)) == vectors.size();
}

}  // namespace mrgrid
