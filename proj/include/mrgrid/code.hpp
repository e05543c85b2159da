#pragma once

// (m, n, a=1, b=1, h) grid codes: global parity vectors, the parity-check
// matrix they induce, and cycle sums.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/matrix.hpp"

namespace mrgrid {

/// A grid code is fully described by the h-dimensional global parity vector
/// attached to each cell; the row and column checks are implied.
class GridCode {
 public:
  /// All global parities start at zero.
  GridCode(Field field, int m, int n, int h) : field_(std::move(field)), m_(m), n_(n), h_(h) {
    if (m < 1 || n < 1) throw InvalidArgument("grid dimensions must be positive");
    if (h < 0) throw InvalidArgument("number of global parities must be nonnegative");
    gp_.assign(static_cast<std::size_t>(m) * n * h, field_.zero());
  }

  const Field& field() const { return field_; }
  int rows() const { return m_; }
  int cols() const { return n_; }
  int globals() const { return h_; }
  std::size_t cells() const { return static_cast<std::size_t>(m_) * n_; }

  std::span<const Element> parity(Cell c) const { return {gp_.data() + offset(c), static_cast<std::size_t>(h_)}; }

  void set_parity(Cell c, std::span<const Element> v) {
    if (v.size() != static_cast<std::size_t>(h_)) throw InvalidArgument("parity vector has wrong length");
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!field_.contains(v[k])) throw InvalidArgument("parity entry outside the field");
      gp_[offset(c) + k] = v[k];
    }
  }

  void set_parity(Cell c, int k, Element v) {
    if (k < 0 || k >= h_) throw InvalidArgument("parity coordinate out of range");
    if (!field_.contains(v)) throw InvalidArgument("parity entry outside the field");
    gp_[offset(c) + static_cast<std::size_t>(k)] = v;
  }

  friend bool operator==(const GridCode& a, const GridCode& b) {
    return a.field_ == b.field_ && a.m_ == b.m_ && a.n_ == b.n_ && a.h_ == b.h_ && a.gp_ == b.gp_;
  }

 private:
  std::size_t offset(Cell c) const {
    if (c.row < 0 || c.row >= m_ || c.col < 0 || c.col >= n_) throw InvalidArgument("cell outside the grid");
    return (static_cast<std::size_t>(c.row) * n_ + c.col) * h_;
  }

  Field field_;
  int m_;
  int n_;
  int h_;
  std::vector<Element> gp_;
};

/// The (m + n + h - 1) x mn parity-check matrix: m row checks, the first
/// n - 1 column checks (the last one is implied), then the h global checks.
/// Cell (i, j) owns column n*i + j.
inline Matrix build_parity_matrix(const GridCode& code) {
  const int m = code.rows();
  const int n = code.cols();
  const int h = code.globals();
  const Field& f = code.field();
  Matrix hm(f, static_cast<std::size_t>(m + n - 1 + h), code.cells());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t col = static_cast<std::size_t>(i) * n + j;
      hm(static_cast<std::size_t>(i), col) = f.one();
      if (j < n - 1) hm(static_cast<std::size_t>(m + j), col) = f.one();
      const auto gp = code.parity({i, j});
      for (int k = 0; k < h; ++k) hm(static_cast<std::size_t>(m + n - 1 + k), col) = gp[static_cast<std::size_t>(k)];
    }
  }
  return hm;
}

/// H restricted to the columns of E, in sorted cell order.
inline Matrix restrict_columns(const Matrix& hm, const Pattern& e) {
  if (hm.cols() != static_cast<std::size_t>(e.rows()) * e.cols()) throw InvalidArgument("pattern does not match the matrix");
  std::vector<std::size_t> columns;
  columns.reserve(e.size());
  for (const Cell& c : e.cells()) columns.push_back(e.index(c));
  return hm.select_columns(columns);
}

/// Alternating sum of global parity vectors around the cycle, + on even
/// positions of the sequence and - on odd ones.
inline std::vector<Element> cycle_sum(const GridCode& code, const CycleRep& cycle) {
  const Field& f = code.field();
  std::vector<Element> sum(static_cast<std::size_t>(code.globals()), f.zero());
  const auto& cells = cycle.cells();
  for (std::size_t t = 0; t < cells.size(); ++t) {
    const auto gp = code.parity(cells[t]);
    for (std::size_t k = 0; k < sum.size(); ++k) {
      sum[k] = cycle.positive(t) ? f.add(sum[k], gp[k]) : f.sub(sum[k], gp[k]);
    }
  }
  return sum;
}

}  // namespace mrgrid
