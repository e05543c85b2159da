#pragma once

// Code-to-code reductions that trade global parities for a smaller grid over
// the same field. Both pick h - h' cycles in a corner of the grid whose cycle
// sums are independent, project the global parities through a map psi whose
// kernel is exactly their span, and keep the complementary subgrid.

#include <string>
#include <utility>
#include <vector>

#include "mrgrid/code.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/matrix.hpp"
#include "mrgrid/verifier.hpp"

namespace mrgrid {

/// A linear map GF(q)^{h_in} -> GF(q)^{h_out}, stored as an h_out x h_in matrix.
struct ProjectionMap {
  int h_in = 0;
  int h_out = 0;
  Matrix matrix;
};

struct ReduceOptions {
  /// Run the full cycle criterion on the input first (subject to its cap).
  bool verify_input = false;
  CycleCriterionOptions verify;
};

struct Reduction {
  GridCode code;
  ProjectionMap psi;
  std::vector<CycleRep> cycles;
};

/// The map whose rows span the annihilator of the given vectors, so that its
/// kernel is their span. Rows come out in reduced echelon form.
inline ProjectionMap projection_killing(const Field& field, int h, const std::vector<std::vector<Element>>& sums) {
  if (!independent(field, sums)) throw NotMaximallyRecoverable("input is not MR: designated cycle sums are dependent");
  Matrix span(field, sums.size(), static_cast<std::size_t>(h));
  for (std::size_t r = 0; r < sums.size(); ++r) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(h); ++c) span(r, c) = sums[r][c];
  }
  Matrix psi = kernel_basis(span);
  const int h_out = static_cast<int>(psi.rows());
  for (const auto& s : sums) {
    for (const Element v : psi.apply(s)) {
      if (v.value != 0) throw Error("projection does not annihilate a designated cycle sum");
    }
  }
  if (rank(psi) != static_cast<std::size_t>(h_out)) throw Error("projection is not full rank");
  return ProjectionMap{h, h_out, std::move(psi)};
}

namespace detail {

inline Reduction project_subgrid(const GridCode& code, std::vector<CycleRep> cycles, int m_out, int n_out,
                                 const ReduceOptions& options) {
  if (options.verify_input && !is_mr_cycle_criterion(code, options.verify).is_mr) {
    throw NotMaximallyRecoverable("input code is not MR");
  }
  std::vector<std::vector<Element>> sums;
  for (const CycleRep& c : cycles) sums.push_back(cycle_sum(code, c));
  ProjectionMap psi = projection_killing(code.field(), code.globals(), sums);
  GridCode out(code.field(), m_out, n_out, psi.h_out);
  for (int i = 0; i < m_out; ++i) {
    for (int j = 0; j < n_out; ++j) {
      const auto gp = code.parity({i, j});
      out.set_parity({i, j}, psi.matrix.apply(std::vector<Element>(gp.begin(), gp.end())));
    }
  }
  return Reduction{std::move(out), std::move(psi), std::move(cycles)};
}

}  // namespace detail

/// MR(m, n, 1, 1, h) -> MR(m - 2, n - h + h' - 1, 1, 1, h').
///
/// Kills the 4-cycles on the last two rows through column n - h + h' and
/// each of the h - h' columns after it.
inline Reduction reduce_monotone(const GridCode& code, int h_prime, const ReduceOptions& options = {}) {
  const int m = code.rows();
  const int n = code.cols();
  const int h = code.globals();
  if (h_prime < 1 || h_prime > h) throw InvalidArgument("need 1 <= h' <= h");
  if (m < 3) throw InvalidArgument("monotone reduction needs m >= 3");
  if (n < h - h_prime + 2) throw InvalidArgument("monotone reduction needs n >= h - h' + 2");
  const int base = n - h + h_prime - 1;
  std::vector<CycleRep> cycles;
  for (int l = 1; l <= h - h_prime; ++l) {
    cycles.push_back(CycleRep::canonical({{m - 2, base}, {m - 1, base}, {m - 1, base + l}, {m - 2, base + l}}));
  }
  return detail::project_subgrid(code, std::move(cycles), m - 2, base, options);
}

/// MR(m, n, 1, 1, h) -> MR(m - h1, n - h2, 1, 1, h') when (h1-1)(h2-1) >= h - h'.
///
/// Works in the bottom-right h1 x h2 box. The tree is the double star made
/// of the box's first row plus the box's first column; the killed cycles
/// close the lexicographically first h - h' box cells outside the tree.
inline Reduction reduce_box(const GridCode& code, int h_prime, int h1, int h2, const ReduceOptions& options = {}) {
  const int m = code.rows();
  const int n = code.cols();
  const int h = code.globals();
  if (h_prime < 1 || h_prime > h) throw InvalidArgument("need 1 <= h' <= h");
  if (h1 < 1 || h2 < 1) throw InvalidArgument("box sides must be positive");
  if (m <= h1 || n <= h2) throw InvalidArgument("box must leave a nonempty grid (m > h1, n > h2)");
  if ((h1 - 1) * (h2 - 1) < h - h_prime) throw InvalidArgument("box too small: need (h1-1)(h2-1) >= h - h'");
  const int r0 = m - h1;
  const int c0 = n - h2;
  std::vector<Cell> tree;
  for (int j = c0; j < n; ++j) tree.push_back({r0, j});
  for (int i = r0 + 1; i < m; ++i) tree.push_back({i, c0});
  const Pattern t(m, n, tree);
  const TreePaths paths(m, n, t.cells());
  std::vector<CycleRep> cycles;
  for (int i = r0; i < m && static_cast<int>(cycles.size()) < h - h_prime; ++i) {
    for (int j = c0; j < n && static_cast<int>(cycles.size()) < h - h_prime; ++j) {
      if (!t.contains({i, j})) cycles.push_back(paths.fundamental_cycle({i, j}));
    }
  }
  return detail::project_subgrid(code, std::move(cycles), r0, c0, options);
}

}  // namespace mrgrid
