#pragma once

// Exhaustive minimum-field-size search for small grids.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrgrid/code.hpp"
#include "mrgrid/constructions.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/verifier.hpp"

namespace mrgrid {

enum class SearchFamily { kGeneric, kGabidulin };

inline const char* to_string(SearchFamily f) { return f == SearchFamily::kGeneric ? "generic" : "gabidulin"; }

struct SearchOptions {
  /// Upper bound on labelings tried for a single field.
  std::uint64_t cap = 10'000'000;
  /// Smallest field order tried.
  std::uint64_t min_q = 2;
};

enum class FieldOutcome { kInadmissible, kNone, kFound };

inline const char* to_string(FieldOutcome o) {
  switch (o) {
    case FieldOutcome::kInadmissible: return "inadmissible";
    case FieldOutcome::kNone: return "none";
    case FieldOutcome::kFound: return "found";
  }
  return "?";
}

struct SearchStep {
  std::uint64_t q = 0;
  FieldOutcome outcome = FieldOutcome::kNone;
  std::uint64_t labelings = 0;
};

struct SearchResult {
  std::vector<SearchStep> steps;
  std::optional<std::uint64_t> q;
  std::optional<GridCode> code;
};

namespace detail {

/// All (tree, fundamental cycles) data for a grid, reused across many codes.
class CyclePlan {
 public:
  CyclePlan(int m, int n, int h, std::uint64_t cap) : k_(effective_extras(m, n, h)) {
    for_each_spanning_tree(
        m, n,
        [&](CellMask tree) {
          trees_.push_back(tree_cycles(m, n, tree));
          return true;
        },
        cap);
  }

  /// Cycle criterion without dedup or witness, stopping at the first failure.
  bool is_mr(const GridCode& code) const {
    for (const TreeCycles& tc : trees_) {
      bool ok = true;
      scan_tree(code, tc, k_, [&](std::uint64_t, const std::vector<std::size_t>&, CellMask,
                                  const std::vector<std::vector<Element>>& family) {
        ok = independent(code.field(), family);
        return ok;
      });
      if (!ok) return false;
    }
    return true;
  }

 private:
  std::size_t k_;
  std::vector<TreeCycles> trees_;
};

}  // namespace detail

/// Smallest prime power min_q <= q <= max_q admitting an MR code, with a witness code.
///
/// Cycle sums are unchanged by adding a constant vector to every parity of a
/// row or a column, so the search fixes the first row and first column of
/// labels to zero. The generic family enumerates all remaining parity
/// vectors; the Gabidulin family enumerates scalar labels and skips fields
/// whose extension degree is below h.
inline SearchResult min_field_size_search(int m, int n, int h, std::uint64_t max_q, SearchFamily family,
                                          const SearchOptions& options = {}) {
  if (m < 1 || n < 1 || h < 0) throw InvalidArgument("invalid grid parameters");
  detail::check_mask_grid(m, n);
  const std::uint64_t pairs =
      detail::saturating_mul(spanning_tree_count(m, n),
                             detail::binomial(static_cast<std::uint64_t>(m) * n - static_cast<std::uint64_t>(m + n - 1),
                                              detail::effective_extras(m, n, h)));
  if (pairs > options.cap) throw CapExceeded("search over (tree, extras) pairs", pairs, options.cap);
  const detail::CyclePlan plan(m, n, h, options.cap);

  std::vector<Cell> free_cells;
  for (int i = 1; i < m; ++i) {
    for (int j = 1; j < n; ++j) free_cells.push_back({i, j});
  }
  const std::size_t per_cell = family == SearchFamily::kGeneric ? static_cast<std::size_t>(h) : 1;
  const std::size_t digits = free_cells.size() * per_cell;

  SearchResult result;
  for (std::uint64_t q = std::max<std::uint64_t>(options.min_q, 2); q <= max_q; ++q) {
    auto [p, d] = detail::prime_power(q);
    if (p == 0) continue;
    SearchStep step{q, FieldOutcome::kNone, 0};
    if (family == SearchFamily::kGabidulin && d < static_cast<unsigned>(h)) {
      step.outcome = FieldOutcome::kInadmissible;
      result.steps.push_back(step);
      continue;
    }
    const std::uint64_t space = detail::saturating_pow(q, digits);
    if (space > options.cap) throw CapExceeded("labelings over GF(" + std::to_string(q) + ")", space, options.cap);

    const Field f = Field::make(p, d);
    std::vector<std::uint64_t> counter(digits, 0);
    auto build = [&]() {
      if (family == SearchFamily::kGeneric) {
        GridCode code(f, m, n, h);
        for (std::size_t c = 0; c < free_cells.size(); ++c) {
          for (std::size_t k = 0; k < per_cell; ++k) {
            code.set_parity(free_cells[c], static_cast<int>(k), Element{counter[c * per_cell + k]});
          }
        }
        return code;
      }
      GammaLabeling gamma(f, m, n);
      for (std::size_t c = 0; c < free_cells.size(); ++c) gamma.set(free_cells[c], Element{counter[c]});
      return gabidulin_lift(gamma, h);
    };

    while (true) {
      ++step.labelings;
      GridCode code = build();
      if (plan.is_mr(code)) {
        step.outcome = FieldOutcome::kFound;
        result.steps.push_back(step);
        result.q = q;
        result.code = std::move(code);
        return result;
      }
      std::size_t pos = 0;
      while (pos < digits && ++counter[pos] == q) counter[pos++] = 0;
      if (pos == digits) break;
    }
    result.steps.push_back(step);
  }
  return result;
}

}  // namespace mrgrid
