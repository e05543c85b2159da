#pragma once

// Deciding the maximal-recoverability property.
//
// Two independent routes:
//  * the cycle criterion: for every spanning tree T of K_{m,n} and every
//    choice of h extra cells, the cycle sums of the extras' fundamental
//    cycles must be linearly independent;
//  * the rank oracle: rank H|_E = |E| for every pattern E that is acyclic
//    after deleting at most h cells.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mrgrid/code.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/matrix.hpp"

namespace mrgrid {

/// Evidence that a code is not MR: a regular pattern E = tree + extras whose
/// columns of H are dependent, equivalently whose cycle sums are dependent.
struct Witness {
  Pattern pattern;
  Pattern tree;
  std::vector<Cell> extras;
  std::vector<CycleRep> cycles;
  std::vector<std::vector<Element>> sums;
};

struct MrReport {
  bool is_mr = true;
  std::optional<Witness> witness;
  std::uint64_t patterns_checked = 0;
  std::uint64_t dedup_hits = 0;
};

inline constexpr std::uint64_t kDefaultPairCap = 10'000'000;
inline constexpr std::uint64_t kDefaultPatternCap = std::uint64_t{1} << 20;

struct CycleCriterionOptions {
  /// Upper bound on (spanning tree, extras) pairs.
  std::uint64_t cap = kDefaultPairCap;
  unsigned workers = 1;
  /// Skip pairs whose union pattern was already shown independent.
  bool dedup = true;
};

enum class RankMode { kFull, kRestricted };

struct RankOracleOptions {
  RankMode mode = RankMode::kFull;
  /// Upper bound on enumerated patterns.
  std::uint64_t cap = kDefaultPatternCap;
};

namespace detail {

struct TreeCycles {
  CellMask tree = 0;
  std::vector<Cell> nontree;
  std::vector<CycleRep> cycles;
};

inline TreeCycles tree_cycles(int m, int n, CellMask tree) {
  TreeCycles out;
  out.tree = tree;
  const Pattern t = Pattern::from_mask(m, n, tree);
  const TreePaths paths(m, n, t.cells());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const Cell c{i, j};
      if (tree & (CellMask{1} << (i * n + j))) continue;
      out.nontree.push_back(c);
      out.cycles.push_back(paths.fundamental_cycle(c));
    }
  }
  return out;
}

/// Visits the k-subsets of {0..n-1} in lexicographic order until visit returns false.
/// Returns false when stopped early.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::size_t effective_extras(int m, int n, int h) {
  const std::size_t nontree = static_cast<std::size_t>(m) * n - static_cast<std::size_t>(m + n - 1);
  return std::min(static_cast<std::size_t>(h), nontree);
}

inline Witness make_witness(const GridCode& code, CellMask tree, std::vector<Cell> extras,
                            std::vector<CycleRep> cycles) {
  const int m = code.rows();
  const int n = code.cols();
  Witness w{Pattern::from_mask(m, n, tree), Pattern::from_mask(m, n, tree), std::move(extras), std::move(cycles), {}};
  for (const Cell& c : w.extras) w.pattern.insert(c);
  for (const CycleRep& cyc : w.cycles) w.sums.push_back(cycle_sum(code, cyc));
  return w;
}

/// Sharded set of union patterns already proven independent.
class PatternSet {
 public:
  explicit PatternSet(bool concurrent) : shards_(concurrent ? 64 : 1), locks_(shards_.size()) {}

  bool contains(CellMask e) {
    const std::size_t s = shard(e);
    std::lock_guard<std::mutex> lock(locks_[s]);
    return shards_[s].count(e) != 0;
  }

  void insert(CellMask e) {
    const std::size_t s = shard(e);
    std::lock_guard<std::mutex> lock(locks_[s]);
    shards_[s].insert(e);
  }

  std::uint64_t size() const {
    std::uint64_t total = 0;
    for (const auto& s : shards_) total += s.size();
    return total;
  }

 private:
  std::size_t shard(CellMask e) const { return std::hash<CellMask>{}(e * 0x9E3779B97F4A7C15ULL >> 7) % shards_.size(); }

  std::vector<std::unordered_set<CellMask>> shards_;
  std::vector<std::mutex> locks_;
};

struct PairPosition {
  std::uint64_t tree = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t subset = 0;

  friend bool operator<(const PairPosition& a, const PairPosition& b) {
    return a.tree != b.tree ? a.tree < b.tree : a.subset < b.subset;
  }
};

/// Walks the (tree, extras) pairs of one tree in subset order. Calls
/// on_failure for the first dependent family and stops there.
template <class OnPair>
void scan_tree(const GridCode& code, const TreeCycles& tc, std::size_t k, OnPair&& on_pair) {
  std::vector<std::vector<Element>> sums;
  sums.reserve(tc.cycles.size());
  for (const CycleRep& cyc : tc.cycles) sums.push_back(cycle_sum(code, cyc));
  std::uint64_t index = 0;
  std::vector<std::vector<Element>> family(k);
  for_each_subset(tc.nontree.size(), k, [&](const std::vector<std::size_t>& subset) {
    CellMask e = tc.tree;
    for (std::size_t s = 0; s < subset.size(); ++s) {
      const Cell c = tc.nontree[subset[s]];
      e |= CellMask{1} << (c.row * code.cols() + c.col);
      family[s] = sums[subset[s]];
    }
    return on_pair(index++, subset, e, family);
  });
}

}  // namespace detail

/// Whether the global parity vectors pass the cycle criterion for one fixed
/// spanning tree and extras family (k = number of extras).
inline bool family_independent(const GridCode& code, const std::vector<std::vector<Element>>& sums) {
  return independent(code.field(), sums);
}

/// Cycle-sum independence over all spanning trees and extras.
///
/// The verdict and witness are the first dependent (tree, extras) pair in
/// enumeration order, regardless of the worker count. patterns_checked
/// counts distinct union patterns among the pairs examined and dedup_hits
/// the remaining pairs.
inline MrReport is_mr_cycle_criterion(const GridCode& code, const CycleCriterionOptions& options = {}) {
  const int m = code.rows();
  const int n = code.cols();
  detail::check_mask_grid(m, n);
  const std::size_t nontree = static_cast<std::size_t>(m) * n - static_cast<std::size_t>(m + n - 1);
  const std::size_t k = detail::effective_extras(m, n, code.globals());
  const std::uint64_t trees = spanning_tree_count(m, n);
  const std::uint64_t pairs = detail::saturating_mul(trees, detail::binomial(nontree, k));
  if (pairs > options.cap) throw CapExceeded("cycle criterion over (tree, extras) pairs", pairs, options.cap);

  const unsigned workers = std::max(1u, options.workers);
  detail::PatternSet seen(workers > 1);
  std::mutex best_lock;
  detail::PairPosition best;
  std::atomic<std::uint64_t> best_tree{std::numeric_limits<std::uint64_t>::max()};
  std::optional<Witness> witness;

  // Sequential accounting, exact in single-worker mode.
  std::uint64_t checked = 0;
  std::uint64_t hits = 0;

  auto run = [&](unsigned worker, bool count) {
    std::uint64_t tree_index = 0;
    for_each_spanning_tree(
        m, n,
        [&](CellMask tree) {
          const std::uint64_t t = tree_index++;
          if (t > best_tree.load()) return false;
          if (t % workers != worker) return true;
          const detail::TreeCycles tc = detail::tree_cycles(m, n, tree);
          detail::scan_tree(code, tc, k,
                            [&](std::uint64_t u, const std::vector<std::size_t>& subset, CellMask e,
                                const std::vector<std::vector<Element>>& family) {
                              if (options.dedup && seen.contains(e)) {
                                if (count) ++hits;
                                return true;
                              }
                              if (count) ++checked;
                              if (family_independent(code, family)) {
                                if (options.dedup) seen.insert(e);
                                return true;
                              }
                              std::lock_guard<std::mutex> lock(best_lock);
                              const detail::PairPosition here{t, u};
                              if (here < best) {
                                best = here;
                                best_tree.store(t);
                                std::vector<Cell> extras;
                                std::vector<CycleRep> cycles;
                                for (std::size_t s : subset) {
                                  extras.push_back(tc.nontree[s]);
                                  cycles.push_back(tc.cycles[s]);
                                }
                                witness = detail::make_witness(code, tree, std::move(extras), std::move(cycles));
                              }
                              return false;
                            });
          return true;
        },
        options.cap);
  };

  if (workers == 1) {
    run(0, true);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, false);
    for (auto& th : pool) th.join();
  }

  MrReport report;
  report.is_mr = !witness.has_value();
  report.witness = std::move(witness);
  if (workers == 1) {
    report.patterns_checked = checked;
    report.dedup_hits = hits;
  } else if (report.is_mr) {
    report.patterns_checked = options.dedup ? seen.size() : pairs;
    report.dedup_hits = pairs - report.patterns_checked;
  } else {
    // Recount the prefix up to the witness the way a single worker would.
    std::unordered_set<CellMask> prefix;
    std::uint64_t examined = 0;
    std::uint64_t t_index = 0;
    for_each_spanning_tree(
        m, n,
        [&](CellMask tree) {
          const std::uint64_t t = t_index++;
          if (t > best.tree) return false;
          const detail::TreeCycles tc = detail::tree_cycles(m, n, tree);
          detail::scan_tree(code, tc, k,
                            [&](std::uint64_t u, const std::vector<std::size_t>&, CellMask e,
                                const std::vector<std::vector<Element>>&) {
                              if (t == best.tree && u > best.subset) return false;
                              ++examined;
                              if (!options.dedup) return true;
                              prefix.insert(e);
                              return true;
                            });
          return true;
        },
        options.cap);
    report.patterns_checked = options.dedup ? prefix.size() : examined;
    report.dedup_hits = examined - report.patterns_checked;
  }
  return report;
}

/// A spanning forest of E (greedy in cell order), the leftover cells, and
/// their fundamental cycles inside the forest.
inline Witness witness_for_pattern(const GridCode& code, const Pattern& e) {
  const int m = code.rows();
  const int n = code.cols();
  detail::DisjointSets sets(static_cast<std::size_t>(m + n));
  std::vector<Cell> forest;
  std::vector<Cell> extras;
  for (const Cell& c : e.cells()) {
    if (sets.unite(static_cast<std::size_t>(c.row), static_cast<std::size_t>(m + c.col))) {
      forest.push_back(c);
    } else {
      extras.push_back(c);
    }
  }
  const TreePaths paths(m, n, forest);
  Witness w{e, Pattern(m, n, forest), extras, {}, {}};
  for (const Cell& c : extras) {
    w.cycles.push_back(paths.fundamental_cycle(c));
    w.sums.push_back(cycle_sum(code, w.cycles.back()));
  }
  return w;
}

/// Exhaustive rank check of H|_E over regular patterns. Full mode visits all
/// 2^{mn} patterns; restricted mode only the maximal ones (spanning,
/// connected, |E| = m + n + h - 1), which suffices because every regular
/// pattern is contained in one.
inline MrReport is_mr_rank_oracle(const GridCode& code, const RankOracleOptions& options = {}) {
  const int m = code.rows();
  const int n = code.cols();
  const int h = code.globals();
  detail::check_mask_grid(m, n);
  const int cells = m * n;
  const Matrix hm = build_parity_matrix(code);
  MrReport report;

  auto check = [&](CellMask mask) {
    ++report.patterns_checked;
    const Pattern e = Pattern::from_mask(m, n, mask);
    if (rank(restrict_columns(hm, e)) == e.size()) return true;
    report.is_mr = false;
    report.witness = witness_for_pattern(code, e);
    return false;
  };

  if (options.mode == RankMode::kFull) {
    const std::uint64_t total = cells >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << cells);
    if (total > options.cap) throw CapExceeded("full rank oracle over all patterns", total, options.cap);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (circuit_rank(m, n, mask) > static_cast<std::size_t>(h)) continue;
      if (!check(mask)) break;
    }
    return report;
  }

  const int size = std::min(m + n + h - 1, cells);
  const std::uint64_t total = detail::binomial(static_cast<std::uint64_t>(cells), static_cast<std::uint64_t>(size));
  if (total > options.cap) throw CapExceeded("restricted rank oracle over maximal patterns", total, options.cap);
  const CellMask limit = detail::low_bits(cells);
  CellMask mask = detail::low_bits(size);
  while (true) {
    if (is_spanning_connected(m, n, mask) && circuit_rank(m, n, mask) <= static_cast<std::size_t>(h)) {
      if (!check(mask)) break;
    }
    if (mask == (limit & ~detail::low_bits(cells - size))) break;
    // Gosper's hack: next mask with the same popcount.
    const CellMask low = mask & (~mask + 1);
    const CellMask ripple = mask + low;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  return report;
}

/// True when the witness really is a regular pattern with rank-deficient columns.
inline bool witness_fails(const GridCode& code, const Witness& w) {
  if (!is_regular(w.pattern, static_cast<std::size_t>(code.globals()))) return false;
  const Matrix hm = build_parity_matrix(code);
  if (rank(restrict_columns(hm, w.pattern)) == w.pattern.size()) return false;
  std::vector<std::vector<Element>> sums;
  for (const CycleRep& c : w.cycles) sums.push_back(cycle_sum(code, c));
  return !independent(code.field(), sums);
}

/// Independence of an arbitrary cycle family whose union is regular and in
/// which every cycle owns a cell no other cycle uses. For MR codes the answer
/// is always true.
inline bool check_cycle_family(const GridCode& code, const std::vector<CycleRep>& cycles) {
  Pattern united(code.rows(), code.cols());
  for (const CycleRep& c : cycles) {
    for (const Cell& cell : c.cells()) united.insert(cell);
  }
  if (circuit_rank(united) > static_cast<std::size_t>(code.globals())) {
    throw InvalidArgument("cycle family needs more than h extra cells beyond an acyclic subgraph");
  }
  for (std::size_t a = 0; a < cycles.size(); ++a) {
    const bool has_private = std::any_of(cycles[a].cells().begin(), cycles[a].cells().end(), [&](const Cell& cell) {
      for (std::size_t b = 0; b < cycles.size(); ++b) {
        if (b != a && cycles[b].contains(cell)) return false;
      }
      return true;
    });
    if (!has_private) throw InvalidArgument("a cycle in the family has no private cell");
  }
  std::vector<std::vector<Element>> sums;
  for (const CycleRep& c : cycles) sums.push_back(cycle_sum(code, c));
  return independent(code.field(), sums);
}

}  // namespace mrgrid
