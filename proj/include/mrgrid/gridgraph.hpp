#pragma once

// Grid patterns viewed as bipartite graphs: rows are left vertices, columns
// are right vertices, and a cell (i, j) is the edge between row i and column j.
// Everything here is 0-based; file formats convert to 1-based at the boundary.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mrgrid/error.hpp"

namespace mrgrid {

struct Cell {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Bit set of cells of an m x n grid, bit (row * n + col). Requires m * n <= 64.
using CellMask = std::uint64_t;

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t low_bits(int count) { return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1; }

inline void check_mask_grid(int m, int n) {
  if (m < 1 || n < 1) throw InvalidArgument("grid dimensions must be positive");
  if (m * n > 64) throw InvalidArgument("grid has more than 64 cells");
}

}  // namespace detail

/// A set of cells of an m x n grid.
class Pattern {
 public:
  Pattern(int m, int n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw InvalidArgument("grid dimensions must be positive");
  }

  Pattern(int m, int n, std::vector<Cell> cells) : Pattern(m, n) {
    for (const Cell& c : cells) check(c);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    cells_ = std::move(cells);
  }

  static Pattern from_mask(int m, int n, CellMask mask) {
    detail::check_mask_grid(m, n);
    Pattern p(m, n);
    while (mask != 0) {
      const int bit = __builtin_ctzll(mask);
      p.cells_.push_back(Cell{bit / n, bit % n});
      mask &= mask - 1;
    }
    return p;
  }

  static Pattern full(int m, int n) {
    Pattern p(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) p.cells_.push_back(Cell{i, j});
    }
    return p;
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<Cell>& cells() const { return cells_; }

  bool contains(Cell c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

  void insert(Cell c) {
    check(c);
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || *it != c) cells_.insert(it, c);
  }

  /// Column index of a cell in the parity-check matrix.
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * n_ + c.col; }

  CellMask mask() const {
    detail::check_mask_grid(m_, n_);
    CellMask mask = 0;
    for (const Cell& c : cells_) mask |= CellMask{1} << index(c);
    return mask;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  void check(Cell c) const {
    if (c.row < 0 || c.row >= m_ || c.col < 0 || c.col >= n_) {
      throw InvalidArgument("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) + ") outside the grid");
    }
  }

  int m_;
  int n_;
  std::vector<Cell> cells_;
};

/// |E| - |V(E)| + components(E): the number of edges that must be deleted to
/// make E acyclic.
inline std::size_t circuit_rank(const Pattern& e) {
  const int m = e.rows();
  detail::DisjointSets sets(static_cast<std::size_t>(m + e.cols()));
  std::size_t cycles = 0;
  for (const Cell& c : e.cells()) {
    if (!sets.unite(c.row, m + c.col)) ++cycles;
  }
  return cycles;
}

inline std::size_t circuit_rank(int m, int n, CellMask mask) {
  detail::DisjointSets sets(static_cast<std::size_t>(m + n));
  std::size_t cycles = 0;
  while (mask != 0) {
    const int bit = __builtin_ctzll(mask);
    mask &= mask - 1;
    if (!sets.unite(bit / n, m + bit % n)) ++cycles;
  }
  return cycles;
}

/// Whether E is an acyclic pattern plus at most h cells.
inline bool is_regular(const Pattern& e, std::size_t h) { return circuit_rank(e) <= h; }

/// Whether E touches every row and column and is connected.
inline bool is_spanning_connected(int m, int n, CellMask mask) {
  detail::DisjointSets sets(static_cast<std::size_t>(m + n));
  std::size_t merges = 0;
  while (mask != 0) {
    const int bit = __builtin_ctzll(mask);
    mask &= mask - 1;
    if (sets.unite(bit / n, m + bit % n)) ++merges;
  }
  return merges == static_cast<std::size_t>(m + n - 1);
}

inline bool is_spanning_tree(const Pattern& t) {
  return t.size() == static_cast<std::size_t>(t.rows() + t.cols() - 1) && circuit_rank(t) == 0;
}

/// m^{n-1} n^{m-1}, saturating at UINT64_MAX.
inline std::uint64_t spanning_tree_count(int m, int n) {
  return detail::saturating_mul(detail::saturating_pow(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n - 1)),
                                detail::saturating_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m - 1)));
}

inline constexpr std::uint64_t kDefaultTreeCap = 10'000'000;

/// Streams every spanning tree of K_{m,n} exactly once, in a fixed order.
/// The visitor returns false to stop early. Returns the number of trees visited.
///
/// Branches on each cell in index order: include it when it joins two
/// components, exclude it when the remaining cells still connect the graph.
/// Every branch therefore ends in a tree.
inline std::uint64_t for_each_spanning_tree(int m, int n, const std::function<bool(CellMask)>& visit,
                                            std::uint64_t cap = kDefaultTreeCap) {
  detail::check_mask_grid(m, n);
  const std::uint64_t expected = spanning_tree_count(m, n);
  if (expected > cap) throw CapExceeded("spanning tree enumeration", expected, cap);

  const int cells = m * n;
  const int vertices = m + n;
  const int needed = vertices - 1;
  std::uint64_t visited = 0;
  bool stopped = false;

  auto connected_with = [&](CellMask mask) {
    return is_spanning_connected(m, n, mask);
  };

  std::function<void(int, CellMask, int, const detail::DisjointSets&)> recurse =
      [&](int k, CellMask chosen, int count, const detail::DisjointSets& sets) {
        if (stopped) return;
        if (count == needed) {
          ++visited;
          if (!visit(chosen)) stopped = true;
          return;
        }
        if (k == cells || cells - k < needed - count) return;
        const int r = k / n;
        const int c = m + k % n;
        detail::DisjointSets with = sets;
        if (with.unite(static_cast<std::size_t>(r), static_cast<std::size_t>(c))) {
          recurse(k + 1, chosen | (CellMask{1} << k), count + 1, with);
        }
        const CellMask rest = detail::low_bits(cells) & ~detail::low_bits(k + 1);
        if (connected_with(chosen | rest)) recurse(k + 1, chosen, count, sets);
      };

  detail::DisjointSets sets(static_cast<std::size_t>(vertices));
  if (connected_with(detail::low_bits(cells))) recurse(0, 0, 0, sets);
  if (!stopped && visited != expected) {
    throw Error("spanning tree enumeration produced " + std::to_string(visited) + " trees, expected " +
                std::to_string(expected));
  }
  return visited;
}

/// Pattern-valued convenience over for_each_spanning_tree.
inline std::uint64_t enumerate_spanning_trees(int m, int n, const std::function<bool(const Pattern&)>& visit,
                                              std::uint64_t cap = kDefaultTreeCap) {
  return for_each_spanning_tree(
      m, n, [&](CellMask mask) { return visit(Pattern::from_mask(m, n, mask)); }, cap);
}

/// An oriented simple cycle (i1,j1),(i2,j1),(i2,j2),...,(ik,jk),(i1,jk).
/// Cells at even positions carry sign +, cells at odd positions sign -.
class CycleRep {
 public:
  /// Validates the alternating form; keeps the given orientation.
  static CycleRep from_sequence(std::vector<Cell> seq) {
    const std::size_t len = seq.size();
    if (len < 4 || len % 2 != 0) throw InvalidArgument("a cycle needs an even number (>= 4) of cells");
    std::vector<int> rows;
    std::vector<int> cols;
    for (std::size_t t = 0; t < len; ++t) {
      const Cell& a = seq[t];
      const Cell& b = seq[(t + 1) % len];
      const bool column_step = t % 2 == 0;
      if (column_step ? (a.col != b.col || a.row == b.row) : (a.row != b.row || a.col == b.col)) {
        throw InvalidArgument("cells do not alternate between column and row steps");
      }
      if (t % 2 == 0) {
        rows.push_back(a.row);
        cols.push_back(a.col);
      }
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(rows.begin(), rows.end()) != rows.end() ||
        std::adjacent_find(cols.begin(), cols.end()) != cols.end()) {
      throw InvalidArgument("cycle is not simple");
    }
    CycleRep c;
    c.cells_ = std::move(seq);
    return c;
  }

  /// Validates and rotates/reflects into the canonical orientation: the
  /// smallest cell first, followed by the cell sharing its column.
  static CycleRep canonical(std::vector<Cell> seq) { return from_sequence(std::move(seq)).canonicalized(); }

  CycleRep canonicalized() const {
    const std::size_t len = cells_.size();
    const auto smallest = static_cast<std::size_t>(std::min_element(cells_.begin(), cells_.end()) - cells_.begin());
    std::vector<Cell> seq(len);
    if (smallest % 2 == 0) {
      for (std::size_t t = 0; t < len; ++t) seq[t] = cells_[(smallest + t) % len];
    } else {
      // In the reversed sequence the smallest cell sits at an even position.
      for (std::size_t t = 0; t < len; ++t) seq[t] = cells_[(smallest + len - t) % len];
    }
    CycleRep c;
    c.cells_ = std::move(seq);
    return c;
  }

  /// The same cycle traversed the other way; flips every sign.
  CycleRep reversed() const {
    CycleRep c;
    c.cells_.assign(cells_.rbegin(), cells_.rend());
    return c;
  }

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool positive(std::size_t position) const { return position % 2 == 0; }

  bool contains(Cell c) const { return std::find(cells_.begin(), cells_.end(), c) != cells_.end(); }

  friend bool operator==(const CycleRep&, const CycleRep&) = default;

 private:
  std::vector<Cell> cells_;
};

/// Parent pointers of a spanning tree (or forest) rooted at each component's
/// smallest vertex; answers tree-path queries.
class TreePaths {
 public:
  TreePaths(int m, int n, const std::vector<Cell>& edges) : m_(m), n_(n) {
    const int vertices = m + n;
    adjacency_.assign(vertices, {});
    for (const Cell& c : edges) {
      adjacency_[c.row].push_back(m + c.col);
      adjacency_[m + c.col].push_back(c.row);
    }
    parent_.assign(vertices, -1);
    depth_.assign(vertices, -1);
    component_.assign(vertices, -1);
    for (int root = 0; root < vertices; ++root) {
      if (depth_[root] != -1) continue;
      depth_[root] = 0;
      component_[root] = root;
      std::vector<int> stack{root};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adjacency_[v]) {
          if (depth_[w] != -1) continue;
          depth_[w] = depth_[v] + 1;
          parent_[w] = v;
          component_[w] = root;
          stack.push_back(w);
        }
      }
    }
  }

  bool connected(int u, int v) const { return component_[u] == component_[v]; }

  /// Vertices along the tree path from u to v, both ends included.
  std::vector<int> path(int u, int v) const {
    std::vector<int> front{u};
    std::vector<int> back{v};
    while (u != v) {
      if (depth_[u] >= depth_[v]) {
        u = parent_[u];
        front.push_back(u);
      } else {
        v = parent_[v];
        back.push_back(v);
      }
    }
    back.pop_back();
    front.insert(front.end(), back.rbegin(), back.rend());
    return front;
  }

  /// The cycle closed by a non-tree cell, in canonical orientation.
  CycleRep fundamental_cycle(Cell e) const {
    const int row_vertex = e.row;
    const int col_vertex = m_ + e.col;
    if (!connected(row_vertex, col_vertex)) throw InvalidArgument("endpoints of the cell are not connected in the tree");
    // Path from column j back to row i, then close with e: e, (next row, j), ...
    const std::vector<int> walk = path(col_vertex, row_vertex);
    std::vector<Cell> seq{e};
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
      const int a = walk[t];
      const int b = walk[t + 1];
      seq.push_back(a < m_ ? Cell{a, b - m_} : Cell{b, a - m_});
    }
    if (seq.size() < 4) throw InvalidArgument("cell is already part of the tree");
    return CycleRep::canonical(std::move(seq));
  }

 private:
  int m_;
  int n_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> component_;
};

/// The unique cycle in T + e, canonically oriented.
inline CycleRep fundamental_cycle(const Pattern& tree, Cell e) {
  if (circuit_rank(tree) != 0) throw InvalidArgument("tree pattern contains a cycle");
  if (e.row < 0 || e.row >= tree.rows() || e.col < 0 || e.col >= tree.cols()) throw InvalidArgument("cell outside the grid");
  if (tree.contains(e)) throw InvalidArgument("cell already belongs to the tree");
  return TreePaths(tree.rows(), tree.cols(), tree.cells()).fundamental_cycle(e);
}

/// |union of the fundamental cycles of the extra cells|.
inline std::size_t cycle_union_size(const Pattern& tree, const std::vector<Cell>& extras) {
  if (!is_spanning_tree(tree)) throw InvalidArgument("pattern is not a spanning tree");
  const TreePaths paths(tree.rows(), tree.cols(), tree.cells());
  Pattern united(tree.rows(), tree.cols());
  for (const Cell& e : extras) {
    if (tree.contains(e)) throw InvalidArgument("extra cell belongs to the tree");
    const CycleRep cycle = paths.fundamental_cycle(e);
    for (const Cell& c : cycle.cells()) united.insert(c);
  }
  return united.size();
}

/// A spanning tree and h extra cells whose fundamental cycles cover exactly
/// 2(m + h - 1) cells: a staircase through the diagonal, a fan from the last
/// row, and extras in the first row. Needs m >= 2 and n >= m + h.
inline std::pair<Pattern, std::vector<Cell>> tight_cycle_union_family(int m, int n, int h) {
  if (m < 2 || h < 1 || n < m + h) throw InvalidArgument("tight family needs m >= 2, h >= 1 and n >= m + h");
  std::vector<Cell> tree;
  for (int i = 0; i < m; ++i) tree.push_back({i, i});
  for (int i = 0; i + 1 < m; ++i) tree.push_back({i, i + 1});
  for (int j = m; j < n; ++j) tree.push_back({m - 1, j});
  std::vector<Cell> extras;
  for (int l = 1; l <= h; ++l) extras.push_back({0, m - 1 + l});
  return {Pattern(m, n, std::move(tree)), std::move(extras)};
}

/// Uniform random spanning tree of K_{m,n} (Aldous-Broder walk).
template <class Rng>
Pattern random_spanning_tree(int m, int n, Rng& rng) {
  const int vertices = m + n;
  std::vector<bool> seen(vertices, false);
  std::vector<Cell> edges;
  std::uniform_int_distribution<int> pick_row(0, m - 1);
  std::uniform_int_distribution<int> pick_col(0, n - 1);
  int current = 0;
  seen[0] = true;
  int remaining = vertices - 1;
  while (remaining > 0) {
    const int next = current < m ? m + pick_col(rng) : pick_row(rng);
    if (!seen[next]) {
      seen[next] = true;
      --remaining;
      edges.push_back(current < m ? Cell{current, next - m} : Cell{next, current - m});
    }
    current = next;
  }
  return Pattern(m, n, std::move(edges));
}

}  // namespace mrgrid
