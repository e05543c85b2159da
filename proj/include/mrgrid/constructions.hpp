#pragma once

// Explicit MR grid code constructions. All of them are Gabidulin lifts of a
// scalar labeling gamma : [m] x [n] -> GF(q): the k-th global parity of cell
// (i, j) is gamma(i, j)^{p^k}.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrgrid/code.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/verifier.hpp"

namespace mrgrid {

/// A scalar label per cell.
class GammaLabeling {
 public:
  GammaLabeling(Field field, int m, int n) : field_(std::move(field)), m_(m), n_(n) {
    if (m < 1 || n < 1) throw InvalidArgument("grid dimensions must be positive");
    gamma_.assign(static_cast<std::size_t>(m) * n, field_.zero());
  }

  const Field& field() const { return field_; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  Element at(Cell c) const { return gamma_[index(c)]; }
  void set(Cell c, Element v) {
    if (!field_.contains(v)) throw InvalidArgument("label outside the field");
    gamma_[index(c)] = v;
  }

 private:
  std::size_t index(Cell c) const {
    if (c.row < 0 || c.row >= m_ || c.col < 0 || c.col >= n_) throw InvalidArgument("cell outside the grid");
    return static_cast<std::size_t>(c.row) * n_ + c.col;
  }

  Field field_;
  int m_;
  int n_;
  std::vector<Element> gamma_;
};

/// c^{i,j} = (gamma, gamma^p, ..., gamma^{p^{h-1}}).
inline GridCode gabidulin_lift(const GammaLabeling& labeling, int h) {
  const Field& f = labeling.field();
  if (h < 0) throw InvalidArgument("number of global parities must be nonnegative");
  if (f.degree() < static_cast<unsigned>(h)) {
    throw InvalidArgument("Gabidulin lift with h = " + std::to_string(h) + " needs extension degree >= h, field is " +
                          f.describe());
  }
  GridCode code(f, labeling.rows(), labeling.cols(), h);
  for (int i = 0; i < labeling.rows(); ++i) {
    for (int j = 0; j < labeling.cols(); ++j) {
      const Element g = labeling.at({i, j});
      for (int k = 0; k < h; ++k) code.set_parity({i, j}, k, f.frobenius(g, static_cast<unsigned>(k)));
    }
  }
  return code;
}

/// Recovers gamma from the first global parity (exact inverse of the lift).
inline GammaLabeling labeling_of(const GridCode& code) {
  if (code.globals() < 1) throw InvalidArgument("code has no global parity");
  GammaLabeling out(code.field(), code.rows(), code.cols());
  for (int i = 0; i < code.rows(); ++i) {
    for (int j = 0; j < code.cols(); ++j) out.set({i, j}, code.parity({i, j})[0]);
  }
  return out;
}

namespace detail {

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline unsigned log2_exact(std::uint64_t x) { return static_cast<unsigned>(std::countr_zero(x)); }

inline unsigned ceil_log2(std::uint64_t x) {
  unsigned r = 0;
  while ((std::uint64_t{1} << r) < x) ++r;
  return r;
}

}  // namespace detail

/// Binary-encoding construction for h = 1 over GF(n^{m-1}).
///
/// Row i < m-1 writes the binary form of its column index into the i-th
/// block of log2(n) bits; the last row is labeled zero. A simple cycle visits
/// some row i < m-1 at two distinct columns, so block i of its sum is the XOR
/// of two distinct column indices.
inline GridCode construct_binary(int m, int n) {
  if (m < 2) throw InvalidArgument("binary construction needs m >= 2");
  if (n < 2 || !detail::is_power_of_two(static_cast<std::uint64_t>(n))) {
    throw InvalidArgument("binary construction needs n a power of two >= 2");
  }
  const unsigned block = detail::log2_exact(static_cast<std::uint64_t>(n));
  const unsigned d = static_cast<unsigned>(m - 1) * block;
  if (d > 62) throw InvalidArgument("field GF(2^" + std::to_string(d) + ") too large");
  const Field f = Field::make(2, d);
  GammaLabeling gamma(f, m, n);
  for (int i = 0; i + 1 < m; ++i) {
    for (int j = 0; j < n; ++j) gamma.set({i, j}, Element{static_cast<std::uint64_t>(j) << (i * block)});
  }
  return gabidulin_lift(gamma, 1);
}

/// Parameters of a binary BCH parity-check matrix with N columns whose
/// every D - 1 columns are independent over GF(2).
struct BchSpec {
  unsigned design_distance = 1;  // D
  std::uint64_t columns = 1;     // N
  unsigned s = 0;                // ceil(log2(N + 1))
  unsigned t = 0;                // ceil((D - 1) / 2)
  unsigned bits = 1;             // 1 + t * s

  static BchSpec make(unsigned design_distance, std::uint64_t columns) {
    if (design_distance < 1 || columns < 1) throw InvalidArgument("BCH parameters must be positive");
    BchSpec spec;
    spec.design_distance = design_distance;
    spec.columns = columns;
    spec.s = detail::ceil_log2(columns + 1);
    spec.t = design_distance / 2;  // == ceil((D - 1) / 2)
    spec.bits = 1 + spec.t * spec.s;
    return spec;
  }
};

/// Column i (1-based) is [1 | beta^i | beta^{3i} | ... | beta^{(2t-1)i}] with
/// beta a generator of GF(2^s), each block s bits wide, parity bit lowest.
inline std::vector<std::uint64_t> bch_columns(const BchSpec& spec) {
  if (spec.s == 0 || spec.columns > (std::uint64_t{1} << spec.s) - 1) {
    throw InvalidArgument("not enough nonzero evaluation points for " + std::to_string(spec.columns) + " columns");
  }
  if (spec.bits > 62) throw InvalidArgument("BCH columns wider than 62 bits");
  const Field small = Field::make(2, spec.s);
  const Element beta = small.generator();
  std::vector<std::uint64_t> out;
  out.reserve(spec.columns);
  for (std::uint64_t i = 1; i <= spec.columns; ++i) {
    std::uint64_t column = 1;
    for (unsigned r = 0; r < spec.t; ++r) {
      const Element v = small.pow(beta, (2 * r + 1) * i);
      column |= v.value << (1 + r * spec.s);
    }
    out.push_back(column);
  }
  return out;
}

/// BCH labels for every cell, lifted to h global parities.
inline GridCode construct_bch_simple(int m, int n, int h) {
  if (m < 2) throw InvalidArgument("BCH construction needs m >= 2");
  if (h < 1) throw InvalidArgument("BCH construction needs h >= 1");
  if (!detail::is_power_of_two(static_cast<std::uint64_t>(n))) throw InvalidArgument("BCH construction needs n a power of two");
  const BchSpec spec = BchSpec::make(static_cast<unsigned>(2 * (m + h - 1) + 1), static_cast<std::uint64_t>(m) * n);
  const std::vector<std::uint64_t> columns = bch_columns(spec);
  const Field f = Field::make(2, spec.bits);
  GammaLabeling gamma(f, m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) gamma.set({i, j}, Element{columns[static_cast<std::size_t>(i) * n + j]});
  }
  return gabidulin_lift(gamma, h);
}

/// BCH labels on the first m - 1 rows, zero on the last row.
inline GridCode construct_bch_zero(int m, int n, int h) {
  if (m < 2) throw InvalidArgument("BCH-zero construction needs m >= 2");
  if (h < 1) throw InvalidArgument("BCH-zero construction needs h >= 1");
  if (!detail::is_power_of_two(static_cast<std::uint64_t>(n))) {
    throw InvalidArgument("BCH-zero construction needs n a power of two");
  }
  const BchSpec spec =
      BchSpec::make(static_cast<unsigned>(2 * (m + h - 2) + 1), static_cast<std::uint64_t>(m - 1) * n);
  const std::vector<std::uint64_t> columns = bch_columns(spec);
  const Field f = Field::make(2, spec.bits);
  GammaLabeling gamma(f, m, n);
  for (int i = 0; i + 1 < m; ++i) {
    for (int j = 0; j < n; ++j) gamma.set({i, j}, Element{columns[static_cast<std::size_t>(i) * n + j]});
  }
  return gabidulin_lift(gamma, h);
}

/// Greedy 3-AP-free subset of GF(q): scan residues upward and keep each one
/// that creates no x + y = 2z among distinct members.
inline std::vector<std::uint64_t> ap3_free_set(std::uint64_t q, std::size_t n) {
  if (q < 3 || q % 2 == 0 || !detail::is_prime(q)) throw InvalidArgument("3-AP-free sets need an odd prime q");
  std::vector<std::uint64_t> set;
  auto creates_progression = [&](std::uint64_t r) {
    for (std::size_t a = 0; a < set.size(); ++a) {
      for (std::size_t b = 0; b < set.size(); ++b) {
        if (a == b) continue;
        const std::uint64_t x = set[a];
        const std::uint64_t y = set[b];
        if ((x + y) % q == (2 * r) % q) return true;  // r in the middle
        if ((r + x) % q == (2 * y) % q) return true;  // r at an end
      }
    }
    return false;
  };
  for (std::uint64_t r = 0; r < q && set.size() < n; ++r) {
    if (!creates_progression(r)) set.push_back(r);
  }
  if (set.size() < n) {
    throw InvalidArgument("greedy 3-AP-free set in GF(" + std::to_string(q) + ") stalls at size " +
                          std::to_string(set.size()));
  }
  return set;
}

/// Smallest odd prime for which the greedy 3-AP-free set reaches size n.
inline std::uint64_t smallest_ap3_prime(std::size_t n) {
  for (std::uint64_t q = 3;; q += 2) {
    if (!detail::is_prime(q)) continue;
    try {
      ap3_free_set(q, n);
      return q;
    } catch (const InvalidArgument&) {
    }
  }
}

/// m = 3, h = 1 over a prime field: gamma(r, j) = r * a_j for r = 0, 1, 2.
inline GridCode construct_ap3(int n, std::uint64_t q) {
  const std::vector<std::uint64_t> a = ap3_free_set(q, static_cast<std::size_t>(n));
  const Field f = Field::make(q, 1);
  GammaLabeling gamma(f, 3, n);
  for (int r = 0; r < 3; ++r) {
    for (int j = 0; j < n; ++j) gamma.set({r, j}, f.mul(f.from_integer(r), Element{a[static_cast<std::size_t>(j)]}));
  }
  return gabidulin_lift(gamma, 1);
}

/// Extends an MR (m0, m0, 1, 1, 1) seed over GF(2^k) to m0 x n_target.
///
/// Column j splits as j = j' * m0 + j''. The low k bits copy the seed label
/// of (i, j''); block i of the next (m0 - 1) * log2(n_target / m0) bits holds
/// j' for rows i < m0 - 1, and the last row gets zero blocks. Only additive
/// structure matters for h = 1, so the seed's modulus need not match.
inline GridCode bootstrap_h1(const GridCode& seed, int n_target, const CycleCriterionOptions& verify = {}) {
  const int m0 = seed.rows();
  if (seed.cols() != m0) throw InvalidArgument("bootstrap seed must be square");
  if (seed.globals() != 1) throw InvalidArgument("bootstrap seed must have h = 1");
  if (seed.field().characteristic() != 2) throw InvalidArgument("bootstrap seed must be over a field of characteristic 2");
  if (!detail::is_power_of_two(static_cast<std::uint64_t>(m0)) || m0 < 2) {
    throw InvalidArgument("bootstrap seed size must be a power of two >= 2");
  }
  if (n_target < m0 || !detail::is_power_of_two(static_cast<std::uint64_t>(n_target))) {
    throw InvalidArgument("bootstrap target must be a power of two >= the seed size");
  }
  if (!is_mr_cycle_criterion(seed, verify).is_mr) throw NotMaximallyRecoverable("bootstrap seed is not MR");

  const unsigned k = seed.field().degree();
  const unsigned block = detail::log2_exact(static_cast<std::uint64_t>(n_target / m0));
  const unsigned d = k + block * static_cast<unsigned>(m0 - 1);
  if (d > 62) throw InvalidArgument("field GF(2^" + std::to_string(d) + ") too large");
  const Field f = Field::make(2, d);
  GammaLabeling gamma(f, m0, n_target);
  for (int i = 0; i < m0; ++i) {
    for (int j = 0; j < n_target; ++j) {
      const std::uint64_t outer = static_cast<std::uint64_t>(j / m0);
      const int inner = j % m0;
      std::uint64_t label = seed.parity({i, inner})[0].value;
      if (i + 1 < m0) label |= outer << (k + static_cast<unsigned>(i) * block);
      gamma.set({i, j}, Element{label});
    }
  }
  return gabidulin_lift(gamma, 1);
}

}  // namespace mrgrid
