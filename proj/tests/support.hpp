#pragma once

// Bridges between library types and the plain-data oracles.

#include <cstdint>
#include <random>
#include <vector>

#include "mrgrid/code.hpp"
#include "mrgrid/field.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::SlowField slow(const mrgrid::Field& f) {
  return {f.characteristic(), f.degree(), std::vector<std::uint64_t>(f.modulus().begin(), f.modulus().end())};
}

inline oracle::PlainCode plain(const mrgrid::GridCode& code) {
  oracle::PlainCode out{slow(code.field()), code.rows(), code.cols(), code.globals(), {}};
  out.gp.resize(static_cast<std::size_t>(code.rows()));
  for (int i = 0; i < code.rows(); ++i) {
    for (int j = 0; j < code.cols(); ++j) {
      std::vector<std::uint64_t> v;
      for (const auto e : code.parity({i, j})) v.push_back(e.value);
      out.gp[static_cast<std::size_t>(i)].push_back(v);
    }
  }
  return out;
}

/// Code with independent uniform parities.
inline mrgrid::GridCode random_code(const mrgrid::Field& f, int m, int n, int h, std::mt19937_64& rng) {
  mrgrid::GridCode code(f, m, n, h);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < h; ++k) code.set_parity({i, j}, k, mrgrid::Element{pick(rng)});
    }
  }
  return code;
}

}  // namespace testing_support
