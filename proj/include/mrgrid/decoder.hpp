#pragma once

// Codewords and erasure recovery.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mrgrid/code.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/matrix.hpp"

namespace mrgrid {

/// Symbols in cell order: cell (i, j) at position n*i + j.
using Codeword = std::vector<Element>;

/// A codeword with some symbols erased (std::nullopt).
using PartialWord = std::vector<std::optional<Element>>;

/// The erased pattern has dependent columns in H.
class NotCorrectable : public Error {
 public:
  NotCorrectable(std::size_t erased, std::size_t rank)
      : Error("erasure pattern of size " + std::to_string(erased) + " is not correctable: rank H|_E = " +
              std::to_string(rank)),
        erased_(erased),
        rank_(rank) {}

  std::size_t erased() const { return erased_; }
  std::size_t rank() const { return rank_; }
  std::size_t deficiency() const { return erased_ - rank_; }

 private:
  std::size_t erased_;
  std::size_t rank_;
};

/// Uniformly random codeword: random coefficients against a kernel basis of H.
inline Codeword random_codeword(const GridCode& code, std::uint64_t seed) {
  const Field& f = code.field();
  const Matrix basis = kernel_basis(build_parity_matrix(code));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  Codeword word(code.cells(), f.zero());
  for (std::size_t b = 0; b < basis.rows(); ++b) {
    const Element coeff{pick(rng)};
    if (coeff.value == 0) continue;
    for (std::size_t c = 0; c < word.size(); ++c) word[c] = f.add(word[c], f.mul(coeff, basis(b, c)));
  }
  return word;
}

inline bool is_codeword(const GridCode& code, const Codeword& word) {
  if (word.size() != code.cells()) return false;
  for (const Element v : build_parity_matrix(code).apply(word)) {
    if (v.value != 0) return false;
  }
  return true;
}

inline PartialWord erase(const Codeword& word, const Pattern& e) {
  if (word.size() != static_cast<std::size_t>(e.rows()) * e.cols()) throw InvalidArgument("word length does not match the grid");
  PartialWord out(word.begin(), word.end());
  for (const Cell& c : e.cells()) out[e.index(c)] = std::nullopt;
  return out;
}

inline Pattern erased_pattern(const GridCode& code, const PartialWord& word) {
  if (word.size() != code.cells()) throw InvalidArgument("word length does not match the grid");
  Pattern e(code.rows(), code.cols());
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (!word[k]) e.insert({static_cast<int>(k) / code.cols(), static_cast<int>(k) % code.cols()});
  }
  return e;
}

/// Solves H|_E x = -H|_{not E} * known for the erased symbols.
inline Codeword recover(const GridCode& code, const PartialWord& word) {
  const Field& f = code.field();
  const Pattern e = erased_pattern(code, word);
  const Matrix hm = build_parity_matrix(code);
  std::vector<Element> rhs(hm.rows(), f.zero());
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (!word[k]) continue;
    if (!f.contains(*word[k])) throw InvalidArgument("symbol outside the field");
    for (std::size_t r = 0; r < hm.rows(); ++r) rhs[r] = f.sub(rhs[r], f.mul(hm(r, k), *word[k]));
  }
  const Matrix he = restrict_columns(hm, e);
  const std::size_t r = rank(he);
  if (r < e.size()) throw NotCorrectable(e.size(), r);
  Solution s;
  try {
    s = solve(he, rhs);
  } catch (const InconsistentSystem&) {
    throw InconsistentSystem("known symbols are not the restriction of any codeword");
  }
  Codeword out(word.size(), f.zero());
  std::size_t next = 0;
  for (std::size_t k = 0; k < word.size(); ++k) out[k] = word[k] ? *word[k] : s.x[next++];
  return out;
}

}  // namespace mrgrid
