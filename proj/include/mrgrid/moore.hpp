#pragma once

#include <span>

#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/matrix.hpp"

namespace mrgrid {

/// The h x h matrix whose entry (r, c) is alphas[c]^{p^r}. Nonsingular exactly
/// when the alphas are linearly independent over the prime field.
inline Matrix moore_matrix(const Field& field, std::span<const Element> alphas) {
  const std::size_t h = alphas.size();
  if (field.degree() < h) {
    throw InvalidArgument("Moore matrix of size " + std::to_string(h) + " needs extension degree >= h, field is " +
                          field.describe());
  }
  Matrix out(field, h, h);
  for (std::size_t c = 0; c < h; ++c) {
    if (!field.contains(alphas[c])) throw InvalidArgument("element outside the field");
    for (std::size_t r = 0; r < h; ++r) out(r, c) = field.frobenius(alphas[c], static_cast<unsigned>(r));
  }
  return out;
}

}  // namespace mrgrid
