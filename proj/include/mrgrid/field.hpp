#pragma once

// Arithmetic in GF(p^d) for a prime p and p^d < 2^63.
//
// Elements are packed base-p digits: the coefficient of x^i is digit i, so
// an element's encoding is an integer in [0, q). For p = 2 this is the usual
// bit-vector representation.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrgrid/error.hpp"

namespace mrgrid {

struct Element {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t odd = n - 1;
  unsigned twos = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++twos;
  }
  for (std::uint64_t base : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(base, odd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < twos; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Returns (p, d) when q = p^d for a prime p, otherwise (0, 0).
inline std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    unsigned d = 0;
    while (q % p == 0) {
      q /= p;
      ++d;
    }
    if (q != 1 || !is_prime(p)) return {0, 0};
    return {p, d};
  }
  return is_prime(q) ? std::pair<std::uint64_t, unsigned>{q, 1} : std::pair<std::uint64_t, unsigned>{0, 0};
}

/// Distinct prime factors by trial division; fine for the group orders used here.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over GF(p), coefficient of x^i at index i, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i < f.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(prod), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (exp != 0) {
    if (exp & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    exp >>= 1;
  }
  return result;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or test: f of degree d is irreducible iff gcd(x^{p^i} - x, f) = 1 for
/// all 1 <= i <= d/2. The i = 1 step is exactly the "no roots" check.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  Poly x_power = poly_mod(Poly{0, 1}, f, p);
  for (std::size_t i = 1; i <= d / 2; ++i) {
    x_power = poly_powmod(x_power, p, f, p);
    Poly diff = x_power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

struct FieldData {
  std::uint64_t p = 2;
  unsigned d = 1;
  std::uint64_t q = 2;
  std::vector<std::uint64_t> modulus;  // d + 1 digits, monic
  std::vector<std::uint64_t> pow_p;    // p^i for i < d
  std::uint64_t reduce_mask = 0;       // p = 2: low d bits of the modulus
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
};

}  // namespace detail

/// A finite field GF(p^d). Cheap to copy; immutable and thread-safe to share.
class Field {
 public:
  static constexpr unsigned kTableMaxDegree = 16;

  /// GF(p^d) under the lexicographically smallest monic irreducible modulus,
  /// comparing the low d coefficients as a base-p integer.
  static Field make(std::uint64_t p, unsigned d) {
    check_parameters(p, d);
    std::uint64_t q = ipow(p, d);
    for (std::uint64_t low = 0; low < q; ++low) {
      detail::Poly f(d + 1, 0);
      std::uint64_t rest = low;
      for (unsigned i = 0; i < d; ++i) {
        f[i] = rest % p;
        rest /= p;
      }
      f[d] = 1;
      if (detail::is_irreducible(f, p)) return Field(p, d, std::move(f));
    }
    throw InvalidArgument("no irreducible polynomial found");  // unreachable
  }

  /// GF(q) for a prime power q.
  static Field of_order(std::uint64_t q) {
    auto [p, d] = detail::prime_power(q);
    if (p == 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return make(p, d);
  }

  /// GF(p^d) under an explicit modulus given low-degree first (d + 1 digits).
  static Field with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    if (modulus.size() < 2) throw InvalidArgument("modulus must have degree >= 1");
    const unsigned d = static_cast<unsigned>(modulus.size() - 1);
    check_parameters(p, d);
    for (std::uint64_t c : modulus) {
      if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    }
    if (modulus.back() != 1) throw InvalidArgument("modulus must be monic");
    if (!detail::is_irreducible(modulus, p)) throw InvalidArgument("modulus is not irreducible");
    return Field(p, d, std::move(modulus));
  }

  std::uint64_t characteristic() const { return data_->p; }
  unsigned degree() const { return data_->d; }
  std::uint64_t order() const { return data_->q; }
  std::span<const std::uint64_t> modulus() const { return data_->modulus; }
  bool has_tables() const { return !data_->exp_table.empty(); }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }

  bool contains(Element a) const { return a.value < data_->q; }

  /// Validated conversion from an encoding.
  Element element(std::uint64_t encoding) const {
    if (encoding >= data_->q) {
      throw InvalidArgument("encoding " + std::to_string(encoding) + " out of range for GF(" +
                            std::to_string(data_->q) + ")");
    }
    return Element{encoding};
  }

  /// The image of the integer n under Z -> GF(p).
  Element from_integer(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(data_->p);
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return Element{static_cast<std::uint64_t>(r)};
  }

  std::uint64_t digit(Element a, unsigned i) const {
    if (data_->p == 2) return (a.value >> i) & 1;
    return (a.value / data_->pow_p[i]) % data_->p;
  }

  Element add(Element a, Element b) const {
    const auto& f = *data_;
    if (f.p == 2) return Element{a.value ^ b.value};
    if (f.d == 1) {
      std::uint64_t s = a.value + b.value;
      return Element{s >= f.p ? s - f.p : s};
    }
    std::uint64_t out = 0;
    std::uint64_t x = a.value;
    std::uint64_t y = b.value;
    for (unsigned i = 0; i < f.d; ++i) {
      std::uint64_t s = x % f.p + y % f.p;
      if (s >= f.p) s -= f.p;
      out += s * f.pow_p[i];
      x /= f.p;
      y /= f.p;
    }
    return Element{out};
  }

  Element neg(Element a) const {
    const auto& f = *data_;
    if (f.p == 2) return a;
    if (f.d == 1) return Element{a.value == 0 ? 0 : f.p - a.value};
    std::uint64_t out = 0;
    std::uint64_t x = a.value;
    for (unsigned i = 0; i < f.d; ++i) {
      std::uint64_t c = x % f.p;
      out += (c == 0 ? 0 : f.p - c) * f.pow_p[i];
      x /= f.p;
    }
    return Element{out};
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (has_tables()) return mul_tables(a, b);
    return mul_reduce(a, b);
  }

  /// Log/antilog multiplication; only available when has_tables().
  Element mul_tables(Element a, Element b) const {
    const auto& f = *data_;
    if (f.exp_table.empty()) throw InvalidArgument("field has no multiplication tables");
    if (a.value == 0 || b.value == 0) return Element{0};
    return Element{f.exp_table[f.log_table[a.value] + f.log_table[b.value]]};
  }

  /// Schoolbook polynomial multiplication followed by reduction.
  Element mul_reduce(Element a, Element b) const {
    const auto& f = *data_;
    if (f.p == 2) {
      std::uint64_t x = a.value;
      std::uint64_t y = b.value;
      std::uint64_t r = 0;
      const std::uint64_t top = std::uint64_t{1} << (f.d - 1);
      while (y != 0) {
        if (y & 1) r ^= x;
        y >>= 1;
        const bool carry = (x & top) != 0;
        x = (x << 1) & (top | (top - 1));
        if (carry) x ^= f.reduce_mask;
      }
      return Element{r};
    }
    if (f.d == 1) return Element{detail::mulmod(a.value, b.value, f.p)};
    std::vector<std::uint64_t> xa(f.d), xb(f.d);
    std::uint64_t x = a.value;
    std::uint64_t y = b.value;
    for (unsigned i = 0; i < f.d; ++i) {
      xa[i] = x % f.p;
      xb[i] = y % f.p;
      x /= f.p;
      y /= f.p;
    }
    std::vector<std::uint64_t> prod(2 * f.d - 1, 0);
    for (unsigned i = 0; i < f.d; ++i) {
      if (xa[i] == 0) continue;
      for (unsigned j = 0; j < f.d; ++j) {
        prod[i + j] = (prod[i + j] + detail::mulmod(xa[i], xb[j], f.p)) % f.p;
      }
    }
    for (std::size_t k = prod.size(); k-- > f.d;) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (unsigned i = 0; i < f.d; ++i) {
        const std::size_t at = k - f.d + i;
        prod[at] = (prod[at] + f.p - detail::mulmod(c, f.modulus[i], f.p)) % f.p;
      }
      prod[k] = 0;
    }
    std::uint64_t out = 0;
    for (unsigned i = 0; i < f.d; ++i) out += prod[i] * f.pow_p[i];
    return Element{out};
  }

  Element pow(Element a, std::uint64_t exp) const {
    Element result = one();
    while (exp != 0) {
      if (exp & 1) result = mul(result, a);
      a = mul(a, a);
      exp >>= 1;
    }
    return result;
  }

  Element inv(Element a) const {
    if (a.value == 0) throw InvalidArgument("inverse of zero");
    const auto& f = *data_;
    if (has_tables()) return Element{f.exp_table[(f.q - 1) - f.log_table[a.value]]};
    if (f.d == 1) return Element{detail::powmod(a.value, f.p - 2, f.p)};
    return pow(a, f.q - 2);
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// a^{p^k}.
  Element frobenius(Element a, unsigned k) const {
    const auto& f = *data_;
    k %= f.d;
    for (unsigned i = 0; i < k; ++i) a = pow(a, f.p);
    return a;
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Element a) const {
    if (a.value == 0) throw InvalidArgument("zero has no multiplicative order");
    std::uint64_t order = data_->q - 1;
    for (std::uint64_t r : detail::prime_factors(order)) {
      while (order % r == 0 && pow(a, order / r) == one()) order /= r;
    }
    return order;
  }

  /// x when it generates the multiplicative group, otherwise the generator
  /// with the smallest encoding.
  Element generator() const {
    const auto& f = *data_;
    if (f.d >= 2 && multiplicative_order(Element{f.p}) == f.q - 1) return Element{f.p};
    for (std::uint64_t v = 1; v < f.q; ++v) {
      if (multiplicative_order(Element{v}) == f.q - 1) return Element{v};
    }
    throw InvalidArgument("no generator");  // unreachable
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.data_ == b.data_ || (a.data_->p == b.data_->p && a.data_->modulus == b.data_->modulus);
  }

  std::string describe() const {
    std::string s = "GF(" + std::to_string(data_->p);
    if (data_->d > 1) s += "^" + std::to_string(data_->d);
    return s + ")";
  }

 private:
  Field(std::uint64_t p, unsigned d, std::vector<std::uint64_t> modulus) {
    auto data = std::make_shared<detail::FieldData>();
    data->p = p;
    data->d = d;
    data->q = ipow(p, d);
    data->modulus = std::move(modulus);
    data->pow_p.resize(d);
    for (unsigned i = 0; i < d; ++i) data->pow_p[i] = ipow(p, i);
    if (p == 2) {
      for (unsigned i = 0; i < d; ++i) data->reduce_mask |= data->modulus[i] << i;
    }
    data_ = data;
    if (p == 2 && d <= kTableMaxDegree) {
      const Element g = generator();
      const std::uint64_t q = data->q;
      data->exp_table.resize(2 * (q - 1) + 1);
      data->log_table.assign(q, 0);
      Element x = one();
      for (std::uint64_t k = 0; k < q - 1; ++k) {
        data->exp_table[k] = static_cast<std::uint32_t>(x.value);
        data->exp_table[k + q - 1] = static_cast<std::uint32_t>(x.value);
        data->log_table[x.value] = static_cast<std::uint32_t>(k);
        x = mul_reduce(x, g);
      }
      data->exp_table[2 * (q - 1)] = data->exp_table[0];
    }
  }

  static std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
  }

  static void check_parameters(std::uint64_t p, unsigned d) {
    if (!detail::is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (d < 1) throw InvalidArgument("extension degree must be >= 1");
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < d; ++i) {
      q *= p;
      if (q >= (static_cast<unsigned __int128>(1) << 63)) {
        throw InvalidArgument("p^d must be below 2^63");
      }
    }
  }

  std::shared_ptr<const detail::FieldData> data_;
};

}  // namespace mrgrid
