#pragma once

#include <cstdint>
#include <string>

#include "autocong/error.hpp"

namespace autocong {

using Residue = std::uint64_t;

namespace detail {

__extension__ using u128 = unsigned __int128;

inline std::uint64_t mulmod_wide(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

inline std::uint64_t powmod_wide(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_wide(r, a, m);
    a = mulmod_wide(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the fixed witness set is exact for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod_wide(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_wide(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The ring Z/p^alpha. Moduli are limited to p^alpha < 2^63; larger inputs are
/// rejected with ModulusTooLarge rather than silently wrapping.
class ModulusSpec {
 public:
  static constexpr std::uint64_t kLimit = 1ull << 63;

  ModulusSpec() = default;

  ModulusSpec(std::uint64_t p, unsigned alpha) : p_(p), alpha_(alpha) {
    if (!is_prime(p)) fail(ErrorCode::InvalidModulus, std::to_string(p) + " is not prime");
    if (alpha < 1) fail(ErrorCode::InvalidModulus, "alpha must be at least 1");
    std::uint64_t m = 1;
    for (unsigned i = 0; i < alpha; ++i) {
      if (m > (kLimit - 1) / p) {
        fail(ErrorCode::ModulusTooLarge,
             std::to_string(p) + "^" + std::to_string(alpha) + " does not fit below 2^63");
      }
      m *= p;
    }
    modulus_ = m;
    narrow_ = m <= (1ull << 31);
  }

  std::uint64_t p() const noexcept { return p_; }
  unsigned alpha() const noexcept { return alpha_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  /// True when products of two residues fit in 62 bits.
  bool narrow() const noexcept { return narrow_; }

  /// p^(alpha-1)
  std::uint64_t previous_power() const noexcept { return modulus_ / p_; }

  Residue reduce(std::int64_t v) const noexcept {
    auto m = static_cast<std::int64_t>(modulus_);
    std::int64_t r = v % m;
    return static_cast<Residue>(r < 0 ? r + m : r);
  }
  Residue reduce_unsigned(std::uint64_t v) const noexcept { return v % modulus_; }

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + modulus_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : modulus_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return narrow_ ? (a * b) % modulus_ : detail::mulmod_wide(a, b, modulus_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue r = 1 % modulus_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  bool is_unit(Residue a) const noexcept { return a % p_ != 0; }

  /// Inverse of a unit; Euler's theorem with phi(p^alpha) = p^alpha - p^(alpha-1).
  Residue inverse(Residue a) const {
    a %= modulus_;
    if (!is_unit(a)) {
      fail(ErrorCode::NotUnit, std::to_string(a) + " is not invertible mod " + std::to_string(modulus_));
    }
    return pow(a, modulus_ - previous_power() - 1);
  }

  /// p-adic valuation of a residue, capped at alpha (so 0 maps to alpha).
  unsigned valuation(Residue a) const noexcept {
    unsigned v = 0;
    a %= modulus_;
    if (a == 0) return alpha_;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return v;
  }

  friend bool operator==(const ModulusSpec& a, const ModulusSpec& b) noexcept {
    return a.p_ == b.p_ && a.alpha_ == b.alpha_;
  }

  std::string to_string() const {
    return std::to_string(p_) + "^" + std::to_string(alpha_) + " = " + std::to_string(modulus_);
  }

 private:
  std::uint64_t p_ = 2;
  unsigned alpha_ = 1;
  std::uint64_t modulus_ = 2;
  bool narrow_ = true;
};

inline Residue residue_inverse(Residue a, const ModulusSpec& m) { return m.inverse(a); }

}  // namespace autocong
