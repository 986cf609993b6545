#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "autocong/error.hpp"
#include "autocong/modulus.hpp"

namespace autocong::christol {

/// Dense univariate polynomial over F_p; coefficient i multiplies x^i. The
/// coefficient vector never has trailing zeros.
class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::uint64_t p) : p_(p) {}
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& v : c_) v %= p_;
    trim();
  }

  static FpPoly constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, {v}); }
  static FpPoly monomial(std::uint64_t p, std::size_t e, std::uint64_t v = 1) {
    std::vector<std::uint64_t> c(e + 1, 0);
    c[e] = v;
    return FpPoly(p, std::move(c));
  }

  std::uint64_t p() const noexcept { return p_; }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }

  /// Exponent of the largest power of x dividing the polynomial (0 for zero).
  std::size_t valuation() const {
    std::size_t v = 0;
    while (v < c_.size() && c_[v] == 0) ++v;
    return c_.empty() ? 0 : v;
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % p;
    return FpPoly(p, std::move(c));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + p - b[i]) % p;
    return FpPoly(p, std::move(c));
  }
  FpPoly operator-() const { return FpPoly(p_) - *this; }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.p_;
    if (a.is_zero() || b.is_zero()) return FpPoly(p);
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + detail::mulmod_wide(a.c_[i], b.c_[j], p)) % p;
    }
    return FpPoly(p, std::move(c));
  }
  FpPoly scaled(std::uint64_t s) const {
    std::vector<std::uint64_t> c = c_;
    for (auto& v : c) v = detail::mulmod_wide(v, s % p_, p_);
    return FpPoly(p_, std::move(c));
  }
  FpPoly shifted(std::size_t e) const {
    if (is_zero()) return *this;
    std::vector<std::uint64_t> c(e, 0);
    c.insert(c.end(), c_.begin(), c_.end());
    return FpPoly(p_, std::move(c));
  }
  FpPoly truncated(std::size_t n) const {
    std::vector<std::uint64_t> c(c_.begin(), c_.begin() + std::min(n, c_.size()));
    return FpPoly(p_, std::move(c));
  }
  FpPoly pow(std::uint64_t e) const {
    FpPoly r = constant(p_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_; }

  std::uint64_t inverse_of(std::uint64_t a) const { return detail::powmod_wide(a, p_ - 2, p_); }

  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
    if (d.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    std::vector<std::uint64_t> r = c_;
    long dd = d.degree();
    std::vector<std::uint64_t> q(r.size() >= d.c_.size() ? r.size() - d.c_.size() + 1 : 0, 0);
    std::uint64_t inv = inverse_of(d.lead());
    for (long i = static_cast<long>(r.size()) - 1; i >= dd; --i) {
      std::uint64_t f = detail::mulmod_wide(r[i], inv, p_);
      if (!f) continue;
      q[i - dd] = f;
      for (long j = 0; j <= dd; ++j) r[i - dd + j] = (r[i - dd + j] + p_ - detail::mulmod_wide(f, d.c_[j], p_)) % p_;
    }
    return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
  }

  FpPoly monic() const { return is_zero() ? *this : scaled(inverse_of(lead())); }

  /// a(x)^p = a(x^p) over F_p.
  FpPoly frobenius() const {
    if (is_zero()) return *this;
    std::vector<std::uint64_t> c((c_.size() - 1) * p_ + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * p_] = c_[i];
    return FpPoly(p_, std::move(c));
  }

  /// Lambda_d: coefficients at exponents d, d + p, d + 2p, ...
  FpPoly cartier(std::uint64_t d) const {
    std::vector<std::uint64_t> c;
    for (std::size_t i = d; i < c_.size(); i += p_) c.push_back(c_[i]);
    return FpPoly(p_, std::move(c));
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (!c_[i]) continue;
      if (!s.empty()) s += " + ";
      std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
      if (mono.empty()) {
        s += std::to_string(c_[i]);
      } else if (c_[i] == 1) {
        s += mono;
      } else {
        s += std::to_string(c_[i]) + "*" + mono;
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

inline FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Element of F_p(x) in lowest terms with a monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(FpPoly num) : num_(std::move(num)), den_(FpPoly::constant(num_.p(), 1)) {}
  RatFunc(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorCode::ZeroPolynomial, "zero denominator");
    normalize();
  }

  static RatFunc zero(std::uint64_t p) { return RatFunc(FpPoly(p)); }
  static RatFunc one(std::uint64_t p) { return RatFunc(FpPoly::constant(p, 1)); }

  const FpPoly& num() const noexcept { return num_; }
  const FpPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by zero in F_p(x)");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc frobenius() const { return RatFunc(num_.frobenius(), den_.frobenius()); }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = FpPoly::constant(num_.p(), 1);
      return;
    }
    FpPoly g = gcd(num_, den_);
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
    std::uint64_t inv = den_.inverse_of(den_.lead());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }

  FpPoly num_;
  FpPoly den_;
};

}  // namespace autocong::christol
