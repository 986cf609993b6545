#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "autocong/error.hpp"
#include "autocong/modulus.hpp"

namespace autocong {

using Exponent = std::uint32_t;
using ExponentVector = std::vector<Exponent>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// x1 most significant.
inline bool grlex_less(std::span<const Exponent> a, std::span<const Exponent> b) {
  std::uint64_t ta = 0, tb = 0;
  for (Exponent e : a) ta += e;
  for (Exponent e : b) tb += e;
  if (ta != tb) return ta < tb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

class ModPoly;
ModPoly poly_mul(const ModPoly& a, const ModPoly& b);

/// Sparse polynomial in k variables over Z/p^alpha. Terms are stored in
/// ascending graded-lex order with nonzero coefficients only, so two
/// polynomials are equal exactly when their storage is equal.
class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(std::size_t arity, ModulusSpec m) : k_(arity), m_(m) {}

  static ModPoly constant(std::size_t arity, ModulusSpec m, Residue c) {
    ModPoly r(arity, m);
    c = m.reduce_unsigned(c);
    if (c != 0) {
      r.exps_.assign(arity, 0);
      r.coeffs_.push_back(c);
    }
    return r;
  }

  static ModPoly variable(std::size_t arity, ModulusSpec m, std::size_t var, Exponent power = 1) {
    if (var >= arity) fail(ErrorCode::ArityMismatch, "variable index out of range");
    ExponentVector e(arity, 0);
    e[var] = power;
    return monomial(m, e, 1);
  }

  static ModPoly monomial(ModulusSpec m, std::span<const Exponent> e, Residue c) {
    ModPoly r(e.size(), m);
    c = m.reduce_unsigned(c);
    if (c != 0) {
      r.exps_.assign(e.begin(), e.end());
      r.coeffs_.push_back(c);
    }
    return r;
  }

  /// Builds a polynomial from arbitrary (possibly repeated, unreduced) terms.
  static ModPoly from_terms(std::size_t arity, ModulusSpec m,
                            const std::vector<std::pair<ExponentVector, Residue>>& terms) {
    std::vector<Exponent> exps;
    std::vector<Residue> coeffs;
    exps.reserve(terms.size() * arity);
    for (const auto& [e, c] : terms) {
      if (e.size() != arity) fail(ErrorCode::ArityMismatch, "term arity does not match polynomial");
      exps.insert(exps.end(), e.begin(), e.end());
      coeffs.push_back(m.reduce_unsigned(c));
    }
    return from_raw(arity, m, std::move(exps), std::move(coeffs));
  }

  /// Canonicalizes flat storage: sorts, merges repeated exponents, drops zeros.
  static ModPoly from_raw(std::size_t arity, ModulusSpec m, std::vector<Exponent> exps,
                          std::vector<Residue> coeffs) {
    ModPoly r(arity, m);
    const std::size_t n = coeffs.size();
    if (arity == 0) {
      Residue s = 0;
      for (Residue c : coeffs) s = m.add(s, m.reduce_unsigned(c));
      if (s) r.coeffs_.push_back(s);
      return r;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto at = [&](std::size_t t) { return std::span<const Exponent>(exps.data() + t * arity, arity); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grlex_less(at(a), at(b)); });
    r.exps_.reserve(exps.size());
    r.coeffs_.reserve(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      Residue s = 0;
      while (j < n && std::equal(at(order[i]).begin(), at(order[i]).end(), at(order[j]).begin())) {
        s = m.add(s, m.reduce_unsigned(coeffs[order[j]]));
        ++j;
      }
      if (s != 0) {
        auto e = at(order[i]);
        r.exps_.insert(r.exps_.end(), e.begin(), e.end());
        r.coeffs_.push_back(s);
      }
      i = j;
    }
    return r;
  }

  /// Adopts storage that the caller guarantees is already canonical.
  static ModPoly from_canonical(std::size_t arity, ModulusSpec m, std::vector<Exponent> exps,
                                std::vector<Residue> coeffs) {
    ModPoly r(arity, m);
    r.exps_ = std::move(exps);
    r.coeffs_ = std::move(coeffs);
    return r;
  }

  std::size_t arity() const noexcept { return k_; }
  const ModulusSpec& modulus() const noexcept { return m_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::span<const Exponent> exponents(std::size_t t) const { return {exps_.data() + t * k_, k_}; }
  Residue coefficient(std::size_t t) const { return coeffs_[t]; }
  const std::vector<Exponent>& raw_exponents() const noexcept { return exps_; }
  const std::vector<Residue>& raw_coefficients() const noexcept { return coeffs_; }

  Residue coefficient_of(std::span<const Exponent> e) const {
    if (e.size() != k_) fail(ErrorCode::ArityMismatch, "exponent vector arity");
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (grlex_less(exponents(mid), e)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < size() && std::equal(e.begin(), e.end(), exponents(lo).begin())) return coeffs_[lo];
    return 0;
  }

  /// Value at the origin; the lowest grlex term is the constant if present.
  Residue constant_term() const {
    if (is_zero()) return 0;
    for (Exponent e : exponents(0)) {
      if (e != 0) return 0;
    }
    return coeffs_[0];
  }

  bool is_constant() const { return is_zero() || (size() == 1 && total_degree() == 0); }

  /// Per-variable maxima.
  std::vector<long> degrees() const {
    std::vector<long> d(k_, is_zero() ? -1 : 0);
    for (std::size_t t = 0; t < size(); ++t) {
      for (std::size_t i = 0; i < k_; ++i) d[i] = std::max<long>(d[i], exps_[t * k_ + i]);
    }
    return d;
  }

  /// deg s = max over variables of the per-variable degree; -1 for zero.
  long degree() const {
    if (is_zero()) return -1;
    long d = 0;
    for (Exponent e : exps_) d = std::max<long>(d, e);
    return d;
  }

  long degree_in(std::size_t var) const {
    if (var >= k_) fail(ErrorCode::ArityMismatch, "variable index out of range");
    if (is_zero()) return -1;
    long d = 0;
    for (std::size_t t = 0; t < size(); ++t) d = std::max<long>(d, exps_[t * k_ + var]);
    return d;
  }

  long total_degree() const {
    if (is_zero()) return -1;
    auto last = exponents(size() - 1);
    return static_cast<long>(std::accumulate(last.begin(), last.end(), std::uint64_t{0}));
  }

  ModPoly operator-() const {
    ModPoly r = *this;
    for (auto& c : r.coeffs_) c = m_.neg(c);
    return r;
  }

  ModPoly scaled(Residue c) const {
    c = m_.reduce_unsigned(c);
    std::vector<Exponent> exps;
    std::vector<Residue> coeffs;
    exps.reserve(exps_.size());
    coeffs.reserve(size());
    for (std::size_t t = 0; t < size(); ++t) {
      Residue v = m_.mul(coeffs_[t], c);
      if (v == 0) continue;
      auto e = exponents(t);
      exps.insert(exps.end(), e.begin(), e.end());
      coeffs.push_back(v);
    }
    return from_canonical(k_, m_, std::move(exps), std::move(coeffs));
  }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b) { return merge(a, b, false); }
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) { return merge(a, b, true); }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) { return poly_mul(a, b); }

  friend bool operator==(const ModPoly& a, const ModPoly& b) {
    return a.k_ == b.k_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (Exponent e : exps_) mix(e);
    for (Residue c : coeffs_) mix(c);
    return static_cast<std::size_t>(h);
  }

  /// Variables print as x, y for arity <= 2 and x1..xk otherwise.
  std::string variable_name(std::size_t i) const {
    if (k_ == 1) return "x";
    if (k_ == 2) return i == 0 ? "x" : "y";
    return "x" + std::to_string(i + 1);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t t = 0; t < size(); ++t) {
      if (t) s += " + ";
      std::string mono;
      for (std::size_t i = 0; i < k_; ++i) {
        Exponent e = exps_[t * k_ + i];
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += variable_name(i);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) {
        s += std::to_string(coeffs_[t]);
      } else if (coeffs_[t] == 1) {
        s += mono;
      } else {
        s += std::to_string(coeffs_[t]) + "*" + mono;
      }
    }
    return s;
  }

 private:
  static ModPoly merge(const ModPoly& a, const ModPoly& b, bool subtract) {
    if (a.k_ != b.k_) fail(ErrorCode::ArityMismatch, "polynomial arities differ");
    const auto& m = a.m_;
    std::vector<Exponent> exps;
    std::vector<Residue> coeffs;
    exps.reserve(a.exps_.size() + b.exps_.size());
    coeffs.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    auto push = [&](std::span<const Exponent> e, Residue c) {
      if (c == 0) return;
      exps.insert(exps.end(), e.begin(), e.end());
      coeffs.push_back(c);
    };
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && grlex_less(a.exponents(i), b.exponents(j)))) {
        push(a.exponents(i), a.coeffs_[i]);
        ++i;
      } else if (i == a.size() || grlex_less(b.exponents(j), a.exponents(i))) {
        push(b.exponents(j), subtract ? m.neg(b.coeffs_[j]) : b.coeffs_[j]);
        ++j;
      } else {
        push(a.exponents(i), subtract ? m.sub(a.coeffs_[i], b.coeffs_[j]) : m.add(a.coeffs_[i], b.coeffs_[j]));
        ++i;
        ++j;
      }
    }
    return from_canonical(a.k_, m, std::move(exps), std::move(coeffs));
  }

  std::size_t k_ = 0;
  ModulusSpec m_;
  std::vector<Exponent> exps_;
  std::vector<Residue> coeffs_;
};

struct ModPolyHash {
  std::size_t operator()(const ModPoly& f) const noexcept { return f.hash(); }
};

namespace detail {

/// Dense coefficient box with lazy reduction: for narrow moduli products are
/// accumulated unreduced and folded back only when the sum nears 2^63.
class DenseAccumulator {
 public:
  DenseAccumulator(const ModulusSpec& m, std::vector<std::size_t> dims) : m_(m), dims_(std::move(dims)) {
    strides_.assign(dims_.size(), 1);
    std::size_t vol = 1;
    for (std::size_t i = dims_.size(); i-- > 0;) {
      strides_[i] = vol;
      vol *= dims_[i];
    }
    cells_.assign(vol, 0);
  }

  std::size_t volume() const noexcept { return cells_.size(); }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }

  std::size_t index_of(std::span<const Exponent> e) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i) idx += e[i] * strides_[i];
    return idx;
  }

  void add_product(std::size_t idx, Residue a, Residue b) {
    if (m_.narrow()) {
      std::uint64_t v = cells_[idx] + a * b;
      cells_[idx] = v >= kFold ? v % m_.modulus() : v;
    } else {
      cells_[idx] = m_.add(cells_[idx], m_.mul(a, b));
    }
  }

  void add(std::size_t idx, Residue a) {
    if (m_.narrow()) {
      std::uint64_t v = cells_[idx] + a;
      cells_[idx] = v >= kFold ? v % m_.modulus() : v;
    } else {
      cells_[idx] = m_.add(cells_[idx], a);
    }
  }

  /// Emits the nonzero cells as a canonical polynomial and clears the box.
  ModPoly extract() {
    const std::size_t k = dims_.size();
    std::vector<std::size_t> nz;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (cells_[idx] == 0) continue;
      cells_[idx] %= m_.modulus();
      if (cells_[idx] != 0) nz.push_back(idx);
    }
    // Cells are visited in lexicographic order; a stable counting sort on total
    // degree then yields graded-lex order.
    std::vector<Exponent> e(k);
    std::vector<std::uint32_t> total(nz.size());
    std::uint32_t max_total = 0;
    for (std::size_t t = 0; t < nz.size(); ++t) {
      std::size_t rem = nz[t];
      std::uint32_t s = 0;
      for (std::size_t i = 0; i < k; ++i) {
        s += static_cast<std::uint32_t>(rem / strides_[i]);
        rem %= strides_[i];
      }
      total[t] = s;
      max_total = std::max(max_total, s);
    }
    std::vector<std::size_t> start(max_total + 2, 0);
    for (auto s : total) ++start[s + 1];
    for (std::size_t s = 1; s < start.size(); ++s) start[s] += start[s - 1];
    std::vector<std::size_t> order(nz.size());
    for (std::size_t t = 0; t < nz.size(); ++t) order[start[total[t]]++] = nz[t];
    std::vector<Exponent> exps(order.size() * k);
    std::vector<Residue> coeffs(order.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
      std::size_t rem = order[t];
      for (std::size_t i = 0; i < k; ++i) {
        exps[t * k + i] = static_cast<Exponent>(rem / strides_[i]);
        rem %= strides_[i];
      }
      coeffs[t] = cells_[order[t]];
    }
    std::fill(cells_.begin(), cells_.end(), 0);
    return ModPoly::from_canonical(k, m_, std::move(exps), std::move(coeffs));
  }

 private:
  static constexpr std::uint64_t kFold = 1ull << 63;
  ModulusSpec m_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<std::uint64_t> cells_;
};

inline constexpr std::size_t kDenseVolumeLimit = std::size_t{1} << 24;

inline std::size_t box_volume(const std::vector<std::size_t>& dims) {
  std::size_t v = 1;
  for (std::size_t d : dims) {
    if (d != 0 && v > (std::size_t{1} << 62) / d) return static_cast<std::size_t>(-1);
    v *= d;
  }
  return v;
}

struct ExponentKeyHash {
  std::size_t operator()(const ExponentVector& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Exponent x : e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

inline ModPoly poly_mul(const ModPoly& a, const ModPoly& b) {
  if (a.arity() != b.arity()) fail(ErrorCode::ArityMismatch, "polynomial arities differ");
  if (!(a.modulus() == b.modulus())) fail(ErrorCode::InvalidModulus, "polynomial moduli differ");
  const std::size_t k = a.arity();
  const auto& m = a.modulus();
  if (a.is_zero() || b.is_zero()) return ModPoly(k, m);
  auto da = a.degrees(), db = b.degrees();
  std::vector<std::size_t> dims(k);
  for (std::size_t i = 0; i < k; ++i) dims[i] = static_cast<std::size_t>(da[i] + db[i] + 1);
  if (detail::box_volume(dims) <= detail::kDenseVolumeLimit) {
    detail::DenseAccumulator acc(m, dims);
    std::vector<std::size_t> ia(a.size()), ib(b.size());
    for (std::size_t t = 0; t < a.size(); ++t) ia[t] = acc.index_of(a.exponents(t));
    for (std::size_t t = 0; t < b.size(); ++t) ib[t] = acc.index_of(b.exponents(t));
    for (std::size_t s = 0; s < a.size(); ++s) {
      Residue ca = a.coefficient(s);
      for (std::size_t t = 0; t < b.size(); ++t) acc.add_product(ia[s] + ib[t], ca, b.coefficient(t));
    }
    return acc.extract();
  }
  std::unordered_map<ExponentVector, Residue, detail::ExponentKeyHash> acc;
  ExponentVector e(k);
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (std::size_t t = 0; t < b.size(); ++t) {
      auto ea = a.exponents(s), eb = b.exponents(t);
      for (std::size_t i = 0; i < k; ++i) e[i] = ea[i] + eb[i];
      auto& slot = acc[e];
      slot = m.add(slot, m.mul(a.coefficient(s), b.coefficient(t)));
    }
  }
  std::vector<std::pair<ExponentVector, Residue>> terms(acc.begin(), acc.end());
  return ModPoly::from_terms(k, m, terms);
}

/// f^e. Small bases are multiplied in one factor at a time (each step is
/// cheap against a short f); larger bases use binary exponentiation.
inline ModPoly poly_pow(const ModPoly& f, std::uint64_t e) {
  ModPoly result = ModPoly::constant(f.arity(), f.modulus(), 1);
  if (e == 0) return result;
  if (f.size() <= 64) {
    result = f;
    for (std::uint64_t i = 1; i < e; ++i) {
      result = poly_mul(result, f);
      if (result.is_zero()) break;
    }
    return result;
  }
  ModPoly base = f;
  while (e) {
    if (e & 1) result = poly_mul(result, base);
    e >>= 1;
    if (e) base = poly_mul(base, base);
  }
  return result;
}

/// Cartier operator: keeps monomials whose exponents are congruent to the
/// digits componentwise mod p and divides their exponents by p. The selected
/// terms keep their relative graded-lex order, so no re-sorting is needed.
inline ModPoly cartier(const ModPoly& f, std::span<const std::uint32_t> digits) {
  const std::size_t k = f.arity();
  const std::uint64_t p = f.modulus().p();
  if (digits.size() != k) fail(ErrorCode::ArityMismatch, "digit vector does not match arity");
  for (auto d : digits) {
    if (d >= p) fail(ErrorCode::DigitOutOfRange, "digit " + std::to_string(d) + " is not below p");
  }
  std::vector<Exponent> exps;
  std::vector<Residue> coeffs;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    bool keep = true;
    for (std::size_t i = 0; i < k && keep; ++i) keep = e[i] % p == digits[i];
    if (!keep) continue;
    for (std::size_t i = 0; i < k; ++i) exps.push_back(static_cast<Exponent>(e[i] / p));
    coeffs.push_back(f.coefficient(t));
  }
  return ModPoly::from_canonical(k, f.modulus(), std::move(exps), std::move(coeffs));
}

/// Delta_r: the monomials a x^n y^m of a bivariate polynomial with n - m = r mod p.
inline ModPoly bin_by_difference(const ModPoly& f, std::uint64_t r) {
  if (f.arity() != 2) fail(ErrorCode::ArityMismatch, "binning by difference needs two variables");
  const std::uint64_t p = f.modulus().p();
  if (r >= p) fail(ErrorCode::DigitOutOfRange, "residue class out of range");
  std::vector<Exponent> exps;
  std::vector<Residue> coeffs;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    std::uint64_t diff = (e[0] % p + p - e[1] % p) % p;
    if (diff != r) continue;
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(f.coefficient(t));
  }
  return ModPoly::from_canonical(2, f.modulus(), std::move(exps), std::move(coeffs));
}

inline ModPoly derivative(const ModPoly& f, std::size_t var) {
  const std::size_t k = f.arity();
  if (var >= k) fail(ErrorCode::ArityMismatch, "variable index out of range");
  const auto& m = f.modulus();
  std::vector<Exponent> exps;
  std::vector<Residue> coeffs;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    if (e[var] == 0) continue;
    Residue c = m.mul(f.coefficient(t), m.reduce_unsigned(e[var]));
    if (c == 0) continue;
    for (std::size_t i = 0; i < k; ++i) exps.push_back(i == var ? e[i] - 1 : e[i]);
    coeffs.push_back(c);
  }
  return ModPoly::from_canonical(k, m, std::move(exps), std::move(coeffs));
}

/// Applies an arbitrary exponent map (e.g. a monomial substitution) and
/// re-canonicalizes. `map` writes the image of its first argument into the second.
template <typename Map>
ModPoly map_exponents(const ModPoly& f, std::size_t new_arity, Map&& map) {
  std::vector<Exponent> exps;
  std::vector<Residue> coeffs;
  exps.reserve(f.size() * new_arity);
  ExponentVector out(new_arity);
  for (std::size_t t = 0; t < f.size(); ++t) {
    map(f.exponents(t), std::span<Exponent>(out));
    exps.insert(exps.end(), out.begin(), out.end());
    coeffs.push_back(f.coefficient(t));
  }
  return ModPoly::from_raw(new_arity, f.modulus(), std::move(exps), std::move(coeffs));
}

/// Reinterprets the coefficients modulo a divisor p^beta of the current modulus.
inline ModPoly reduce_modulus(const ModPoly& f, const ModulusSpec& target) {
  if (target.p() != f.modulus().p() || target.alpha() > f.modulus().alpha()) {
    fail(ErrorCode::InvalidModulus, "target modulus must divide the source modulus");
  }
  std::vector<Exponent> exps;
  std::vector<Residue> coeffs;
  for (std::size_t t = 0; t < f.size(); ++t) {
    Residue c = target.reduce_unsigned(f.coefficient(t));
    if (c == 0) continue;
    auto e = f.exponents(t);
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(c);
  }
  return ModPoly::from_canonical(f.arity(), target, std::move(exps), std::move(coeffs));
}

}  // namespace autocong
