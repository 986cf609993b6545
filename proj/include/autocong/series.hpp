#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "autocong/error.hpp"
#include "autocong/mod_poly.hpp"
#include "autocong/modulus.hpp"
#include "autocong/partition.hpp"

namespace autocong {

/// Coefficients of a k-variate power series for every exponent vector with
/// all entries below the order T (a box truncation). Index layout is
/// row-major with x1 most significant.
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t arity, std::size_t order, ModulusSpec m) : k_(arity), T_(order), m_(m) {
    std::size_t vol = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (order != 0 && vol > (std::size_t{1} << 40) / order) fail(ErrorCode::BudgetExceeded, "series box too large");
      vol *= order;
    }
    coeffs_.assign(vol, 0);
  }

  static TruncatedSeries from_poly(const ModPoly& f, std::size_t order) {
    TruncatedSeries s(f.arity(), order, f.modulus());
    for (std::size_t t = 0; t < f.size(); ++t) {
      auto e = f.exponents(t);
      if (!s.inside(e)) continue;
      s.coeffs_[s.index_of(e)] = f.coefficient(t);
    }
    return s;
  }

  std::size_t arity() const noexcept { return k_; }
  std::size_t order() const noexcept { return T_; }
  const ModulusSpec& modulus() const noexcept { return m_; }
  std::size_t volume() const noexcept { return coeffs_.size(); }

  bool inside(std::span<const Exponent> e) const {
    for (Exponent x : e) {
      if (x >= T_) return false;
    }
    return true;
  }

  std::size_t index_of(std::span<const Exponent> e) const {
    std::size_t idx = 0;
    for (Exponent x : e) idx = idx * T_ + x;
    return idx;
  }

  ExponentVector exponents_of(std::size_t idx) const {
    ExponentVector e(k_);
    for (std::size_t i = k_; i-- > 0;) {
      e[i] = static_cast<Exponent>(idx % T_);
      idx /= T_;
    }
    return e;
  }

  Residue at(std::span<const Exponent> e) const {
    if (e.size() != k_) fail(ErrorCode::ArityMismatch, "exponent vector arity");
    if (!inside(e)) fail(ErrorCode::PrecisionTooLow, "coefficient outside the truncation box");
    return coeffs_[index_of(e)];
  }
  Residue at_index(std::size_t idx) const { return coeffs_.at(idx); }
  void set(std::span<const Exponent> e, Residue v) { coeffs_.at(index_of(e)) = m_.reduce_unsigned(v); }

  const std::vector<Residue>& raw() const noexcept { return coeffs_; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.k_ != b.k_ || a.T_ != b.T_) fail(ErrorCode::ArityMismatch, "series shapes differ");
    TruncatedSeries r(a.k_, a.T_, a.m_);
    const auto& m = a.m_;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < b.volume(); ++j) {
      if (b.coeffs_[j]) nz.push_back(j);
    }
    for (std::size_t i = 0; i < a.volume(); ++i) {
      if (!a.coeffs_[i]) continue;
      ExponentVector ei = a.exponents_of(i);
      for (std::size_t j : nz) {
        ExponentVector ej = b.exponents_of(j);
        bool ok = true;
        for (std::size_t v = 0; v < a.k_ && ok; ++v) ok = ei[v] + ej[v] < a.T_;
        if (!ok) continue;
        std::size_t idx = i + j;  // box coordinates add without carry when inside
        r.coeffs_[idx] = m.add(r.coeffs_[idx], m.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    return r;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    for (std::size_t i = 0; i < a.volume(); ++i) a.coeffs_[i] = a.m_.add(a.coeffs_[i], b.coeffs_.at(i));
    return a;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::size_t k_;
  std::size_t T_;
  ModulusSpec m_;
  std::vector<Residue> coeffs_;
};

/// Solves Q * S = R on the box of order T. Box indices in increasing order are
/// a linear extension of the componentwise order, so each coefficient only
/// depends on ones already computed.
inline TruncatedSeries series_quotient(const ModPoly& R, const ModPoly& Q, std::size_t order) {
  if (R.arity() != Q.arity()) fail(ErrorCode::ArityMismatch, "numerator and denominator arities differ");
  const auto& m = Q.modulus();
  Residue q0 = Q.constant_term();
  if (!m.is_unit(q0)) fail(ErrorCode::NotUnit, "denominator constant term is not a unit");
  Residue inv = m.inverse(q0);
  TruncatedSeries S = TruncatedSeries::from_poly(R, order);
  const std::size_t k = Q.arity();
  struct Shift {
    ExponentVector e;
    std::size_t offset;
    Residue c;
  };
  std::vector<Shift> shifts;
  for (std::size_t t = 0; t < Q.size(); ++t) {
    auto e = Q.exponents(t);
    bool zero = true;
    for (Exponent x : e) zero = zero && x == 0;
    if (zero || !S.inside(e)) continue;
    shifts.push_back({ExponentVector(e.begin(), e.end()), S.index_of(e), Q.coefficient(t)});
  }
  std::vector<Residue> c = S.raw();
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    ExponentVector e = S.exponents_of(idx);
    Residue acc = c[idx];
    for (const auto& sh : shifts) {
      bool ok = true;
      for (std::size_t v = 0; v < k && ok; ++v) ok = sh.e[v] <= e[v];
      if (!ok) continue;
      acc = m.sub(acc, m.mul(sh.c, c[idx - sh.offset]));
    }
    c[idx] = m.mul(acc, inv);
  }
  TruncatedSeries out(k, order, m);
  for (std::size_t idx = 0; idx < c.size(); ++idx) out.set(S.exponents_of(idx), c[idx]);
  return out;
}

inline TruncatedSeries series_inverse(const ModPoly& Q, std::size_t order) {
  return series_quotient(ModPoly::constant(Q.arity(), Q.modulus(), 1), Q, order);
}

/// Coefficients of D_B(R/Q) for every index tuple with each entry below N,
/// listed row-major over the |B| block indices (first block most significant).
inline std::vector<Residue> diagonal_coefficients(const ModPoly& R, const ModPoly& Q, const SetPartition& B,
                                                  std::size_t N) {
  if (B.arity() != Q.arity()) fail(ErrorCode::InvalidPartition, "partition does not match arity");
  TruncatedSeries S = series_quotient(R, Q, N);
  const std::size_t b = B.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < b; ++i) count *= N;
  std::vector<Residue> out(count);
  std::vector<std::uint32_t> idx(b);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = b; i-- > 0;) {
      idx[i] = static_cast<std::uint32_t>(rem % N);
      rem /= N;
    }
    auto e = B.expand(idx);
    out[flat] = S.at(e);
  }
  return out;
}

}  // namespace autocong
