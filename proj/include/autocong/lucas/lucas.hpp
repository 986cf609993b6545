#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "autocong/dfao.hpp"
#include "autocong/error.hpp"
#include "autocong/mod_poly.hpp"
#include "autocong/modulus.hpp"
#include "autocong/partition.hpp"

namespace autocong::lucas {

/// Diagonal of Q^(-1/s) along a partition, read mod p.
struct LucasSpec {
  ModPoly Q;
  std::uint64_t s = 1;
  SetPartition partition;
};

/// Value of the diagonal at every digit tuple; tuples are indexed as automaton
/// symbols (first block most significant).
struct LucasTable {
  std::uint64_t p = 2;
  std::size_t blocks = 1;
  std::vector<Residue> entries;

  Residue at(std::span<const std::uint32_t> digits) const {
    std::size_t idx = 0;
    for (auto d : digits) idx = idx * p + d;
    return entries.at(idx);
  }
  bool has_zero() const {
    for (auto e : entries) {
      if (e == 0) return true;
    }
    return false;
  }
};

struct LucasFailure {
  std::vector<std::uint32_t> digits;
  ModPoly image;
};

using LucasOutcome = std::variant<LucasTable, LucasFailure>;

/// Applies Lambda_d to Q^((p-1)/s) for every digit tuple d and requires a
/// constant each time. The constants form the table of a Lucas product
/// a_n = prod_i a_{n(i)} mod p.
inline LucasOutcome lucas_check(const LucasSpec& spec) {
  const auto& m = spec.Q.modulus();
  const std::uint64_t p = m.p();
  if (m.alpha() != 1) fail(ErrorCode::InvalidModulus, "Lucas products are taken mod a prime");
  if (spec.s == 0 || (p - 1) % spec.s != 0) {
    fail(ErrorCode::BadRootExponent, "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(spec.s));
  }
  if (spec.Q.constant_term() != 1) fail(ErrorCode::NotNormalized, "Q(0) must be 1");
  if (spec.partition.arity() != spec.Q.arity()) fail(ErrorCode::ArityMismatch, "partition arity differs from Q");
  const ModPoly F = poly_pow(spec.Q, (p - 1) / spec.s);
  const std::size_t b = spec.partition.size();
  LucasTable table{p, b, {}};
  Dfao<Residue> shape(p, b);
  for (Symbol a = 0; a < shape.alphabet_size(); ++a) {
    auto digits = shape.decode(a);
    ModPoly img = cartier(F, spec.partition.expand(digits));
    if (!img.is_constant()) return LucasFailure{digits, img};
    table.entries.push_back(img.constant_term());
  }
  return table;
}

/// Product of table entries over the digit positions of n (components padded
/// to a common length).
inline Residue lucas_eval(const LucasTable& t, std::span<const std::uint64_t> n) {
  if (n.size() != t.blocks) fail(ErrorCode::ArityMismatch, "index tuple arity differs from the table");
  Dfao<Residue> shape(t.p, t.blocks);
  Residue r = 1 % t.p;
  for (Symbol a : shape.word(n)) r = r * t.entries[a] % t.p;
  return r;
}

inline Residue lucas_eval(const LucasTable& t, std::initializer_list<std::uint64_t> n) {
  return lucas_eval(t, std::span<const std::uint64_t>(n.begin(), n.size()));
}

/// The at most p-state automaton whose state is the running product.
inline Dfao<Residue> lucas_automaton(const LucasTable& t) {
  Dfao<Residue> d(t.p, t.blocks);
  std::map<Residue, StateId> ids;
  std::vector<Residue> values;
  auto intern = [&](Residue v) {
    auto [it, inserted] = ids.emplace(v, static_cast<StateId>(values.size()));
    if (inserted) {
      values.push_back(v);
      d.add_state(v);
    }
    return it->second;
  };
  d.set_initial(intern(1 % t.p));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (Symbol a = 0; a < d.alphabet_size(); ++a) {
      StateId next = intern(values[i] * t.entries[a] % t.p);
      d.set_transition(static_cast<StateId>(i), a, next);
    }
  }
  return d;
}

/// Binomial coefficients C(a, b) mod M for a <= rows, by Pascal's rule.
class PascalTable {
 public:
  static constexpr std::uint64_t kMaxRows = 1u << 13;

  PascalTable(std::uint64_t rows, std::uint64_t M) : rows_(rows), M_(M) {
    if (rows > kMaxRows) fail(ErrorCode::BudgetExceeded, "Pascal table with " + std::to_string(rows) + " rows");
    tri_.resize((rows + 1) * (rows + 2) / 2);
    for (std::uint64_t a = 0; a <= rows; ++a) {
      for (std::uint64_t b = 0; b <= a; ++b) {
        tri_[offset(a) + b] = (b == 0 || b == a) ? 1 % M : (tri_[offset(a - 1) + b - 1] + tri_[offset(a - 1) + b]) % M;
      }
    }
  }

  std::uint64_t rows() const noexcept { return rows_; }
  std::uint64_t modulus() const noexcept { return M_; }

  Residue operator()(std::uint64_t a, std::uint64_t b) const {
    if (b > a) return 0;
    if (a > rows_) fail(ErrorCode::InvalidArgument, "row outside the Pascal table");
    return tri_[offset(a) + b];
  }

 private:
  static std::uint64_t offset(std::uint64_t a) { return a * (a + 1) / 2; }

  std::uint64_t rows_;
  std::uint64_t M_;
  std::vector<Residue> tri_;
};

inline PascalTable pascal_for(const ModulusSpec& mod) {
  const std::uint64_t q = mod.modulus(), prev = mod.previous_power();
  return PascalTable(std::max(q - prev, prev), q);
}

/// C(n, m) mod p^alpha by the prime-power Lucas sum over digit vectors
/// (i_h), (j_h) with entries in D = {0, ..., p^alpha - p^(alpha-1)}:
/// sum (-1)^(n - i + sum i_h) C(p^(alpha-1) - 1, n - i) C(n - i, m - j)
///     prod_h C(p^alpha - p^(alpha-1), i_h) C(i_h, j_h),
/// where i = sum i_h p^h and j = sum j_h p^h.
inline Residue prime_power_lucas_binomial(std::uint64_t n, std::uint64_t m, const ModulusSpec& mod,
                                          const PascalTable& C) {
  if (m > n) return 0;
  const std::uint64_t p = mod.p(), q = mod.modulus(), prev = mod.previous_power();
  const std::uint64_t top = q - prev;
  if (C.modulus() != q || C.rows() < std::max(top, prev)) fail(ErrorCode::InvalidArgument, "Pascal table too small");
  const std::size_t L = base_digits(n, p).size() + (n == 0 ? 1 : 0);
  std::vector<std::uint64_t> weight(L, 1);
  for (std::size_t h = 1; h < L; ++h) weight[h] = weight[h - 1] * p;
  // rest[h]: the largest value digits below position h can add.
  std::vector<std::uint64_t> rest(L + 1, 0);
  for (std::size_t h = 1; h <= L; ++h) rest[h] = rest[h - 1] + top * weight[h - 1];
  std::vector<std::uint64_t> idig(L, 0);
  Residue total = 0;

  // Sum over j for fixed digits i_h; the window for j is [m - (n - i), m].
  auto inner = [&](std::uint64_t i) {
    const std::uint64_t gap = n - i;
    const std::uint64_t jlo = m > gap ? m - gap : 0;
    Residue acc = 0;
    auto walk = [&](auto&& self, std::size_t h, std::uint64_t j, Residue prod) -> void {
      if (prod == 0) return;
      if (h == 0) {
        if (j >= jlo && j <= m) acc = mod.add(acc, mod.mul(prod, C(gap, m - j)));
        return;
      }
      const std::size_t pos = h - 1;
      for (std::uint64_t jd = 0; jd <= idig[pos]; ++jd) {
        std::uint64_t nj = j + jd * weight[pos];
        if (nj > m) break;
        std::uint64_t reach = nj;
        for (std::size_t k = 0; k < pos; ++k) reach += idig[k] * weight[k];
        if (reach < jlo) continue;
        self(self, pos, nj, mod.mul(prod, C(idig[pos], jd)));
      }
    };
    walk(walk, L, 0, 1 % q);
    return acc;
  };

  auto outer = [&](auto&& self, std::size_t h, std::uint64_t i, std::uint64_t digit_sum, Residue prod) -> void {
    if (prod == 0) return;
    if (h == 0) {
      const std::uint64_t gap = n - i;
      if (gap > prev - 1) return;
      Residue term = mod.mul(mod.mul(prod, C(prev - 1, gap)), inner(i));
      total = ((gap + digit_sum) % 2) ? mod.sub(total, term) : mod.add(total, term);
      return;
    }
    const std::size_t pos = h - 1;
    for (std::uint64_t d = 0; d <= top; ++d) {
      std::uint64_t ni = i + d * weight[pos];
      if (ni > n) break;
      if (ni + rest[pos] + prev <= n) continue;
      idig[pos] = d;
      self(self, pos, ni, digit_sum + d, mod.mul(prod, C(top, d)));
    }
    idig[pos] = 0;
  };
  outer(outer, L, 0, 0, 1 % q);
  return total;
}

inline Residue prime_power_lucas_binomial(std::uint64_t n, std::uint64_t m, const ModulusSpec& mod) {
  return prime_power_lucas_binomial(n, m, mod, pascal_for(mod));
}

}  // namespace autocong::lucas
