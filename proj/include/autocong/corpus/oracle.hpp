#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "autocong/corpus/fixture.hpp"
#include "autocong/error.hpp"
#include "autocong/int_poly.hpp"
#include "autocong/modulus.hpp"

namespace autocong::corpus {

inline constexpr std::size_t kDefaultOracleBudget = 1u << 13;

/// Largest N accepted by the oracles; AUTOCONG_ORACLE_BUDGET overrides it.
inline std::size_t oracle_budget() {
  if (const char* env = std::getenv("AUTOCONG_ORACLE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOracleBudget;
}

namespace oracle {

/// Rows 0..N-1 of Pascal's triangle, one row at a time.
class BinomialRows {
 public:
  explicit BinomialRows(std::size_t N) {
    rows_.reserve(N);
    for (std::size_t n = 0; n < N; ++n) {
      std::vector<BigInt> row(n + 1);
      row[0] = row[n] = 1;
      for (std::size_t k = 1; k < n; ++k) row[k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
      rows_.push_back(std::move(row));
    }
  }
  const BigInt& operator()(std::size_t n, std::size_t k) const {
    static const BigInt zero = 0;
    return k > n ? zero : rows_.at(n)[k];
  }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

inline std::vector<BigInt> catalan(std::size_t N) {
  std::vector<BigInt> c(N);
  if (N) c[0] = 1;
  for (std::size_t n = 1; n < N; ++n) {
    for (std::size_t k = 0; k < n; ++k) c[n] += c[k] * c[n - 1 - k];
  }
  return c;
}

inline std::vector<BigInt> motzkin(std::size_t N) {
  std::vector<BigInt> m(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (n == 0) {
      m[n] = 1;
      continue;
    }
    m[n] = m[n - 1];
    for (std::size_t k = 0; k + 2 <= n; ++k) m[n] += m[k] * m[n - 2 - k];
  }
  return m;
}

inline std::vector<BigInt> riordan(std::size_t N) {
  auto cat = catalan(N);
  BinomialRows C(N);
  std::vector<BigInt> r(N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      if ((n - k) % 2) {
        r[n] -= C(n, k) * cat[k];
      } else {
        r[n] += C(n, k) * cat[k];
      }
    }
  }
  return r;
}

inline std::vector<BigInt> directed_animals(std::size_t N) {
  BinomialRows C(N);
  std::vector<BigInt> a(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (n == 0) {
      a[n] = 1;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) a[n] += C(n - 1, k) * C(k, k / 2);
  }
  return a;
}

inline std::vector<BigInt> hexagonal(std::size_t N) {
  auto cat = catalan(N + 1);
  BinomialRows C(N);
  std::vector<BigInt> a(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (n == 0) {
      a[n] = 1;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) a[n] += C(n - 1, k) * cat[k + 1];
  }
  return a;
}

/// Power series root z of A z^2 + B z + C = 0 with z(0) = z0, by undetermined
/// coefficients; needs 2 A(0) z0 + B(0) != 0 and exact integer quotients.
inline std::vector<BigInt> quadratic_root(const IntPoly& curve, const BigInt& z0, std::size_t N) {
  if (curve.degree_in(1) != 2) fail(ErrorCode::FixtureValidationFailed, "quadratic oracle needs degree 2 in z");
  std::vector<std::vector<BigInt>> coef(3);
  for (const auto& [e, c] : curve.terms()) {
    auto& v = coef[e[1]];
    if (v.size() <= e[0]) v.resize(e[0] + 1);
    v[e[0]] = c;
  }
  auto at = [&](int j, std::size_t i) -> BigInt { return i < coef[j].size() ? coef[j][i] : BigInt(0); };
  const BigInt lin = 2 * at(2, 0) * z0 + at(1, 0);
  if (at(2, 0) * z0 * z0 + at(1, 0) * z0 + at(0, 0) != 0) {
    fail(ErrorCode::FixtureValidationFailed, "declared first term is not a root at x = 0");
  }
  if (lin == 0) fail(ErrorCode::FixtureValidationFailed, "root is not simple at x = 0");
  std::vector<BigInt> z(N), sq(N);
  if (N == 0) return z;
  z[0] = z0;
  sq[0] = z0 * z0;
  for (std::size_t n = 1; n < N; ++n) {
    // Coefficient of x^n with z_n = 0; z_n then enters as lin * z_n.
    BigInt sqn = 0;
    for (std::size_t j = 1; j < n; ++j) sqn += z[j] * z[n - j];
    BigInt rest = at(2, 0) * sqn + at(0, n);
    for (std::size_t i = 1; i <= n; ++i) rest += at(2, i) * sq[n - i] + at(1, i) * z[n - i];
    if (rest % lin != 0) fail(ErrorCode::FixtureValidationFailed, "non-integral series coefficient");
    z[n] = -rest / lin;
    sq[n] = sqn + 2 * z[0] * z[n];
  }
  return z;
}

/// (1 - 3x) / ((1 - 2x) sqrt(1 - 4x)).
inline std::vector<BigInt> a029759(std::size_t N) {
  BinomialRows C(2 * N);
  std::vector<BigInt> central(N), a(N);
  for (std::size_t n = 0; n < N; ++n) central[n] = C(2 * n, n);
  std::vector<BigInt> g(N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k <= n; ++k) g[n] += (BigInt(1) << k) * central[n - k];
  }
  for (std::size_t n = 0; n < N; ++n) a[n] = g[n] - (n ? 3 * g[n - 1] : BigInt(0));
  return a;
}

/// (-(3x^2 - 5x + 1) - x^2 sqrt(1 - 4x)) / (4x^3 - 8x^2 + 6x - 1).
inline std::vector<BigInt> a032351(std::size_t N) {
  auto cat = catalan(N);
  std::vector<BigInt> num(N);
  // sqrt(1 - 4x) = 1 - 2 sum_{n>=1} Cat(n-1) x^n.
  for (std::size_t n = 0; n < N; ++n) {
    if (n == 0) num[n] -= 1;
    if (n == 1) num[n] += 5;
    if (n == 2) num[n] -= 3;
    if (n >= 2) {
      std::size_t m = n - 2;
      num[n] += m == 0 ? BigInt(-1) : BigInt(2 * cat[m - 1]);
    }
  }
  // Divide by D = -1 + 6x - 8x^2 + 4x^3.
  const BigInt D[4] = {-1, 6, -8, 4};
  std::vector<BigInt> a(N);
  for (std::size_t n = 0; n < N; ++n) {
    BigInt s = num[n];
    for (std::size_t i = 1; i < 4 && i <= n; ++i) s -= D[i] * a[n - i];
    a[n] = -s;
  }
  return a;
}

inline std::vector<BigInt> apery3(std::size_t N) {
  std::vector<BigInt> a(N);
  for (std::size_t n = 0; n < N; ++n) {
    // t_k = C(n,k)^2 C(n+k,k)^2, advanced by its term ratio.
    BigInt t = 1, s = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      s += t;
      if (k == n) break;
      BigInt f = BigInt(n - k) * BigInt(n + k + 1);
      BigInt d = BigInt(k + 1) * BigInt(k + 1);
      t = t * f * f / (d * d);
    }
    a[n] = s;
  }
  return a;
}

inline std::vector<BigInt> apery2(std::size_t N) {
  std::vector<BigInt> a(N);
  for (std::size_t n = 0; n < N; ++n) {
    // t_k = C(n,k)^2 C(n+k,k).
    BigInt t = 1, s = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      s += t;
      if (k == n) break;
      BigInt d = BigInt(k + 1);
      t = t * BigInt(n - k) * BigInt(n - k) * BigInt(n + k + 1) / (d * d * d);
    }
    a[n] = s;
  }
  return a;
}

/// sum_k C(n, 2k) C(2k, k).
inline std::vector<BigInt> trinomial(std::size_t N) {
  BinomialRows C(N);
  std::vector<BigInt> a(N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; 2 * k <= n; ++k) a[n] += C(n, 2 * k) * C(2 * k, k);
  }
  return a;
}

}  // namespace oracle

inline void check_budget(std::size_t N) {
  if (N > oracle_budget()) {
    fail(ErrorCode::BudgetExceeded,
         "oracle asked for " + std::to_string(N) + " terms, budget is " + std::to_string(oracle_budget()));
  }
}

/// Exact terms a_0..a_{N-1} of a one-dimensional fixture, computed from its
/// named oracle without any automaton.
inline std::vector<BigInt> oracle_values(const SequenceFixture& f, std::size_t N) {
  check_budget(N);
  const std::string& o = f.oracle;
  if (o == "catalan") return oracle::catalan(N);
  if (o == "motzkin") return oracle::motzkin(N);
  if (o == "riordan") return oracle::riordan(N);
  if (o == "directed-animals") return oracle::directed_animals(N);
  if (o == "hexagonal") return oracle::hexagonal(N);
  if (o == "quadratic") return oracle::quadratic_root(fixture_curve(f), f.terms.empty() ? BigInt(1) : f.terms[0], N);
  if (o == "a029759") return oracle::a029759(N);
  if (o == "a032351") return oracle::a032351(N);
  if (o == "apery3") return oracle::apery3(N);
  if (o == "apery2") return oracle::apery2(N);
  if (o == "trinomial") return oracle::trinomial(N);
  fail(ErrorCode::FixtureValidationFailed, "fixture " + f.name + " has no one-dimensional oracle '" + o + "'");
}

/// Exact values on the grid [0, N)^k, row-major with the first index most
/// significant, for multidimensional fixtures.
inline std::vector<BigInt> oracle_grid(const SequenceFixture& f, std::size_t N) {
  check_budget(N);
  if (f.oracle == "binomial") {
    oracle::BinomialRows C(N);
    std::vector<BigInt> g(N * N);
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t m = 0; m < N; ++m) g[n * N + m] = C(n, m);
    }
    return g;
  }
  fail(ErrorCode::FixtureValidationFailed, "fixture " + f.name + " has no grid oracle '" + f.oracle + "'");
}

inline Residue reduce_big(const BigInt& v, std::uint64_t M) {
  BigInt r = v % M;
  if (r < 0) r += M;
  return static_cast<Residue>(r);
}

/// p-adic valuation of an exact value, capped at alpha (0 maps to alpha).
inline unsigned capped_valuation(const BigInt& v, std::uint64_t p, unsigned alpha) {
  if (v == 0) return alpha;
  BigInt a = v;
  unsigned e = 0;
  while (e < alpha && a % p == 0) {
    a /= p;
    ++e;
  }
  return e;
}

/// Oracle labels for 0 <= n < N: residues mod p^alpha, or capped valuations
/// for fixtures relabeled by valuation.
inline std::vector<Residue> oracle_terms(const SequenceFixture& f, const Registry& reg, const ModulusSpec& m,
                                         std::size_t N) {
  std::vector<Residue> out;
  if (f.kind == FixtureKind::Relabel) {
    for (const auto& v : oracle_values(find_fixture(reg, f.base), N)) {
      out.push_back(capped_valuation(v, m.p(), m.alpha()));
    }
    return out;
  }
  for (const auto& v : oracle_values(f, N)) out.push_back(reduce_big(v, m.modulus()));
  return out;
}

inline std::vector<Residue> oracle_terms(const SequenceFixture& f, const ModulusSpec& m, std::size_t N) {
  return oracle_terms(f, fixture_registry(), m, N);
}

}  // namespace autocong::corpus
