#include <gtest/gtest.h>

#include <random>

#include "autocong/int_poly.hpp"
#include "autocong/mod_poly.hpp"
#include "autocong/series.hpp"

using namespace autocong;

namespace {

ModPoly poly(std::string_view text, std::size_t arity, ModulusSpec m) { return parse_mod_poly(text, arity, m); }

ModPoly random_poly(std::mt19937_64& rng, std::size_t arity, ModulusSpec m, unsigned max_exp, std::size_t terms) {
  std::vector<std::pair<ExponentVector, Residue>> t;
  for (std::size_t i = 0; i < terms; ++i) {
    ExponentVector e(arity);
    for (auto& x : e) x = static_cast<Exponent>(rng() % (max_exp + 1));
    t.emplace_back(e, rng() % m.modulus());
  }
  return ModPoly::from_terms(arity, m, t);
}

// Univariate coefficient list, index = exponent.
std::vector<Residue> dense(const ModPoly& f, std::size_t len) {
  std::vector<Residue> c(len, 0);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t)[0];
    if (e < len) c[e] = f.coefficient(t);
  }
  return c;
}

Residue binom_mod(unsigned n, unsigned k, std::uint64_t M) {
  std::vector<std::vector<Residue>> C(n + 1, std::vector<Residue>(n + 1, 0));
  for (unsigned i = 0; i <= n; ++i) {
    C[i][0] = 1 % M;
    for (unsigned j = 1; j <= i; ++j) C[i][j] = (C[i - 1][j - 1] + C[i - 1][j]) % M;
  }
  return k <= n ? C[n][k] : 0;
}

}  // namespace

TEST(ModPoly, CanonicalFormMergesAndDropsZeros) {
  ModulusSpec m(3, 1);
  auto f = ModPoly::from_terms(1, m, {{{2}, 1}, {{0}, 2}, {{2}, 2}, {{1}, 3}});
  EXPECT_EQ(f, poly("2", 1, m));
  EXPECT_TRUE(ModPoly(2, m).is_zero());
  EXPECT_EQ(ModPoly(2, m).degree(), -1);
}

TEST(ModPoly, PowBasics) {
  ModulusSpec m2(2, 1);
  auto f = poly("1 + x", 1, m2);
  EXPECT_EQ(poly_pow(f, 0), poly("1", 1, m2));
  EXPECT_EQ(poly_pow(f, 4), poly("1 + x^4", 1, m2));
}

TEST(ModPoly, PowMatchesRepeatedMultiplication) {
  ModulusSpec m3(3, 1);
  auto g = poly("1 - x1 - x1*x2", 2, m3);
  EXPECT_EQ(poly_pow(g, 2), g * g);
  std::mt19937_64 rng(7);
  for (ModulusSpec m : {ModulusSpec(2, 3), ModulusSpec(5, 2), ModulusSpec(3, 1)}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto f = random_poly(rng, 2, m, 3, 5);
      ModPoly acc = ModPoly::constant(2, m, 1);
      for (unsigned e = 0; e <= 8; ++e) {
        EXPECT_EQ(poly_pow(f, e), acc) << f.to_string() << " ^ " << e;
        acc = acc * f;
      }
    }
  }
}

TEST(Cartier, Examples) {
  ModulusSpec m2(2, 1);
  std::vector<std::uint32_t> one{1}, zero{0};
  EXPECT_EQ(cartier(poly("x + x^2 + x^3", 1, m2), one), poly("1 + x", 1, m2));
  EXPECT_EQ(cartier(poly("1 + x^2", 1, m2), zero), poly("1 + x", 1, m2));
  ModulusSpec m5(5, 1);
  std::vector<std::uint32_t> d{3, 2};
  auto img = cartier(poly_pow(poly("1 - x1 - x1*x2", 2, m5), 4), d);
  EXPECT_EQ(img, ModPoly::constant(2, m5, 3));
}

TEST(Cartier, DigitsMustBeInRange) {
  ModulusSpec m2(2, 1);
  std::vector<std::uint32_t> bad{2};
  EXPECT_THROW(cartier(poly("x", 1, m2), bad), Error);
}

TEST(Cartier, DecompositionRecoversPolynomial) {
  std::mt19937_64 rng(11);
  for (ModulusSpec m : {ModulusSpec(2, 2), ModulusSpec(3, 1), ModulusSpec(5, 2)}) {
    const std::uint64_t p = m.p();
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_poly(rng, 1, m, 20, 8);
      ModPoly sum(1, m);
      for (std::uint32_t d = 0; d < p; ++d) {
        std::vector<std::uint32_t> dv{d};
        auto part = cartier(f, dv);
        auto spread = map_exponents(part, 1, [&](std::span<const Exponent> e, std::span<Exponent> out) {
          out[0] = static_cast<Exponent>(e[0] * p + d);
        });
        sum = sum + spread;
      }
      EXPECT_EQ(sum, f);
    }
  }
}

TEST(Cartier, PullsOutPthPowers) {
  // Lambda_d(g * h(x^p)) = Lambda_d(g) * h
  std::mt19937_64 rng(13);
  for (ModulusSpec m : {ModulusSpec(2, 3), ModulusSpec(3, 2)}) {
    const std::uint64_t p = m.p();
    for (int trial = 0; trial < 8; ++trial) {
      auto g = random_poly(rng, 2, m, 6, 6);
      auto h = random_poly(rng, 2, m, 3, 4);
      auto hp = map_exponents(h, 2, [&](std::span<const Exponent> e, std::span<Exponent> out) {
        out[0] = static_cast<Exponent>(e[0] * p);
        out[1] = static_cast<Exponent>(e[1] * p);
      });
      for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t b = 0; b < p; ++b) {
          std::vector<std::uint32_t> d{a, b};
          EXPECT_EQ(cartier(g * hp, d), cartier(g, d) * h);
        }
      }
    }
  }
}

TEST(Cartier, ExtractionIdentityModPrimePower) {
  // Lambda_r(g * f^(p^alpha)) = Lambda_r(g) * f^(p^(alpha-1)) mod p^alpha
  std::mt19937_64 rng(17);
  for (ModulusSpec m : {ModulusSpec(2, 2), ModulusSpec(2, 3), ModulusSpec(3, 2)}) {
    const std::uint64_t p = m.p();
    for (int trial = 0; trial < 4; ++trial) {
      auto g = random_poly(rng, 1, m, 6, 4);
      auto f = random_poly(rng, 1, m, 2, 3);
      for (std::uint32_t r = 0; r < p; ++r) {
        std::vector<std::uint32_t> d{r};
        EXPECT_EQ(cartier(g * poly_pow(f, m.modulus()), d), cartier(g, d) * poly_pow(f, m.previous_power()));
      }
    }
  }
}

TEST(Frobenius, PthPowerModP) {
  std::mt19937_64 rng(19);
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    ModulusSpec m(p, 1);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = random_poly(rng, 2, m, 4, 5);
      auto fx = map_exponents(f, 2, [&](std::span<const Exponent> e, std::span<Exponent> out) {
        out[0] = static_cast<Exponent>(e[0] * p);
        out[1] = static_cast<Exponent>(e[1] * p);
      });
      EXPECT_EQ(poly_pow(f, p), fx);
    }
  }
}

TEST(Binning, ByExponentDifference) {
  ModulusSpec m2(2, 1);
  auto f = poly("x*y + x^2*y", 2, m2);
  EXPECT_EQ(bin_by_difference(f, 0), poly("x*y", 2, m2));
  EXPECT_EQ(bin_by_difference(poly("x^2*y", 2, m2), 1), poly("x^2*y", 2, m2));
  std::mt19937_64 rng(23);
  for (ModulusSpec m : {ModulusSpec(2, 2), ModulusSpec(3, 1), ModulusSpec(5, 1)}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto g = random_poly(rng, 2, m, 7, 10);
      ModPoly sum(2, m);
      for (std::uint64_t r = 0; r < m.p(); ++r) sum = sum + bin_by_difference(g, r);
      EXPECT_EQ(sum, g);
    }
  }
}

TEST(Derivative, Basic) {
  ModulusSpec m(5, 1);
  EXPECT_EQ(derivative(poly("x*y^2 + 3*x + y", 2, m), 1), poly("2*x*y + 1", 2, m));
  EXPECT_EQ(derivative(poly("x^5", 1, m), 0), ModPoly(1, m));
}

TEST(Series, GeometricAndUnitInverse) {
  ModulusSpec m2(2, 1);
  auto s = series_inverse(poly("1 - x", 1, m2), 4);
  for (Exponent n = 0; n < 4; ++n) {
    std::vector<Exponent> e{n};
    EXPECT_EQ(s.at(e), 1u);
  }
  ModulusSpec m4(2, 2);
  auto t = series_inverse(poly("1 + 2*x", 1, m4), 3);
  std::vector<Residue> got;
  for (Exponent n = 0; n < 3; ++n) {
    std::vector<Exponent> e{n};
    got.push_back(t.at(e));
  }
  EXPECT_EQ(got, (std::vector<Residue>{1, 2, 0}));
}

TEST(Series, BinomialGeneratingFunction) {
  ModulusSpec m(3, 3);
  auto s = series_inverse(poly("1 - x1 - x1*x2", 2, m), 12);
  for (Exponent n = 0; n < 12; ++n) {
    for (Exponent k = 0; k < 12; ++k) {
      std::vector<Exponent> e{n, k};
      EXPECT_EQ(s.at(e), binom_mod(n, k, 27)) << n << "," << k;
    }
  }
}

TEST(Series, RequiresUnitConstantTerm) {
  ModulusSpec m(2, 2);
  EXPECT_THROW(series_inverse(poly("2 + x", 1, m), 4), Error);
}

TEST(Diagonal, CentralBinomial) {
  ModulusSpec m(7, 3);
  auto c = diagonal_coefficients(ModPoly::constant(2, m, 1), poly("1 - x - y", 2, m), SetPartition::full(2), 4);
  EXPECT_EQ(c, (std::vector<Residue>{1, 2, 6, 20}));
}

TEST(Diagonal, DiscretePartitionIsTheSeries) {
  ModulusSpec m(5, 1);
  auto Q = poly("1 - x - x*y", 2, m);
  auto d = diagonal_coefficients(ModPoly::constant(2, m, 1), Q, SetPartition::discrete(2), 6);
  auto s = series_inverse(Q, 6);
  for (Exponent a = 0; a < 6; ++a) {
    for (Exponent b = 0; b < 6; ++b) {
      std::vector<Exponent> e{a, b};
      EXPECT_EQ(d[a * 6 + b], s.at(e));
    }
  }
}

TEST(Diagonal, TruncatedProductMatchesPolynomialProduct) {
  std::mt19937_64 rng(29);
  ModulusSpec m(3, 2);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_poly(rng, 1, m, 5, 4);
    auto g = random_poly(rng, 1, m, 5, 4);
    auto prod = TruncatedSeries::from_poly(f, 8) * TruncatedSeries::from_poly(g, 8);
    auto want = dense(f * g, 8);
    for (Exponent n = 0; n < 8; ++n) {
      std::vector<Exponent> e{n};
      EXPECT_EQ(prod.at(e), want[n]);
    }
  }
}
