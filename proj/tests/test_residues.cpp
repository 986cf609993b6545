#include <gtest/gtest.h>

#include "autocong/error.hpp"
#include "autocong/int_poly.hpp"
#include "autocong/modulus.hpp"
#include "autocong/partition.hpp"

using namespace autocong;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Modulus, RejectsNonPrimeBase) {
  EXPECT_EQ(code_of([] { ModulusSpec(4, 1); }), ErrorCode::InvalidModulus);
  EXPECT_EQ(code_of([] { ModulusSpec(2, 0); }), ErrorCode::InvalidModulus);
  EXPECT_EQ(code_of([] { ModulusSpec(2, 63); }), ErrorCode::ModulusTooLarge);
}

TEST(Modulus, Accessors) {
  ModulusSpec m(5, 2);
  EXPECT_EQ(m.p(), 5u);
  EXPECT_EQ(m.alpha(), 2u);
  EXPECT_EQ(m.modulus(), 25u);
  EXPECT_EQ(m.previous_power(), 5u);
  EXPECT_EQ(m.reduce(-1), 24u);
  EXPECT_EQ(m.reduce(-26), 24u);
}

TEST(Modulus, ResidueInverse) {
  ModulusSpec m(2, 2);
  EXPECT_EQ(residue_inverse(1, m), 1u);
  EXPECT_EQ(residue_inverse(3, m), 3u);
  EXPECT_EQ(code_of([&] { residue_inverse(2, m); }), ErrorCode::NotUnit);
}

TEST(Modulus, InverseAgreesWithSearch) {
  for (auto [p, a] : {std::pair{2u, 5u}, {3u, 3u}, {5u, 2u}, {7u, 2u}, {13u, 2u}}) {
    ModulusSpec m(p, a);
    for (Residue x = 1; x < m.modulus(); ++x) {
      if (!m.is_unit(x)) continue;
      Residue found = 0;
      for (Residue y = 1; y < m.modulus(); ++y) {
        if (x * y % m.modulus() == 1) found = y;
      }
      EXPECT_EQ(m.inverse(x), found) << x << " mod " << m.modulus();
    }
  }
}

TEST(Modulus, ValuationIsCappedAtAlpha) {
  ModulusSpec m(2, 3);
  EXPECT_EQ(m.valuation(1), 0u);
  EXPECT_EQ(m.valuation(2), 1u);
  EXPECT_EQ(m.valuation(4), 2u);
  EXPECT_EQ(m.valuation(0), 3u);
}

TEST(Modulus, WideArithmetic) {
  ModulusSpec m(3, 39);
  EXPECT_FALSE(m.narrow());
  const Residue big = m.modulus() - 1;
  EXPECT_EQ(m.mul(big, big), 1u);
  EXPECT_EQ(m.add(big, 2), 1u);
  EXPECT_EQ(m.mul(m.inverse(2), 2), 1u);
}

TEST(Partition, ParseAndCollapse) {
  auto B = SetPartition::parse(4, "{1,2},{3},{4}");
  EXPECT_EQ(B.size(), 3u);
  EXPECT_EQ(B.gamma(0), 0u);
  EXPECT_EQ(B.gamma(1), 0u);
  EXPECT_EQ(B.gamma(3), 2u);
  std::vector<std::uint32_t> d{5, 6, 7};
  EXPECT_EQ(B.expand(d), (std::vector<std::uint32_t>{5, 5, 6, 7}));
  EXPECT_TRUE(SetPartition::full(3).is_full());
  EXPECT_TRUE(SetPartition::discrete(3).is_discrete());
}

TEST(Partition, RejectsBadPartitions) {
  EXPECT_EQ(code_of([] { SetPartition::parse(3, "{1,2}"); }), ErrorCode::InvalidPartition);
  EXPECT_EQ(code_of([] { SetPartition::parse(3, "{1,2},{2,3}"); }), ErrorCode::InvalidPartition);
  EXPECT_EQ(code_of([] { SetPartition::parse(2, "{1},{3}"); }), ErrorCode::InvalidPartition);
}

TEST(Parser, GrammarAndReduction) {
  ModulusSpec m(2, 2);
  auto P = parse_mod_poly("x*y^2 + (2*x - 1)*y + x", 2, m);
  EXPECT_EQ(P.to_string(), "3*y + x + 2*x*y + x*y^2");
  auto Q = parse_mod_poly("(1 - x1 - x2)*(1 - x3 - x4) - x1*x2*x3*x4", 4, ModulusSpec(5, 1));
  EXPECT_EQ(Q.size(), 10u);
  EXPECT_EQ(Q.constant_term(), 1u);
  auto same = parse_mod_poly("  ( 1-x ) ^ 2 ", 1, ModulusSpec(3, 1));
  EXPECT_EQ(same, parse_mod_poly("1 + x + x^2", 1, ModulusSpec(3, 1)));
}

TEST(Parser, Errors) {
  EXPECT_EQ(code_of([] { parse_int_poly("x +", 1); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_int_poly("(x", 1); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_int_poly("w", 2); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_int_poly("x^-1", 1); }), ErrorCode::ParseError);
}

TEST(IntPoly, SubstituteAndNormalize) {
  auto P = parse_int_poly("x*z^2 - z + 1", {"x", "z"});
  auto shifted = P.substitute(1, parse_int_poly("1 + y", {"x", "y"}));
  EXPECT_EQ(shifted, parse_int_poly("x*y^2 + (2*x - 1)*y + x", {"x", "y"}));
  auto Q = parse_int_poly("4*x^2*y + 6*x^3", {"x", "y"});
  EXPECT_EQ(Q.content(), 2);
  EXPECT_EQ(Q.min_degree_in(0), 2);
  EXPECT_EQ(Q.divide_by_power(0, 2).divide_exact(2), parse_int_poly("2*y + 3*x", {"x", "y"}));
}
