#include <gtest/gtest.h>

#include "autocong/christol/christol.hpp"
#include "autocong/corpus/oracle.hpp"
#include "autocong/dfao.hpp"
#include "autocong/engine/build.hpp"
#include "autocong/engine/problem.hpp"
#include "autocong/int_poly.hpp"

using namespace autocong;
using namespace autocong::christol;

namespace {

CurveFp curve(std::string_view text, std::uint64_t p) { return curve_from(parse_mod_poly(text, 2, ModulusSpec(p, 1))); }

FpPoly fp(std::string_view text, std::uint64_t p) {
  auto f = parse_mod_poly(text, 1, ModulusSpec(p, 1));
  std::vector<std::uint64_t> c;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t)[0];
    if (c.size() <= e) c.resize(e + 1, 0);
    c[e] = f.coefficient(t);
  }
  return FpPoly(p, c);
}

std::vector<std::uint64_t> trinomial_mod2(std::size_t N) {
  std::vector<std::uint64_t> out;
  for (const auto& t : corpus::oracle::trinomial(N)) out.push_back(static_cast<std::uint64_t>(t % 2));
  return out;
}

std::vector<std::uint64_t> catalan_mod2(std::size_t N) {
  std::vector<std::uint64_t> out;
  for (const auto& c : corpus::oracle::catalan(N)) out.push_back(static_cast<std::uint64_t>(c % 2));
  return out;
}

void expect_zero_padding_stable(const Dfao<Residue>& d) {
  for (StateId s : d.reachable()) EXPECT_EQ(d.output(d.next(s, 0)), d.output(s)) << "state " << s;
}

}  // namespace

TEST(FpPoly, Arithmetic) {
  auto a = fp("1 + x", 2);
  EXPECT_EQ(a * a, fp("1 + x^2", 2));
  EXPECT_EQ(a.frobenius(), fp("1 + x^2", 2));
  EXPECT_EQ(fp("1 + x + x^3 + x^4", 2).cartier(1), fp("1 + x", 2));
  auto [q, r] = fp("x^3 + 2", 3).divmod(fp("x + 1", 3));
  EXPECT_EQ(q * fp("x + 1", 3) + r, fp("x^3 + 2", 3));
  EXPECT_EQ(gcd(fp("x^2 - 1", 5), fp("x^2 + 2*x + 1", 5)).monic(), fp("x + 1", 5));
}

TEST(OreForm, TrinomialModTwo) {
  auto P = curve("(x + 1)^2*y^2 + 1", 2);
  auto ore = ore_form(P, trinomial_mod2(64));
  EXPECT_EQ(ore.height(), 1u);
  EXPECT_EQ(ore.g[0], fp("1", 2));
  EXPECT_EQ(ore.g[1], fp("x + 1", 2));
  EXPECT_EQ(ore.to_string(), "(x + 1)*y^2 + y");
}

TEST(OreForm, LiftingStepCurve) {
  // Q*(x, y) = (x+1)^16 y^8 + (x+1)^10 y^2 + x^4, annihilating the 2^1 digit of T_n.
  auto P = curve("(x + 1)^16*y^8 + (x + 1)^10*y^2 + x^4", 2);
  std::vector<std::uint64_t> delta;
  for (const auto& t : corpus::oracle::trinomial(256)) delta.push_back(static_cast<std::uint64_t>(((t - 1) / 2) % 2));
  auto ore = ore_form(P, delta);
  ASSERT_EQ(ore.height(), 3u);
  EXPECT_EQ(ore.g[0], fp("x^2", 2));
  EXPECT_EQ(ore.g[1], fp("(x + 1)^5", 2));
  EXPECT_EQ(ore.g[2], fp("x^2*(x + 1)^3", 2));
  EXPECT_EQ(ore.g[3], fp("(x + 1)^11", 2));
  EXPECT_TRUE(apply_relation(ore, delta).is_zero());
  auto d = christol_automaton(ore, delta);
  for (std::uint64_t n = 0; n < delta.size(); ++n) ASSERT_EQ(d(n), delta[n]) << n;
}

TEST(OreForm, LinearSeries) {
  auto P = curve("y - x", 2);
  std::vector<std::uint64_t> f(64, 0);
  f[1] = 1;
  auto ore = ore_form(P, f);
  EXPECT_EQ(ore.g[0], fp("x", 2));
  EXPECT_EQ(ore.g[1], fp("1", 2));
  EXPECT_EQ(ore.to_string(), "y^2 + x*y");
  auto d = christol_automaton(ore, f);
  for (std::uint64_t n = 0; n < 64; ++n) EXPECT_EQ(d(n), n == 1 ? 1u : 0u) << n;
  expect_zero_padding_stable(d);
}

TEST(OreForm, Errors) {
  auto P = curve("(x + 1)^2*y^2 + 1", 2);
  try {
    ore_form(P, std::vector<std::uint64_t>{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionTooLow);
  }
  std::vector<std::uint64_t> wrong(64, 1);
  wrong[5] = 0;
  try {
    ore_form(P, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VerificationFailed);
  }
  try {
    ore_form(CurveFp{2, {}}, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPolynomial);
  }
}

TEST(Christol, TrinomialModTwoIsConstantOne) {
  auto prefix = trinomial_mod2(64);
  auto d = christol_automaton(ore_form(curve("(x + 1)*(3*x - 1)*y^2 + 1", 2), prefix), prefix);
  auto m = minimize(d);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.output(m.initial()), 1u);
}

TEST(Christol, CatalanModTwoMatchesEngine) {
  auto prefix = catalan_mod2(64);
  auto d = christol_automaton(ore_form(curve("x*y^2 - y + 1", 2), prefix), prefix);
  expect_zero_padding_stable(d);
  auto oracle = catalan_mod2(1024);
  for (std::uint64_t n = 0; n < oracle.size(); ++n) ASSERT_EQ(d(n), oracle[n]) << n;
  ModulusSpec m(2, 1);
  auto engine = build_automaton(furstenberg_transform(parse_mod_poly("x*y^2 + (2*x - 1)*y + x", 2, m))).automaton;
  // The engine computes the shifted series, whose n = 0 term is 0 instead of 1.
  EXPECT_TRUE(equivalent(d, engine, {false}));
  EXPECT_FALSE(equivalent(d, engine));
}

TEST(Christol, OddPrime) {
  // Motzkin mod 3 from its curve x^2 z^2 + (x - 1) z + 1.
  std::vector<std::uint64_t> prefix;
  for (const auto& v : corpus::oracle::motzkin(128)) prefix.push_back(static_cast<std::uint64_t>(v % 3));
  auto ore = ore_form(curve("x^2*y^2 + (x - 1)*y + 1", 3), prefix);
  EXPECT_TRUE(apply_relation(ore, prefix).is_zero());
  auto d = christol_automaton(ore, prefix);
  expect_zero_padding_stable(d);
  std::vector<std::uint64_t> more;
  for (const auto& v : corpus::oracle::motzkin(729)) more.push_back(static_cast<std::uint64_t>(v % 3));
  for (std::uint64_t n = 0; n < more.size(); ++n) ASSERT_EQ(d(n), more[n]) << n;
}
