#include <gtest/gtest.h>

#include <cstdlib>
#include <optional>
#include <set>
#include <tuple>

#include "autocong/corpus/build.hpp"
#include "autocong/corpus/document.hpp"
#include "autocong/corpus/fixture.hpp"
#include "autocong/corpus/oracle.hpp"

using namespace autocong;
using namespace autocong::corpus;

namespace {

const SequenceFixture& fixture(std::string_view name) { return find_fixture(fixture_registry(), name); }

std::optional<ErrorCode> error_of(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST(Registry, BuiltinFixtures) {
  const auto& reg = fixture_registry();
  EXPECT_GE(reg.size(), 14u);
  for (const char* name : {"catalan", "motzkin", "motzkin-nu2", "riordan", "directed-animals", "hexagonal", "a159769",
                           "a159771", "a029759", "a032351", "a109033", "central-trinomial", "apery-zeta3", "binomial"}) {
    EXPECT_NO_THROW(find_fixture(reg, name)) << name;
  }
  EXPECT_EQ(fixture("catalan").threshold, 1u);
  EXPECT_EQ(fixture("a032351").threshold, 3u);
  EXPECT_EQ(error_of([&] { find_fixture(reg, "no-such-sequence"); }), ErrorCode::UnknownFixture);
}

TEST(Registry, ShiftedCurves) {
  ModulusSpec m(3, 3);
  EXPECT_EQ(shifted_curve(fixture("catalan")).reduce(m), parse_mod_poly("x*y^2 + (2*x - 1)*y + x", 2, m));
  EXPECT_EQ(shifted_curve(fixture("motzkin")).reduce(m),
            parse_mod_poly("x^2*y^2 + (x + 1)*(2*x - 1)*y + x*(x + 1)", 2, m));
}

TEST(Registry, ParseErrors) {
  EXPECT_EQ(error_of([] { parse_registry("[a\nkind = algebraic\n"); }), ErrorCode::FormatError);
  EXPECT_EQ(error_of([] { parse_registry("kind = algebraic\n"); }), ErrorCode::FormatError);
  EXPECT_EQ(error_of([] { parse_registry("[a]\ncolour = blue\n"); }), ErrorCode::FormatError);
  EXPECT_EQ(error_of([] { parse_registry("[a]\nkind = cubic\n"); }), ErrorCode::FormatError);
  EXPECT_EQ(error_of([] { parse_registry("[a]\nkind = relabel\nbase = b\nmap = valuation\noracle = x\n"); }),
            ErrorCode::FormatError);
}

TEST(Registry, ParsesAMinimalFixture) {
  auto reg = parse_registry(R"(
[cat]
kind = algebraic
curve = x*z^2 - z + 1
substitute = 1 + y
threshold = 1
oracle = catalan
terms = 1, 1, 2, 5
moduli = 2^2 3^1
)");
  ASSERT_EQ(reg.size(), 1u);
  const auto& f = reg[0];
  EXPECT_EQ(f.kind, FixtureKind::Algebraic);
  EXPECT_EQ(f.moduli, (std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}}));
  auto doc = build_for(f, reg, ModulusSpec(2, 2));
  EXPECT_TRUE(verify_document(doc, f, reg, 256).ok());
}

TEST(Oracle, FirstTerms) {
  auto c = oracle::catalan(8);
  auto m = oracle::motzkin(8);
  auto a = oracle::apery3(3);
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_EQ(c[n], fixture("catalan").terms[n]);
    EXPECT_EQ(m[n], fixture("motzkin").terms[n]);
  }
  EXPECT_EQ(a[1], 5);
  EXPECT_EQ(a[2], 73);
  EXPECT_EQ(oracle::trinomial(5)[4], 19);
}

TEST(Oracle, MatchesDeclaredTerms) {
  for (const auto& f : fixture_registry()) {
    if (f.terms.empty() || f.kind == FixtureKind::Relabel) continue;
    auto v = oracle_values(f, f.terms.size());
    for (std::size_t n = 0; n < f.terms.size(); ++n) EXPECT_EQ(v[n], f.terms[n]) << f.name << " n = " << n;
  }
}

TEST(Oracle, Budget) {
  EXPECT_EQ(error_of([] { oracle_values(fixture("catalan"), oracle_budget() + 1); }), ErrorCode::BudgetExceeded);
}

TEST(Build, CatalanModTwo) {
  auto doc = build_for(fixture("catalan"), ModulusSpec(2, 1));
  EXPECT_EQ(doc.method, "furstenberg");
  EXPECT_EQ(doc.automaton.size(), 4u);
  EXPECT_EQ(doc.initial_values, (std::vector<Residue>{1}));
  EXPECT_EQ(doc.value(0), 1u);
  for (std::uint64_t n = 1; n < 64; ++n) EXPECT_EQ(doc.value(n), (n & (n + 1)) == 0 ? 1u : 0u) << n;
}

TEST(Build, AperyModNine) {
  auto doc = build_for(fixture("apery-zeta3"), ModulusSpec(3, 2));
  EXPECT_EQ(doc.method, "rational");
  for (std::uint64_t n = 0; n < 729; ++n) {
    unsigned ones = 0;
    for (std::uint64_t k = n; k; k /= 3) ones += k % 3 == 1;
    Residue want = 1;
    for (unsigned i = 0; i < ones; ++i) want = want * 5 % 9;
    ASSERT_EQ(doc.value(n), want) << n;
  }
}

TEST(Build, TrinomialModFourIsRefused) {
  EXPECT_EQ(error_of([] { build_for(fixture("central-trinomial"), ModulusSpec(2, 2)); }),
            ErrorCode::PreconditionFailure);
  auto doc = build_for(fixture("central-trinomial"), ModulusSpec(2, 1));
  EXPECT_EQ(doc.method, "christol");
  for (std::uint64_t n = 0; n < 256; ++n) EXPECT_EQ(doc.value(n), 1u);
}

TEST(Build, ValuationRelabel) {
  auto doc = build_for(fixture("motzkin-nu2"), ModulusSpec(2, 3));
  EXPECT_EQ(doc.labels, "valuation");
  EXPECT_TRUE(verify_document(doc, fixture("motzkin-nu2"), fixture_registry(), 512).ok());
}

TEST(Report, CatalanModEight) {
  auto r = residue_report(build_for(fixture("catalan"), ModulusSpec(2, 3)));
  EXPECT_EQ(r.modulus, 8u);
  EXPECT_EQ(r.forbidden, (std::set<Residue>{3, 7}));
  ASSERT_TRUE(r.finite.count(1));
  EXPECT_EQ(r.finite.at(1), (std::vector<std::uint64_t>{0, 1}));
}

TEST(Document, JsonRoundTrip) {
  for (auto [name, p, a] : {std::tuple{"catalan", 2u, 3u}, {"motzkin-nu2", 2u, 2u}, {"binomial", 3u, 1u},
                            {"central-trinomial", 2u, 1u}, {"a032351", 2u, 3u}}) {
    auto doc = build_for(fixture(name), ModulusSpec(p, a));
    auto text = serialize(doc);
    auto back = parse_document(text);
    EXPECT_EQ(serialize(back), text) << name;
    EXPECT_TRUE(back.automaton == doc.automaton) << name;
    EXPECT_EQ(back.initial_values, doc.initial_values);
    EXPECT_EQ(back.validity_threshold, doc.validity_threshold);
    EXPECT_EQ(serialize(build_for(fixture(name), ModulusSpec(p, a))), text) << name;
  }
}

TEST(Document, RejectsMalformedInput) {
  auto doc = build_for(fixture("catalan"), ModulusSpec(2, 1));
  auto j = to_json(doc);
  EXPECT_EQ(error_of([] { parse_document("{not json"); }), ErrorCode::FormatError);
  auto bad = j;
  bad.erase("states");
  EXPECT_EQ(error_of([&] { parse_document(bad.dump()); }), ErrorCode::FormatError);
  bad = j;
  bad["states"][0]["edges"][1] = 99;
  EXPECT_EQ(error_of([&] { parse_document(bad.dump()); }), ErrorCode::FormatError);
  bad = j;
  bad["initial_values"] = Json::array();
  EXPECT_EQ(error_of([&] { parse_document(bad.dump()); }), ErrorCode::FormatError);
}

TEST(Document, Dot) {
  auto doc = build_for(fixture("catalan"), ModulusSpec(2, 1));
  auto dot = to_dot(doc.automaton, "catalan");
  EXPECT_EQ(dot.rfind("digraph \"catalan\" {", 0), 0u);
  EXPECT_NE(dot.find("start -> s"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t at = dot.find("[label=\""); at != std::string::npos; at = dot.find("[label=\"", at + 1)) ++edges;
  EXPECT_EQ(edges, doc.automaton.size() * 2);
}

TEST(Verify, EveryFixtureAndModulus) {
  const auto& reg = fixture_registry();
  for (const auto& f : reg) {
    for (auto [p, a] : f.moduli) {
      ModulusSpec m(p, a);
      SCOPED_TRACE(f.name + " mod " + std::to_string(m.modulus()));
      if (f.name == "central-trinomial" && p == 2 && a > 1) {
        EXPECT_EQ(error_of([&] { build_for(f, reg, m); }), ErrorCode::PreconditionFailure);
        continue;
      }
      auto doc = build_for(f, reg, m);
      const std::size_t N = doc.arity() == 1 ? 512 : 32;
      auto r = verify_document(doc, f, reg, N);
      EXPECT_TRUE(r.ok());
      EXPECT_EQ(r.checked, doc.arity() == 1 ? N : N * N);
    }
  }
}
