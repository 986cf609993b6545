#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autocong/corpus/builtin_registry.hpp"
#include "autocong/engine/problem.hpp"
#include "autocong/error.hpp"
#include "autocong/int_poly.hpp"
#include "autocong/modulus.hpp"
#include "autocong/partition.hpp"

namespace autocong::corpus {

enum class FixtureKind { Algebraic, Rational, Relabel };

inline std::string to_string(FixtureKind k) {
  switch (k) {
    case FixtureKind::Algebraic: return "algebraic";
    case FixtureKind::Rational: return "rational";
    case FixtureKind::Relabel: return "relabel";
  }
  return "unknown";
}

struct SequenceFixture {
  std::string name;
  std::string description;
  FixtureKind kind = FixtureKind::Algebraic;

  // algebraic
  std::string curve;
  std::string substitute;
  unsigned offset = 0;
  unsigned threshold = 0;
  std::uint64_t label_scale = 1;

  // rational
  std::size_t variables = 0;
  std::string numerator = "1";
  std::string denominator;
  std::string partition;

  // relabel
  std::string base;
  std::string map;

  std::string oracle;
  std::vector<BigInt> terms;
  std::vector<std::pair<std::uint64_t, unsigned>> moduli;
  std::string lucas_q;
  std::uint64_t lucas_s = 1;
  std::string lucas_partition;
  std::size_t state_cap = 1'000'000;

  bool has_lucas() const { return !lucas_q.empty(); }
};

using Registry = std::vector<SequenceFixture>;

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::uint64_t to_unsigned(const std::string& v, const std::string& where) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(ErrorCode::FormatError, where + ": expected a nonnegative integer, got '" + v + "'");
  }
  return std::stoull(v);
}

inline std::vector<std::pair<std::uint64_t, unsigned>> parse_moduli(const std::string& v, const std::string& where) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) {
    auto caret = tok.find('^');
    if (caret == std::string::npos) fail(ErrorCode::FormatError, where + ": moduli are written p^alpha");
    out.emplace_back(to_unsigned(tok.substr(0, caret), where),
                     static_cast<unsigned>(to_unsigned(tok.substr(caret + 1), where)));
  }
  return out;
}

inline std::vector<BigInt> parse_terms(const std::string& v, const std::string& where) {
  std::vector<BigInt> out;
  std::stringstream in(v);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    bool neg = !tok.empty() && tok[0] == '-';
    std::string digits = neg ? tok.substr(1) : tok;
    to_unsigned(digits, where);
    BigInt b(digits);
    out.push_back(neg ? BigInt(-b) : b);
  }
  return out;
}

inline void check_fixture(const SequenceFixture& f) {
  auto need = [&](bool ok, const char* key) {
    if (!ok) fail(ErrorCode::FormatError, "fixture " + f.name + " needs '" + key + "'");
  };
  switch (f.kind) {
    case FixtureKind::Algebraic:
      need(!f.curve.empty(), "curve");
      need(!f.substitute.empty(), "substitute");
      need(f.label_scale >= 1, "label_scale");
      break;
    case FixtureKind::Rational:
      need(f.variables >= 1, "variables");
      need(!f.denominator.empty(), "denominator");
      break;
    case FixtureKind::Relabel:
      need(!f.base.empty(), "base");
      need(f.map == "valuation", "map = valuation");
      break;
  }
}

}  // namespace detail

/// Reads fixtures from the sectioned `key = value` format; `#` starts a comment.
inline Registry parse_registry(std::string_view text) {
  Registry reg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "registry line " + std::to_string(lineno);
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail(ErrorCode::FormatError, where + ": unterminated section header");
      SequenceFixture f;
      f.name = detail::trim(std::string_view(t).substr(1, t.size() - 2));
      if (f.name.empty()) fail(ErrorCode::FormatError, where + ": empty fixture name");
      for (const auto& g : reg) {
        if (g.name == f.name) fail(ErrorCode::FormatError, where + ": duplicate fixture " + f.name);
      }
      reg.push_back(std::move(f));
      continue;
    }
    if (reg.empty()) fail(ErrorCode::FormatError, where + ": key outside a fixture section");
    auto eq = t.find('=');
    if (eq == std::string::npos) fail(ErrorCode::FormatError, where + ": expected key = value");
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string val = detail::trim(std::string_view(t).substr(eq + 1));
    SequenceFixture& f = reg.back();
    if (key == "description") {
      f.description = val;
    } else if (key == "kind") {
      if (val == "algebraic") {
        f.kind = FixtureKind::Algebraic;
      } else if (val == "rational") {
        f.kind = FixtureKind::Rational;
      } else if (val == "relabel") {
        f.kind = FixtureKind::Relabel;
      } else {
        fail(ErrorCode::FormatError, where + ": unknown kind '" + val + "'");
      }
    } else if (key == "curve") {
      f.curve = val;
    } else if (key == "substitute") {
      f.substitute = val;
    } else if (key == "offset") {
      f.offset = static_cast<unsigned>(detail::to_unsigned(val, where));
    } else if (key == "threshold") {
      f.threshold = static_cast<unsigned>(detail::to_unsigned(val, where));
    } else if (key == "label_scale") {
      f.label_scale = detail::to_unsigned(val, where);
    } else if (key == "variables") {
      f.variables = detail::to_unsigned(val, where);
    } else if (key == "numerator") {
      f.numerator = val;
    } else if (key == "denominator") {
      f.denominator = val;
    } else if (key == "partition") {
      f.partition = val;
    } else if (key == "base") {
      f.base = val;
    } else if (key == "map") {
      f.map = val;
    } else if (key == "oracle") {
      f.oracle = val;
    } else if (key == "terms") {
      f.terms = detail::parse_terms(val, where);
    } else if (key == "moduli") {
      f.moduli = detail::parse_moduli(val, where);
    } else if (key == "lucas_q") {
      f.lucas_q = val;
    } else if (key == "lucas_s") {
      f.lucas_s = detail::to_unsigned(val, where);
    } else if (key == "lucas_partition") {
      f.lucas_partition = val;
    } else if (key == "state_cap") {
      f.state_cap = detail::to_unsigned(val, where);
    } else {
      fail(ErrorCode::FormatError, where + ": unknown key '" + key + "'");
    }
  }
  for (const auto& f : reg) detail::check_fixture(f);
  for (const auto& f : reg) {
    if (f.kind != FixtureKind::Relabel) continue;
    bool found = false;
    for (const auto& g : reg) found = found || (g.name == f.base && g.kind != FixtureKind::Relabel);
    if (!found) fail(ErrorCode::FormatError, "fixture " + f.name + " relabels unknown fixture " + f.base);
  }
  return reg;
}

inline Registry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FormatError, "cannot read registry file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str());
}

inline const Registry& fixture_registry() {
  static const Registry reg = parse_registry(kBuiltinRegistry);
  return reg;
}

inline const SequenceFixture& find_fixture(const Registry& reg, std::string_view name) {
  for (const auto& f : reg) {
    if (f.name == name) return f;
  }
  fail(ErrorCode::UnknownFixture, "no fixture named " + std::string(name));
}

/// The defining polynomial in (x, z).
inline IntPoly fixture_curve(const SequenceFixture& f) {
  if (f.kind != FixtureKind::Algebraic) fail(ErrorCode::InvalidArgument, f.name + " is not algebraic");
  return parse_int_poly(f.curve, {"x", "z"});
}

/// The curve after substituting z and dividing by the largest power of x and
/// the integer content; a polynomial in (x, y) whose root y has y(0) = 0.
inline IntPoly shifted_curve(const SequenceFixture& f) {
  IntPoly sub = parse_int_poly(f.substitute, {"x", "y"});
  IntPoly P = fixture_curve(f).substitute(1, sub);
  if (P.is_zero()) fail(ErrorCode::ZeroPolynomial, f.name + ": substitution annihilates the curve");
  long v = P.min_degree_in(0);
  if (v > 0) P = P.divide_by_power(0, static_cast<unsigned>(v));
  return P.divide_exact(P.content());
}

inline SetPartition fixture_partition(const SequenceFixture& f) {
  if (f.partition.empty()) return SetPartition::full(f.variables);
  return SetPartition::parse(f.variables, f.partition);
}

inline DiagonalProblem rational_problem(const SequenceFixture& f, const ModulusSpec& m) {
  if (f.kind != FixtureKind::Rational) fail(ErrorCode::InvalidArgument, f.name + " is not rational");
  return DiagonalProblem(parse_mod_poly(f.numerator, f.variables, m), parse_mod_poly(f.denominator, f.variables, m),
                         fixture_partition(f));
}

/// Number of variables of the Lucas polynomial: 1 for univariate series.
inline std::size_t lucas_arity(const SequenceFixture& f) { return f.kind == FixtureKind::Rational ? f.variables : 1; }

inline SetPartition lucas_partition(const SequenceFixture& f) {
  const std::size_t k = lucas_arity(f);
  if (f.lucas_partition.empty()) return SetPartition::full(k);
  return SetPartition::parse(k, f.lucas_partition);
}

}  // namespace autocong::corpus
