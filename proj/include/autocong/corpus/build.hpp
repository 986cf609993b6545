#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autocong/analysis/attainment.hpp"
#include "autocong/christol/christol.hpp"
#include "autocong/corpus/fixture.hpp"
#include "autocong/corpus/oracle.hpp"
#include "autocong/dfao.hpp"
#include "autocong/engine/build.hpp"
#include "autocong/engine/problem.hpp"
#include "autocong/error.hpp"
#include "autocong/lucas/lucas.hpp"

namespace autocong::corpus {

inline constexpr int kFormatVersion = 1;

/// An automaton together with how its indices and labels relate to the
/// sequence it describes. Index m of the automaton stands for n = m + offset,
/// and agrees with a_n for n >= threshold; the true a_n for n < threshold are
/// kept in initial_values.
struct AutomatonDocument {
  std::string fixture;
  std::uint64_t p = 2;
  unsigned alpha = 1;
  /// "residue" (labels are a_n mod p^alpha) or "valuation" (capped p-adic valuations).
  std::string labels = "residue";
  unsigned index_offset = 0;
  unsigned validity_threshold = 0;
  std::vector<Residue> initial_values;
  /// "furstenberg", "rational", "christol" or "constant".
  std::string method;
  std::string variant;
  std::string engine_version = kEngineVersion;
  Dfao<Residue> automaton;

  std::uint64_t modulus() const { return ModulusSpec(p, alpha).modulus(); }
  std::size_t arity() const { return automaton.arity(); }

  /// Label for sequence index n >= threshold (one-dimensional documents).
  Residue value(std::uint64_t n) const {
    if (n < validity_threshold) return initial_values.at(n);
    return automaton(n - index_offset);
  }
};

struct BuildOptions {
  EngineOptions engine;
  /// Longest series prefix the Christol route may request from the oracle.
  std::size_t christol_prefix_limit = 4096;
};

namespace detail {

inline unsigned valuation_of(std::uint64_t v, std::uint64_t p) {
  unsigned e = 0;
  while (v && v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

inline Dfao<Residue> christol_build(const SequenceFixture& f, const ModulusSpec& m, std::size_t limit) {
  const auto curve = christol::curve_from(fixture_curve(f).reduce(m));
  for (std::size_t T = 64;; T *= 2) {
    std::vector<std::uint64_t> prefix;
    for (const auto& v : oracle_values(f, T)) prefix.push_back(reduce_big(v, m.p()));
    try {
      auto ore = christol::ore_form(curve, prefix);
      return christol::christol_automaton(ore, prefix);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionTooLow || 2 * T > limit) throw;
    }
  }
}

inline AutomatonDocument build_algebraic(const SequenceFixture& f, const ModulusSpec& m, const BuildOptions& opt) {
  AutomatonDocument doc;
  doc.fixture = f.name;
  doc.p = m.p();
  doc.alpha = m.alpha();
  doc.index_offset = f.offset;
  doc.validity_threshold = f.threshold;
  if (f.threshold > 0) {
    for (const auto& v : oracle_values(f, f.threshold)) doc.initial_values.push_back(reduce_big(v, m.modulus()));
  }
  const unsigned drop = valuation_of(f.label_scale, m.p());
  if (drop >= m.alpha()) {
    // Every scaled label vanishes mod p^alpha.
    doc.method = "constant";
    doc.automaton = Dfao<Residue>::constant(m.p(), 1, 0);
    return doc;
  }
  const ModulusSpec em(m.p(), m.alpha() - drop);
  const ModPoly P = shifted_curve(f).reduce(em);
  if (!em.is_unit(derivative(P, 1).constant_term())) {
    if (m.alpha() == 1 && f.label_scale == 1) {
      doc.method = "christol";
      doc.index_offset = 0;
      doc.validity_threshold = 0;
      doc.initial_values.clear();
      doc.automaton = christol_build(f, m, opt.christol_prefix_limit);
      return doc;
    }
    fail(ErrorCode::PreconditionFailure,
         f.name + " mod " + std::to_string(m.modulus()) + ": the y-coefficient of the shifted curve is not a unit, " +
             "and computing this automaton would need lifting an Ore relation to p^alpha, which is not supported");
  }
  EngineOptions eo = opt.engine;
  eo.state_cap = std::min(eo.state_cap, f.state_cap);
  auto built = build_automaton(furstenberg_transform(P), eo);
  doc.method = "furstenberg";
  doc.variant = to_string(built.variant);
  doc.automaton = std::move(built.automaton);
  if (f.label_scale != 1) {
    const std::uint64_t M = m.modulus();
    const std::uint64_t s = f.label_scale % M;
    doc.automaton = relabel(doc.automaton, [&](Residue l) { return static_cast<Residue>(l * s % M); });
  }
  return doc;
}

}  // namespace detail

/// Builds the automaton of a fixture mod p^alpha: the Furstenberg diagonal of
/// its shifted curve, the diagonal of its rational function, or, mod p when
/// the shifted curve is unusable, the Christol construction from its Ore form.
inline AutomatonDocument build_for(const SequenceFixture& f, const Registry& reg, const ModulusSpec& m,
                                   const BuildOptions& opt = {}) {
  switch (f.kind) {
    case FixtureKind::Algebraic:
      return detail::build_algebraic(f, m, opt);
    case FixtureKind::Rational: {
      AutomatonDocument doc;
      doc.fixture = f.name;
      doc.p = m.p();
      doc.alpha = m.alpha();
      EngineOptions eo = opt.engine;
      eo.state_cap = std::min(eo.state_cap, f.state_cap);
      auto built = build_automaton(rational_problem(f, m), eo);
      doc.method = "rational";
      doc.variant = to_string(built.variant);
      doc.automaton = std::move(built.automaton);
      return doc;
    }
    case FixtureKind::Relabel: {
      AutomatonDocument doc = build_for(find_fixture(reg, f.base), reg, m, opt);
      doc.fixture = f.name;
      doc.labels = "valuation";
      for (auto& v : doc.initial_values) v = m.valuation(v);
      doc.automaton = relabel(doc.automaton, [&](Residue l) { return static_cast<Residue>(m.valuation(l)); });
      return doc;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown fixture kind");
}

inline AutomatonDocument build_for(const SequenceFixture& f, const ModulusSpec& m, const BuildOptions& opt = {}) {
  return build_for(f, fixture_registry(), m, opt);
}

/// The Lucas problem of a fixture mod p; s = 0 takes the fixture's root exponent.
inline lucas::LucasSpec lucas_spec(const SequenceFixture& f, std::uint64_t p, std::uint64_t s = 0) {
  if (!f.has_lucas()) fail(ErrorCode::InvalidArgument, f.name + " declares no Lucas polynomial");
  const ModulusSpec m(p, 1);
  return lucas::LucasSpec{parse_mod_poly(f.lucas_q, lucas_arity(f), m), s ? s : f.lucas_s, lucas_partition(f)};
}

struct Mismatch {
  std::vector<std::uint64_t> index;
  Residue expected = 0;
  Residue actual = 0;
};

struct VerifyReport {
  std::size_t checked = 0;
  std::optional<Mismatch> mismatch;

  bool ok() const { return !mismatch; }
};

/// Compares the document with the fixture's oracle on every valid index
/// n < N (every tuple below N on each axis for multidimensional fixtures).
inline VerifyReport verify_document(const AutomatonDocument& doc, const SequenceFixture& f, const Registry& reg,
                                    std::size_t N) {
  VerifyReport r;
  const ModulusSpec m(doc.p, doc.alpha);
  if (doc.arity() == 1) {
    const auto expect = oracle_terms(f, reg, m, N);
    for (std::uint64_t n = 0; n < N; ++n) {
      Residue got = doc.value(n);
      ++r.checked;
      if (got != expect[n]) {
        r.mismatch = Mismatch{{n}, expect[n], got};
        return r;
      }
    }
    return r;
  }
  if (doc.arity() != 2) fail(ErrorCode::ArityUnsupported, "grid verification handles two indices");
  const auto grid = oracle_grid(f, N);
  for (std::uint64_t a = 0; a < N; ++a) {
    for (std::uint64_t b = 0; b < N; ++b) {
      Residue expect = reduce_big(grid[a * N + b], m.modulus());
      Residue got = doc.automaton.run({a, b});
      ++r.checked;
      if (got != expect) {
        r.mismatch = Mismatch{{a, b}, expect, got};
        return r;
      }
    }
  }
  return r;
}

/// Residue classes of a one-dimensional sequence, stated for all n >= 0.
struct ResidueReport {
  std::uint64_t modulus = 0;
  std::vector<Residue> declared;
  /// Labels of a_n for n >= threshold.
  std::set<Residue> attained_from_threshold;
  /// Labels attained by no n >= threshold.
  std::set<Residue> forbidden_from_threshold;
  /// Labels attained by no n >= 0.
  std::set<Residue> forbidden;
  /// Labels attained by only finitely many n, with every such n.
  std::map<Residue, std::vector<std::uint64_t>> finite;
};

inline std::vector<Residue> declared_labels(const AutomatonDocument& doc) {
  if (doc.labels == "valuation") {
    std::vector<Residue> v;
    for (Residue e = 0; e <= doc.alpha; ++e) v.push_back(e);
    return v;
  }
  return analysis::residue_labels(doc.modulus());
}

inline ResidueReport residue_report(const AutomatonDocument& doc) {
  if (doc.arity() != 1) fail(ErrorCode::ArityUnsupported, "residue reports are for one-dimensional sequences");
  ResidueReport r;
  r.modulus = doc.modulus();
  r.declared = declared_labels(doc);
  const auto att = analysis::attained_outputs(doc.automaton, r.declared);
  r.attained_from_threshold = att.attained;
  // Index m = 0 is a real sequence index only when nothing was cut off.
  const bool zero_valid = doc.validity_threshold == 0;
  if (zero_valid) r.attained_from_threshold.insert(att.zero_output);
  std::set<Residue> all = r.attained_from_threshold;
  for (auto v : doc.initial_values) all.insert(v);
  for (auto l : r.declared) {
    if (!r.attained_from_threshold.count(l)) r.forbidden_from_threshold.insert(l);
    if (!all.count(l)) r.forbidden.insert(l);
  }
  for (auto l : all) {
    auto fin = analysis::label_finiteness(doc.automaton, l);
    if (fin.infinite) continue;
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = 0; n < doc.validity_threshold; ++n) {
      if (doc.initial_values.at(n) == l) ns.push_back(n);
    }
    for (const auto& t : fin.indices) {
      if (t[0] == 0 && !zero_valid) continue;
      ns.push_back(t[0] + doc.index_offset);
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    r.finite[l] = std::move(ns);
  }
  return r;
}

}  // namespace autocong::corpus
