#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "autocong/analysis/language.hpp"
#include "autocong/dfao.hpp"

namespace autocong::analysis {

template <typename Label>
struct AttainmentReport {
  /// Outputs over nonzero index tuples.
  std::set<Label> attained;
  /// Output on the all-zero index, kept apart because fixtures may modify it.
  Label zero_output{};
  /// Declared labels never attained by a nonzero index.
  std::set<Label> forbidden;
};

/// Outputs reachable through a final symbol with a nonzero component. Every
/// canonical representation of a nonzero index ends with such a symbol, and
/// every reachable state is reached by some word, which can be extended by the
/// symbol; so the result is exact, with no enumeration of integers.
template <typename Label>
AttainmentReport<Label> attained_outputs(const Dfao<Label>& d, const std::vector<Label>& declared) {
  AttainmentReport<Label> r;
  r.zero_output = d.output(d.initial());
  for (StateId t : d.reachable()) {
    for (Symbol a = 1; a < d.alphabet_size(); ++a) r.attained.insert(d.output(d.next(t, a)));
  }
  for (const auto& l : declared) {
    if (!r.attained.count(l)) r.forbidden.insert(l);
  }
  return r;
}

/// Residues 0..modulus-1 as the declared label set.
inline std::vector<std::uint64_t> residue_labels(std::uint64_t modulus) {
  std::vector<std::uint64_t> v(modulus);
  for (std::uint64_t i = 0; i < modulus; ++i) v[i] = i;
  return v;
}

struct Finiteness {
  bool infinite = false;
  /// Every index attaining the label, sorted (only when finite).
  std::vector<std::vector<std::uint64_t>> indices;
};

template <typename Label>
using FinitenessReport = std::map<Label, Finiteness>;

/// For one label, decides whether infinitely many indices attain it and
/// otherwise lists them all (including the all-zero index when it does).
template <typename Label>
Finiteness label_finiteness(const Dfao<Label>& d, const Label& label) {
  CanonicalLanguage lang(d, [&](const Label& l) { return l == label; });
  Finiteness f;
  if (lang.infinite()) {
    f.infinite = true;
    return f;
  }
  if (d.output(d.initial()) == label) f.indices.push_back(std::vector<std::uint64_t>(d.arity(), 0));
  for (const auto& w : lang.enumerate()) f.indices.push_back(word_to_indices(w, d.base(), d.arity()));
  std::sort(f.indices.begin(), f.indices.end(), [](const auto& a, const auto& b) {
    // Order by the largest component first, then lexicographically.
    auto ma = *std::max_element(a.begin(), a.end()), mb = *std::max_element(b.begin(), b.end());
    return ma != mb ? ma < mb : a < b;
  });
  return f;
}

template <typename Label>
FinitenessReport<Label> finitely_attained(const Dfao<Label>& d, const std::vector<Label>& declared) {
  FinitenessReport<Label> r;
  for (const auto& l : declared) r.emplace(l, label_finiteness(d, l));
  return r;
}

/// Convenience for one-dimensional reports.
inline std::vector<std::uint64_t> scalar_indices(const Finiteness& f) {
  std::vector<std::uint64_t> v;
  for (const auto& t : f.indices) v.push_back(t.at(0));
  return v;
}

}  // namespace autocong::analysis
