#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "autocong/analysis/language.hpp"
#include "autocong/dfao.hpp"
#include "autocong/error.hpp"

namespace autocong::analysis {

/// Automaton computing n -> a_{n+m} from one computing n -> a_n. States are
/// (state of d, position within the digits of m, carry); when the input ends,
/// the pending value floor(m / p^pos) + carry is fed to d to resolve the output.
template <typename Label>
Dfao<Label> shift_automaton(const Dfao<Label>& d, std::uint64_t m) {
  if (d.arity() != 1) fail(ErrorCode::ArityUnsupported, "shifting needs a one-dimensional automaton");
  const std::uint64_t p = d.base();
  const auto mdigits = base_digits(m, p);
  const std::size_t len = mdigits.size();
  auto pending = [&](std::size_t pos, std::uint64_t carry) {
    std::uint64_t rest = 0;
    for (std::size_t i = len; i-- > pos;) rest = rest * p + mdigits[i];
    return rest + carry;
  };
  auto resolve = [&](StateId s, std::size_t pos, std::uint64_t carry) {
    for (auto digit : base_digits(pending(pos, carry), p)) s = d.next(s, digit);
    return d.output(s);
  };
  Dfao<Label> r(p, 1);
  using Key = std::tuple<StateId, std::size_t, std::uint64_t>;
  std::map<Key, StateId> ids;
  std::vector<Key> queue;
  auto intern = [&](const Key& k) {
    auto [it, inserted] = ids.emplace(k, static_cast<StateId>(queue.size()));
    if (inserted) {
      queue.push_back(k);
      r.add_state(resolve(std::get<0>(k), std::get<1>(k), std::get<2>(k)));
    }
    return it->second;
  };
  intern({d.initial(), 0, 0});
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [s, pos, carry] = queue[i];
    for (Symbol x = 0; x < p; ++x) {
      std::uint64_t sum = x + carry + (pos < len ? mdigits[pos] : 0);
      Key k{d.next(s, static_cast<Symbol>(sum % p)), std::min(pos + 1, len), sum / p};
      r.set_transition(static_cast<StateId>(i), x, intern(k));
    }
  }
  r.set_initial(0);
  return r;
}

struct PeriodVerdict {
  bool periodic = false;
  /// Periodic: a_n = a_{n+m} for all n >= threshold, and threshold is minimal.
  std::uint64_t threshold = 0;
  /// NotPeriodic: the smallest n >= 1 with a_n != a_{n+m}.
  std::uint64_t counterexample = 0;
  /// NotPeriodic: whether n = 0 is also a difference.
  bool differs_at_zero = false;
  /// NotPeriodic: u v^i w (LSD-first digit words) differ for every i >= 0.
  std::vector<Symbol> pump_u, pump_v, pump_w;
};

/// Decides whether a_n = a_{n+m} holds for all sufficiently large n, via the
/// regular language of indices where the two automata disagree.
template <typename Label>
PeriodVerdict verify_period(const Dfao<Label>& d, std::uint64_t m) {
  if (d.arity() != 1) fail(ErrorCode::ArityUnsupported, "period verification needs a one-dimensional automaton");
  if (m == 0) fail(ErrorCode::InvalidArgument, "period must be positive");
  auto diff = product(d, shift_automaton(d, m), [](const Label& a, const Label& b) { return !(a == b); });
  CanonicalLanguage lang(diff, [](bool v) { return v; });
  PeriodVerdict v;
  const bool zero_differs = diff.output(diff.initial());
  if (!lang.infinite()) {
    v.periodic = true;
    std::uint64_t last = 0;
    bool any = zero_differs;
    for (const auto& w : lang.enumerate()) {
      last = std::max(last, word_to_indices(w, d.base(), 1)[0]);
      any = true;
    }
    v.threshold = any ? last + 1 : 0;
    return v;
  }
  v.differs_at_zero = zero_differs;
  auto w = lang.smallest_word();
  v.counterexample = word_to_indices(*w, d.base(), 1)[0];
  auto pm = lang.pump();
  v.pump_u = pm->u;
  v.pump_v = pm->v;
  v.pump_w = pm->w;
  return v;
}

/// Number of occurrences of each digit in the standard base-p representation.
inline std::vector<std::uint64_t> digit_counts(std::uint64_t n, std::uint64_t p) {
  std::vector<std::uint64_t> e(p, 0);
  for (auto d : base_digits(n, p)) ++e[d];
  return e;
}

/// Number of maximal runs in the binary representation; block_count(0) = 0.
inline std::uint64_t block_count(std::uint64_t n) {
  std::uint64_t blocks = 0;
  int prev = -1;
  for (auto d : base_digits(n, 2)) {
    if (static_cast<int>(d) != prev) ++blocks;
    prev = static_cast<int>(d);
  }
  return blocks;
}

struct DigitStats {
  std::vector<std::uint64_t> counts;
  std::optional<std::uint64_t> blocks;  // binary only
};

inline DigitStats digit_stats(std::uint64_t n, std::uint64_t p) {
  DigitStats s{digit_counts(n, p), std::nullopt};
  if (p == 2) s.blocks = block_count(n);
  return s;
}

}  // namespace autocong::analysis
