#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "autocong/error.hpp"

namespace autocong {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;

inline std::uint64_t checked_power(std::uint64_t p, std::size_t l) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < l; ++i) {
    if (r > std::numeric_limits<std::uint32_t>::max() / p) fail(ErrorCode::InvalidArgument, "alphabet too large");
    r *= p;
  }
  return r;
}

/// Base-p digits of n, least significant first; 0 has no digits.
inline std::vector<std::uint32_t> base_digits(std::uint64_t n, std::uint64_t p) {
  std::vector<std::uint32_t> d;
  while (n) {
    d.push_back(static_cast<std::uint32_t>(n % p));
    n /= p;
  }
  return d;
}

/// Deterministic finite automaton with output reading tuples of base-p digits,
/// least significant first. A symbol packs an l-tuple (d_1, ..., d_l) as
/// sum d_i p^(l-i), so the first component is most significant.
template <typename Label = std::uint64_t>
class Dfao {
 public:
  using label_type = Label;

  Dfao() = default;
  Dfao(std::uint64_t p, std::size_t arity) : p_(p), arity_(arity), alphabet_(checked_power(p, arity)) {
    if (p < 2) fail(ErrorCode::InvalidArgument, "base must be at least 2");
  }

  static Dfao constant(std::uint64_t p, std::size_t arity, Label value) {
    Dfao d(p, arity);
    StateId s = d.add_state(value);
    for (Symbol a = 0; a < d.alphabet_size(); ++a) d.set_transition(s, a, s);
    return d;
  }

  std::uint64_t base() const noexcept { return p_; }
  std::size_t arity() const noexcept { return arity_; }
  std::uint32_t alphabet_size() const noexcept { return static_cast<std::uint32_t>(alphabet_); }
  std::size_t size() const noexcept { return outputs_.size(); }
  StateId initial() const noexcept { return initial_; }
  void set_initial(StateId s) {
    check_state(s);
    initial_ = s;
  }

  StateId add_state(Label output) {
    outputs_.push_back(std::move(output));
    delta_.resize(outputs_.size() * alphabet_, 0);
    return static_cast<StateId>(outputs_.size() - 1);
  }

  Label output(StateId s) const { return outputs_.at(s); }
  void set_output(StateId s, Label v) { outputs_.at(s) = std::move(v); }
  StateId next(StateId s, Symbol a) const { return delta_[static_cast<std::size_t>(s) * alphabet_ + a]; }
  void set_transition(StateId s, Symbol a, StateId t) {
    check_state(s);
    check_state(t);
    if (a >= alphabet_) fail(ErrorCode::DigitOutOfRange, "symbol outside the alphabet");
    delta_[static_cast<std::size_t>(s) * alphabet_ + a] = t;
  }
  const std::vector<Label>& outputs() const noexcept { return outputs_; }

  Symbol encode(std::span<const std::uint32_t> digits) const {
    if (digits.size() != arity_) fail(ErrorCode::ArityMismatch, "digit tuple arity");
    Symbol a = 0;
    for (auto d : digits) {
      if (d >= p_) fail(ErrorCode::DigitOutOfRange, "digit not below the base");
      a = static_cast<Symbol>(a * p_ + d);
    }
    return a;
  }

  std::vector<std::uint32_t> decode(Symbol a) const {
    std::vector<std::uint32_t> d(arity_);
    for (std::size_t i = arity_; i-- > 0;) {
      d[i] = static_cast<std::uint32_t>(a % p_);
      a = static_cast<Symbol>(a / p_);
    }
    return d;
  }

  /// The padded LSD-first symbol word of an index tuple.
  std::vector<Symbol> word(std::span<const std::uint64_t> n) const {
    if (n.size() != arity_) fail(ErrorCode::ArityMismatch, "index tuple has wrong arity");
    std::vector<std::vector<std::uint32_t>> digits;
    std::size_t len = 0;
    for (auto v : n) {
      digits.push_back(base_digits(v, p_));
      len = std::max(len, digits.back().size());
    }
    std::vector<Symbol> w(len);
    for (std::size_t pos = 0; pos < len; ++pos) {
      Symbol a = 0;
      for (std::size_t i = 0; i < arity_; ++i) {
        std::uint32_t d = pos < digits[i].size() ? digits[i][pos] : 0;
        a = static_cast<Symbol>(a * p_ + d);
      }
      w[pos] = a;
    }
    return w;
  }

  StateId state_after(std::span<const Symbol> w) const {
    StateId s = initial_;
    for (Symbol a : w) s = next(s, a);
    return s;
  }

  Label run_word(std::span<const Symbol> w) const { return outputs_.at(state_after(w)); }

  Label run(std::span<const std::uint64_t> n) const { return run_word(word(n)); }
  Label run(std::initializer_list<std::uint64_t> n) const {
    return run(std::span<const std::uint64_t>(n.begin(), n.size()));
  }
  Label operator()(std::uint64_t n) const {
    if (arity_ != 1) fail(ErrorCode::ArityMismatch, "scalar index on a multidimensional automaton");
    std::uint64_t v[1] = {n};
    return run(std::span<const std::uint64_t>(v, 1));
  }

  /// States reachable from the initial state, in BFS order.
  std::vector<StateId> reachable() const {
    std::vector<StateId> order;
    if (size() == 0) return order;
    std::vector<char> seen(size(), 0);
    order.push_back(initial_);
    seen[initial_] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Symbol a = 0; a < alphabet_; ++a) {
        StateId t = next(order[i], a);
        if (!seen[t]) {
          seen[t] = 1;
          order.push_back(t);
        }
      }
    }
    return order;
  }

  friend bool operator==(const Dfao& a, const Dfao& b) {
    return a.p_ == b.p_ && a.arity_ == b.arity_ && a.initial_ == b.initial_ && a.outputs_ == b.outputs_ &&
           a.delta_ == b.delta_;
  }

 private:
  void check_state(StateId s) const {
    if (s >= outputs_.size()) fail(ErrorCode::InvalidArgument, "state index out of range");
  }

  std::uint64_t p_ = 2;
  std::size_t arity_ = 1;
  std::uint64_t alphabet_ = 2;
  std::vector<Label> outputs_;
  std::vector<StateId> delta_;
  StateId initial_ = 0;
};

/// Keeps only the states in `order` (which must be closed under transitions)
/// and renumbers them in that order.
template <typename Label>
Dfao<Label> renumber(const Dfao<Label>& d, const std::vector<StateId>& order) {
  std::vector<StateId> id(d.size(), std::numeric_limits<StateId>::max());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<StateId>(i);
  Dfao<Label> r(d.base(), d.arity());
  for (StateId s : order) r.add_state(d.output(s));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol a = 0; a < d.alphabet_size(); ++a) r.set_transition(static_cast<StateId>(i), a, id[d.next(order[i], a)]);
  }
  r.set_initial(id[d.initial()]);
  return r;
}

/// Moore partition refinement seeded by outputs, restricted to reachable
/// states, then renumbered breadth-first from the initial state.
template <typename Label>
Dfao<Label> minimize(const Dfao<Label>& d) {
  if (d.size() == 0) return d;
  auto reach = d.reachable();
  const std::size_t n = reach.size();
  std::vector<StateId> local(d.size(), 0);
  for (std::size_t i = 0; i < n; ++i) local[reach[i]] = static_cast<StateId>(i);
  std::vector<std::uint32_t> cls(n);
  {
    std::map<Label, std::uint32_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, _] = ids.emplace(d.output(reach[i]), static_cast<std::uint32_t>(ids.size()));
      cls[i] = it->second;
    }
  }
  std::size_t classes = 0;
  for (auto c : cls) classes = std::max<std::size_t>(classes, c + 1);
  const std::uint32_t A = d.alphabet_size();
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
    std::vector<std::uint32_t> next_cls(n);
    std::vector<std::uint32_t> sig(A + 1);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (Symbol a = 0; a < A; ++a) sig[a + 1] = cls[local[d.next(reach[i], a)]];
      auto [it, _] = sig_ids.emplace(sig, static_cast<std::uint32_t>(sig_ids.size()));
      next_cls[i] = it->second;
    }
    cls.swap(next_cls);
    if (sig_ids.size() == classes) break;
    classes = sig_ids.size();
  }
  Dfao<Label> q(d.base(), d.arity());
  std::vector<std::size_t> rep(classes, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rep[cls[i]] == n) rep[cls[i]] = i;
  }
  for (std::size_t c = 0; c < classes; ++c) q.add_state(d.output(reach[rep[c]]));
  for (std::size_t c = 0; c < classes; ++c) {
    for (Symbol a = 0; a < A; ++a) q.set_transition(static_cast<StateId>(c), a, cls[local[d.next(reach[rep[c]], a)]]);
  }
  q.set_initial(cls[0]);
  return renumber(q, q.reachable());
}

/// Synchronous product; the output of a pair is combine(output1, output2).
template <typename L1, typename L2, typename Combine>
auto product(const Dfao<L1>& d1, const Dfao<L2>& d2, Combine&& combine) {
  using Out = std::decay_t<std::invoke_result_t<Combine, const L1&, const L2&>>;
  if (d1.base() != d2.base() || d1.arity() != d2.arity()) {
    fail(ErrorCode::BaseMismatch, "product needs automata over the same base and arity");
  }
  Dfao<Out> r(d1.base(), d1.arity());
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId a, StateId b) {
    auto [it, inserted] = ids.emplace(std::make_pair(a, b), static_cast<StateId>(queue.size()));
    if (inserted) {
      queue.emplace_back(a, b);
      r.add_state(combine(d1.output(a), d2.output(b)));
    }
    return it->second;
  };
  intern(d1.initial(), d2.initial());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [a, b] = queue[i];
    for (Symbol s = 0; s < d1.alphabet_size(); ++s) {
      StateId t = intern(d1.next(a, s), d2.next(b, s));
      r.set_transition(static_cast<StateId>(i), s, t);
    }
  }
  r.set_initial(0);
  return r;
}

template <typename Label, typename F>
auto relabel(const Dfao<Label>& d, F&& f) {
  using Out = std::decay_t<std::invoke_result_t<F, const Label&>>;
  Dfao<Out> r(d.base(), d.arity());
  for (StateId s = 0; s < d.size(); ++s) r.add_state(f(d.output(s)));
  for (StateId s = 0; s < d.size(); ++s) {
    for (Symbol a = 0; a < d.alphabet_size(); ++a) r.set_transition(s, a, d.next(s, a));
  }
  if (d.size()) r.set_initial(d.initial());
  return r;
}

/// Converts an LSD-first symbol word back to the index tuple it spells.
/// Fails with IndexOverflow when a component does not fit in 64 bits.
inline std::vector<std::uint64_t> word_to_indices(std::span<const Symbol> w, std::uint64_t p, std::size_t arity) {
  std::vector<std::uint64_t> n(arity, 0);
  std::vector<std::uint64_t> weight(arity, 1);
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    Symbol a = w[pos];
    for (std::size_t i = arity; i-- > 0;) {
      std::uint64_t d = a % p;
      a = static_cast<Symbol>(a / p);
      if (d) {
        if (weight[i] == 0 || d > (std::numeric_limits<std::uint64_t>::max() - n[i]) / weight[i]) {
          fail(ErrorCode::IndexOverflow, "index does not fit in 64 bits");
        }
        n[i] += d * weight[i];
      }
    }
    if (pos + 1 < w.size()) {
      for (auto& wt : weight) wt = wt > std::numeric_limits<std::uint64_t>::max() / p ? 0 : wt * p;
    }
  }
  return n;
}

struct EquivalenceResult {
  bool equivalent = true;
  /// Shortest distinguishing word (LSD-first symbols) and the index it spells.
  std::vector<Symbol> witness_word;
  std::vector<std::uint64_t> counterexample;

  explicit operator bool() const noexcept { return equivalent; }
};

struct EquivalenceOptions {
  /// Compare the outputs on the all-zero index as well. Switch off when one
  /// side deliberately carries a modified initial term.
  bool include_zero_index = true;
};

/// Decides whether two automata compute the same function on index tuples.
/// Only canonical words matter: the empty word (all-zero index) and words whose
/// last symbol is nonzero. Breadth-first search returns a shortest witness.
template <typename L1, typename L2>
EquivalenceResult equivalent(const Dfao<L1>& d1, const Dfao<L2>& d2, EquivalenceOptions opt = {}) {
  if (d1.base() != d2.base() || d1.arity() != d2.arity()) {
    fail(ErrorCode::BaseMismatch, "equivalence needs automata over the same base and arity");
  }
  EquivalenceResult res;
  auto finish = [&](std::vector<Symbol> w) {
    res.equivalent = false;
    res.witness_word = std::move(w);
    res.counterexample = word_to_indices(res.witness_word, d1.base(), d1.arity());
    return res;
  };
  if (opt.include_zero_index && !(d1.output(d1.initial()) == d2.output(d2.initial()))) return finish({});
  std::map<std::pair<StateId, StateId>, std::size_t> seen;
  std::vector<std::pair<StateId, StateId>> queue;
  std::vector<std::pair<std::size_t, Symbol>> parent;
  auto path = [&](std::size_t i, Symbol last) {
    std::vector<Symbol> w{last};
    while (i != 0) {
      w.push_back(parent[i].second);
      i = parent[i].first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  queue.emplace_back(d1.initial(), d2.initial());
  parent.emplace_back(0, 0);
  seen.emplace(queue[0], 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [a, b] = queue[i];
    for (Symbol s = 0; s < d1.alphabet_size(); ++s) {
      StateId ta = d1.next(a, s), tb = d2.next(b, s);
      if (s != 0 && !(d1.output(ta) == d2.output(tb))) return finish(path(i, s));
      if (seen.emplace(std::make_pair(ta, tb), queue.size()).second) {
        queue.emplace_back(ta, tb);
        parent.emplace_back(i, s);
      }
    }
  }
  return res;
}

}  // namespace autocong
