#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "autocong/dfao.hpp"
#include "autocong/error.hpp"

namespace autocong::analysis {

/// The regular language of canonical nonempty words (last symbol nonzero)
/// that drive an automaton into an accepting state. Internally each state is
/// paired with a flag recording whether the last symbol read was nonzero.
class CanonicalLanguage {
 public:
  template <typename Label, typename Pred>
  CanonicalLanguage(const Dfao<Label>& d, Pred&& accept_label)
      : p_(d.base()), arity_(d.arity()), alphabet_(d.alphabet_size()), n_(d.size()), start_(d.initial()) {
    delta_.resize(n_ * alphabet_);
    accept_.resize(n_);
    for (StateId s = 0; s < n_; ++s) {
      accept_[s] = accept_label(d.output(s)) ? 1 : 0;
      for (Symbol a = 0; a < alphabet_; ++a) delta_[s * alphabet_ + a] = d.next(s, a);
    }
    compute_useful();
  }

  bool empty() const { return !useful_[node(start_, 0)]; }

  /// True when the language has infinitely many words, i.e. a cycle lies on
  /// some path from the start to an accepting node.
  bool infinite() const { return cycle_node_.has_value(); }

  /// All accepted words (only meaningful when finite). Fails with
  /// BudgetExceeded past `limit` words.
  std::vector<std::vector<Symbol>> enumerate(std::size_t limit = 1'000'000) const {
    if (infinite()) fail(ErrorCode::InvalidArgument, "cannot enumerate an infinite language");
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> word;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      if (accepting(v)) {
        out.push_back(word);
        if (out.size() > limit) fail(ErrorCode::BudgetExceeded, "too many accepted words to enumerate");
      }
      for (Symbol a = 0; a < alphabet_; ++a) {
        std::size_t w = succ(v, a);
        if (!useful_[w]) continue;
        word.push_back(a);
        dfs(w);
        word.pop_back();
      }
    };
    if (!empty()) dfs(node(start_, 0));
    return out;
  }

  /// The accepted word spelling the smallest integer (one-dimensional input):
  /// shortest length first, then smallest most significant digits.
  std::optional<std::vector<Symbol>> smallest_word() const {
    if (empty()) return std::nullopt;
    // Layers of nodes reachable in exactly j steps, up to the first layer
    // containing an accepting node.
    std::vector<std::vector<char>> layers;
    layers.emplace_back(2 * n_, 0);
    layers[0][node(start_, 0)] = 1;
    std::size_t L = 0;
    for (;;) {
      bool hit = false;
      for (std::size_t v = 0; v < 2 * n_; ++v) hit = hit || (layers[L][v] && accepting(v));
      if (hit && L > 0) break;
      std::vector<char> next(2 * n_, 0);
      bool any = false;
      for (std::size_t v = 0; v < 2 * n_; ++v) {
        if (!layers[L][v] || !useful_[v]) continue;
        for (Symbol a = 0; a < alphabet_; ++a) {
          std::size_t w = succ(v, a);
          if (useful_[w]) next[w] = any = 1;
        }
      }
      if (!any) return std::nullopt;
      layers.push_back(std::move(next));
      ++L;
    }
    // Fix digits from the most significant (last read) down.
    std::vector<char> target(2 * n_, 0);
    for (std::size_t v = 0; v < 2 * n_; ++v) target[v] = accepting(v);
    std::vector<Symbol> word(L);
    for (std::size_t j = L; j-- > 0;) {
      bool chosen = false;
      for (Symbol a = 0; a < alphabet_ && !chosen; ++a) {
        std::vector<char> prev(2 * n_, 0);
        bool any = false;
        for (std::size_t v = 0; v < 2 * n_; ++v) {
          if (layers[j][v] && target[succ(v, a)]) prev[v] = any = 1;
        }
        if (any) {
          word[j] = a;
          target.swap(prev);
          chosen = true;
        }
      }
      if (!chosen) fail(ErrorCode::VerificationFailed, "inconsistent layer search");
    }
    return word;
  }

  /// A decomposition u v w (v nonempty) with u v^i w accepted for every i >= 0.
  struct Pump {
    std::vector<Symbol> u, v, w;
  };
  std::optional<Pump> pump() const {
    if (!cycle_node_) return std::nullopt;
    std::size_t x = *cycle_node_;
    Pump pm;
    pm.u = path(node(start_, 0), [&](std::size_t t) { return t == x; });
    // Cycle from x back to x: first step to any useful successor that can return.
    for (Symbol a = 0; a < alphabet_ && pm.v.empty(); ++a) {
      std::size_t y = succ(x, a);
      if (!useful_[y]) continue;
      if (y == x) {
        pm.v = {a};
        break;
      }
      auto back = path(y, [&](std::size_t t) { return t == x; }, true);
      if (!back.empty() || y == x) {
        pm.v.push_back(a);
        pm.v.insert(pm.v.end(), back.begin(), back.end());
      }
    }
    pm.w = path(x, [&](std::size_t t) { return accepting(t); });
    return pm;
  }

  std::uint64_t base() const noexcept { return p_; }
  std::size_t arity() const noexcept { return arity_; }

 private:
  std::size_t node(StateId s, int flag) const { return 2 * static_cast<std::size_t>(s) + flag; }
  std::size_t succ(std::size_t v, Symbol a) const { return node(delta_[(v / 2) * alphabet_ + a], a != 0 ? 1 : 0); }
  bool accepting(std::size_t v) const { return (v & 1) && accept_[v / 2]; }

  void compute_useful() {
    const std::size_t N = 2 * n_;
    std::vector<char> reach(N, 0), coreach(N, 0);
    std::vector<std::size_t> stack{node(start_, 0)};
    reach[stack[0]] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (Symbol a = 0; a < alphabet_; ++a) {
        std::size_t w = succ(v, a);
        if (!reach[w]) {
          reach[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::vector<std::vector<std::size_t>> pred(N);
    for (std::size_t v = 0; v < N; ++v) {
      if (!reach[v]) continue;
      for (Symbol a = 0; a < alphabet_; ++a) pred[succ(v, a)].push_back(v);
    }
    for (std::size_t v = 0; v < N; ++v) {
      if (reach[v] && accepting(v)) {
        coreach[v] = 1;
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : pred[v]) {
        if (!coreach[u]) {
          coreach[u] = 1;
          stack.push_back(u);
        }
      }
    }
    useful_.assign(N, 0);
    for (std::size_t v = 0; v < N; ++v) useful_[v] = reach[v] && coreach[v];
    // Kahn's algorithm on the useful subgraph; leftovers lie on or behind cycles.
    std::vector<std::size_t> indeg(N, 0);
    for (std::size_t v = 0; v < N; ++v) {
      if (!useful_[v]) continue;
      for (Symbol a = 0; a < alphabet_; ++a) {
        std::size_t w = succ(v, a);
        if (useful_[w]) ++indeg[w];
      }
    }
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < N; ++v) {
      if (useful_[v] && indeg[v] == 0) queue.push_back(v);
    }
    std::vector<char> removed(N, 0);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t v = queue[i];
      removed[v] = 1;
      for (Symbol a = 0; a < alphabet_; ++a) {
        std::size_t w = succ(v, a);
        if (useful_[w] && --indeg[w] == 0) queue.push_back(w);
      }
    }
    // A leftover node may only sit downstream of a cycle; walk backwards along
    // leftover predecessors until a node repeats, which is on a cycle.
    for (std::size_t v = 0; v < N; ++v) {
      if (!useful_[v] || removed[v]) continue;
      std::vector<char> seen(N, 0);
      std::size_t x = v;
      while (!seen[x]) {
        seen[x] = 1;
        std::size_t nx = x;
        for (std::size_t u : pred[x]) {
          if (useful_[u] && !removed[u]) {
            nx = u;
            break;
          }
        }
        x = nx;
      }
      cycle_node_ = x;
      break;
    }
  }

  /// Shortest path (as symbols) within useful nodes from `from` to a node
  /// satisfying `goal`; with `nonempty` the path must take at least one step.
  template <typename Goal>
  std::vector<Symbol> path(std::size_t from, Goal&& goal, bool nonempty = false) const {
    if (!nonempty && goal(from)) return {};
    const std::size_t N = 2 * n_;
    std::vector<std::size_t> parent(N, N);
    std::vector<Symbol> via(N, 0);
    std::vector<std::size_t> queue{from};
    std::vector<char> seen(N, 0);
    seen[from] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t v = queue[i];
      for (Symbol a = 0; a < alphabet_; ++a) {
        std::size_t w = succ(v, a);
        if (!useful_[w]) continue;
        if (goal(w)) {
          std::vector<Symbol> out{a};
          for (std::size_t t = v; t != from; t = parent[t]) out.push_back(via[t]);
          std::reverse(out.begin(), out.end());
          return out;
        }
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          via[w] = a;
          queue.push_back(w);
        }
      }
    }
    return {};
  }

  std::uint64_t p_;
  std::size_t arity_;
  std::uint32_t alphabet_;
  std::size_t n_;
  StateId start_;
  std::vector<StateId> delta_;
  std::vector<char> accept_;
  std::vector<char> useful_;
  std::optional<std::size_t> cycle_node_;
};

}  // namespace autocong::analysis
