#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "autocong/dfao.hpp"
#include "autocong/error.hpp"

namespace autocong::analysis {

using Rational = boost::multiprecision::cpp_rational;

enum class FrequencyMode {
  /// Every reachable bottom component is aperiodic, so the densities over
  /// n < p^L converge.
  Limit,
  /// Some bottom component is periodic; the values are Cesaro averages.
  Cesaro,
};

template <typename Label>
struct FrequencyReport {
  std::map<Label, Rational> frequency;
  FrequencyMode mode = FrequencyMode::Limit;
  /// True only when the plain limit is certified (mode Limit).
  bool limit_exists = true;
};

namespace detail {

/// Solves A x = b exactly; A is square and nonsingular.
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) fail(ErrorCode::VerificationFailed, "singular system in frequency computation");
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

/// Tarjan's strongly connected components; components come out in reverse
/// topological order (sinks first).
inline std::vector<std::vector<StateId>> strongly_connected(const std::vector<std::vector<StateId>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on(n, 0);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> comps;
  int counter = 0;
  // Iterative DFS frames: (vertex, next edge position).
  std::vector<std::pair<StateId, std::size_t>> frames;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        StateId w = adj[v][pos++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<StateId> comp;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      StateId done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return comps;
}

}  // namespace detail

/// Limiting output densities over indices n < p^L as L grows: the state after
/// L uniformly random digits is a Markov chain that settles into bottom
/// strongly connected components. Each bottom component contributes its
/// exact stationary distribution weighted by its absorption probability.
template <typename Label>
FrequencyReport<Label> output_frequencies(const Dfao<Label>& dfa) {
  const Dfao<Label> d = minimize(dfa);
  const std::size_t n = d.size();
  const std::uint32_t A = d.alphabet_size();
  const Rational w(1, A);
  std::vector<std::vector<StateId>> adj(n);
  for (StateId s = 0; s < n; ++s) {
    for (Symbol a = 0; a < A; ++a) adj[s].push_back(d.next(s, a));
    std::sort(adj[s].begin(), adj[s].end());
    adj[s].erase(std::unique(adj[s].begin(), adj[s].end()), adj[s].end());
  }
  auto comps = detail::strongly_connected(adj);
  std::vector<std::size_t> comp_of(n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (StateId s : comps[c]) comp_of[s] = c;
  }
  FrequencyReport<Label> report;
  // Stationary mass of each state inside its bottom component (zero elsewhere).
  std::vector<Rational> stationary(n, 0);
  std::vector<char> bottom(comps.size(), 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& C = comps[c];
    bool closed = true;
    for (StateId s : C) {
      for (StateId t : adj[s]) closed = closed && comp_of[t] == c;
    }
    if (!closed) continue;
    bottom[c] = 1;
    const std::size_t m = C.size();
    std::map<StateId, std::size_t> local;
    for (std::size_t i = 0; i < m; ++i) local[C[i]] = i;
    // pi (P - I) = 0 with the last equation replaced by sum pi = 1.
    std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      M[i][i] -= 1;
      for (Symbol a = 0; a < A; ++a) M[local[d.next(C[i], a)]][i] += w;
    }
    std::vector<Rational> rhs(m, 0);
    for (std::size_t i = 0; i < m; ++i) M[m - 1][i] = 1;
    rhs[m - 1] = 1;
    auto pi = detail::solve(M, rhs);
    for (std::size_t i = 0; i < m; ++i) stationary[C[i]] = pi[i];
    // Period: gcd of level differences along internal edges of a BFS tree.
    std::vector<long> level(m, -1);
    level[0] = 0;
    std::vector<std::size_t> queue{0};
    long period = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t i = queue[q];
      for (Symbol a = 0; a < A; ++a) {
        std::size_t j = local[d.next(C[i], a)];
        if (level[j] < 0) {
          level[j] = level[i] + 1;
          queue.push_back(j);
        } else {
          period = std::gcd(period, std::labs(level[i] + 1 - level[j]));
        }
      }
    }
    if (period != 1) {
      report.mode = FrequencyMode::Cesaro;
      report.limit_exists = false;
    }
  }
  // Components are in sink-first order, so successors are solved before each
  // transient component. absorb[s][b] is the probability of ending in bottom b.
  std::vector<std::vector<Rational>> absorb(n);
  std::vector<std::size_t> bottoms;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (bottom[c]) bottoms.push_back(c);
  }
  std::map<std::size_t, std::size_t> bottom_slot;
  for (std::size_t i = 0; i < bottoms.size(); ++i) bottom_slot[bottoms[i]] = i;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& C = comps[c];
    if (bottom[c]) {
      for (StateId s : C) {
        absorb[s].assign(bottoms.size(), 0);
        absorb[s][bottom_slot[c]] = 1;
      }
      continue;
    }
    const std::size_t m = C.size();
    std::map<StateId, std::size_t> local;
    for (std::size_t i = 0; i < m; ++i) local[C[i]] = i;
    for (StateId s : C) absorb[s].assign(bottoms.size(), 0);
    for (std::size_t b = 0; b < bottoms.size(); ++b) {
      // h = P h restricted to C, with exits to solved states moved to the right side.
      std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m, 0));
      std::vector<Rational> rhs(m, 0);
      for (std::size_t i = 0; i < m; ++i) {
        M[i][i] += 1;
        for (Symbol a = 0; a < A; ++a) {
          StateId t = d.next(C[i], a);
          if (comp_of[t] == c) {
            M[i][local[t]] -= w;
          } else {
            rhs[i] += w * absorb[t][b];
          }
        }
      }
      auto h = detail::solve(M, rhs);
      for (std::size_t i = 0; i < m; ++i) absorb[C[i]][b] = h[i];
    }
  }
  for (StateId s = 0; s < n; ++s) report.frequency.emplace(d.output(s), Rational(0));
  for (std::size_t b = 0; b < bottoms.size(); ++b) {
    const Rational& mass = absorb[d.initial()][b];
    if (mass == 0) continue;
    for (StateId s : comps[bottoms[b]]) report.frequency[d.output(s)] += mass * stationary[s];
  }
  return report;
}

}  // namespace autocong::analysis
