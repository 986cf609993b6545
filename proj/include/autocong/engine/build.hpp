#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "autocong/dfao.hpp"
#include "autocong/engine/problem.hpp"
#include "autocong/error.hpp"
#include "autocong/mod_poly.hpp"

namespace autocong {

inline constexpr const char* kEngineVersion = "1.0.0";

enum class Variant {
  /// mu_d(s) = Lambda_d(s * Q^(p^alpha - p^(alpha-1)))
  Standard,
  /// mu_d(s) = Lambda_d(s) * Q^(p^alpha - p^(alpha-1)); states denote s / Q^(p^alpha)
  PostCartier,
};

inline std::string to_string(Variant v) { return v == Variant::Standard ? "standard" : "post-cartier"; }

struct EngineOptions {
  Variant variant = Variant::Standard;
  std::size_t state_cap = 1'000'000;
  bool check_degree_bound = true;
  /// Worker threads for frontier expansion; numbering is committed in BFS
  /// order, so the result does not depend on this value.
  unsigned threads = 1;
};

struct BuildResult {
  Dfao<Residue> automaton;
  /// Polynomial behind each state, indexed like the automaton.
  std::vector<ModPoly> states;
  Variant variant = Variant::Standard;
  long degree_bound = -1;
  long max_state_degree = -1;
};

/// Raised when exploration exceeds the state cap. `partial` holds the states
/// found so far; unexplored states loop to themselves.
class StateExplosionError : public Error {
 public:
  StateExplosionError(const std::string& what, Dfao<Residue> partial, std::size_t explored)
      : Error(ErrorCode::StateExplosion, what), partial_(std::move(partial)), explored_(explored) {}
  const Dfao<Residue>& partial() const noexcept { return partial_; }
  std::size_t explored() const noexcept { return explored_; }

 private:
  Dfao<Residue> partial_;
  std::size_t explored_;
};

/// Drops the monomials that no Lambda_{d_gamma(1), ..., d_gamma(k)} can select:
/// those whose exponents differ mod p inside some block of the partition.
inline ModPoly keep_block_congruent(const ModPoly& s, const SetPartition& B) {
  const std::uint64_t p = s.modulus().p();
  std::vector<Exponent> exps;
  std::vector<Residue> coeffs;
  for (std::size_t t = 0; t < s.size(); ++t) {
    auto e = s.exponents(t);
    bool keep = true;
    for (const auto& block : B.blocks()) {
      for (std::size_t v : block) keep = keep && e[v] % p == e[block.front()] % p;
    }
    if (!keep) continue;
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(s.coefficient(t));
  }
  return ModPoly::from_canonical(s.arity(), s.modulus(), std::move(exps), std::move(coeffs));
}

/// R * Q^(p^(alpha-1) - 1) for the standard variant. The post-Cartier variant
/// starts from R * Q^(p^alpha - 1) restricted to block-congruent monomials;
/// since Q^(p^alpha) is a series in x^p mod p^alpha, the dropped terms never
/// reach a diagonal coefficient.
inline ModPoly initial_state(const DiagonalProblem& problem, Variant variant = Variant::Standard) {
  const auto& m = problem.modulus;
  if (variant == Variant::Standard) return poly_mul(problem.R, poly_pow(problem.Q, m.previous_power() - 1));
  return keep_block_congruent(poly_mul(problem.R, poly_pow(problem.Q, m.modulus() - 1)), problem.partition);
}

/// Precomputed data for the transition maps of one problem.
class MuKernel {
 public:
  MuKernel(const DiagonalProblem& problem, Variant variant, long state_degree_bound)
      : problem_(problem), variant_(variant), k_(problem.arity()), p_(problem.modulus.p()) {
    const auto& m = problem.modulus;
    T_ = poly_pow(problem.Q, m.modulus() - m.previous_power());
    if (variant != Variant::Standard || state_degree_bound < 0) return;
    // Output box of Lambda(s*T) for any state within the bound.
    auto dt = T_.degrees();
    dims_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      dims_[i] = static_cast<std::size_t>((state_degree_bound + std::max<long>(dt[i], 0)) / static_cast<long>(p_) + 2);
    }
    bound_ = state_degree_bound;
    if (detail::box_volume(dims_) > detail::kDenseVolumeLimit) return;
    strides_.assign(k_, 1);
    for (std::size_t i = k_; i-- > 1;) strides_[i - 1] = strides_[i] * dims_[i];
    std::size_t nbins = 1;
    for (std::size_t i = 0; i < k_; ++i) nbins *= p_;
    bins_.assign(nbins, {});
    for (std::size_t t = 0; t < T_.size(); ++t) {
      auto f = T_.exponents(t);
      std::size_t bin = 0, lin = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        bin = bin * p_ + f[i] % p_;
        lin += (f[i] / p_) * strides_[i];
      }
      bins_[bin].push_back({lin, T_.coefficient(t)});
    }
    binned_ = true;
  }

  const ModPoly& multiplier() const noexcept { return T_; }
  bool binned() const noexcept { return binned_; }

  /// mu_d for a |B|-tuple of digits.
  ModPoly apply(const ModPoly& s, std::span<const std::uint32_t> digits) const {
    auto full = problem_.partition.expand(digits);
    if (variant_ == Variant::PostCartier) return post_cartier(s, full);
    if (!binned_ || s.degree() > bound_) return cartier(poly_mul(s, T_), full);
    detail::DenseAccumulator acc(problem_.modulus, dims_);
    return apply_binned(s, full, acc);
  }

  /// mu_d for every digit tuple in ascending symbol order.
  std::vector<ModPoly> apply_all(const ModPoly& s) const {
    const std::size_t b = problem_.partition.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < b; ++i) count *= p_;
    std::vector<ModPoly> out;
    out.reserve(count);
    std::vector<std::uint32_t> digits(b, 0);
    std::optional<detail::DenseAccumulator> acc;
    std::optional<ModPoly> product;
    const bool use_bins = variant_ == Variant::Standard && binned_ && s.degree() <= bound_;
    if (use_bins) acc.emplace(problem_.modulus, dims_);
    for (std::size_t sym = 0; sym < count; ++sym) {
      std::size_t rem = sym;
      for (std::size_t i = b; i-- > 0;) {
        digits[i] = static_cast<std::uint32_t>(rem % p_);
        rem /= p_;
      }
      auto full = problem_.partition.expand(digits);
      if (variant_ == Variant::PostCartier) {
        out.push_back(post_cartier(s, full));
      } else if (use_bins) {
        out.push_back(apply_binned(s, full, *acc));
      } else {
        if (!product) product = poly_mul(s, T_);
        out.push_back(cartier(*product, full));
      }
    }
    return out;
  }

 private:
  ModPoly post_cartier(const ModPoly& s, std::span<const std::uint32_t> full) const {
    return keep_block_congruent(poly_mul(cartier(s, full), T_), problem_.partition);
  }

  struct BinTerm {
    std::size_t lin;
    Residue c;
  };

  // For a state term x^e and target digits D, the T-terms x^f that can
  // contribute satisfy f = D - e (mod p) componentwise: exactly one residue
  // bin. Within that bin the carry (e mod p + f mod p - D) / p is fixed, so
  // the output exponent is e div p + f div p + carry.
  ModPoly apply_binned(const ModPoly& s, std::span<const std::uint32_t> D, detail::DenseAccumulator& acc) const {
    for (std::size_t t = 0; t < s.size(); ++t) {
      auto e = s.exponents(t);
      std::size_t bin = 0, base = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        std::uint64_t er = e[i] % p_;
        std::uint64_t fr = (D[i] + p_ - er) % p_;
        std::uint64_t carry = (er + fr - D[i]) / p_;
        bin = bin * p_ + fr;
        base += (e[i] / p_ + carry) * strides_[i];
      }
      Residue a = s.coefficient(t);
      for (const auto& bt : bins_[bin]) acc.add_product(base + bt.lin, a, bt.c);
    }
    return acc.extract();
  }

  const DiagonalProblem& problem_;
  Variant variant_;
  std::size_t k_;
  std::uint64_t p_;
  ModPoly T_;
  long bound_ = -1;
  bool binned_ = false;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<BinTerm>> bins_;
};

/// m = max(deg(R * Q^(p^(alpha-1) - 1)), p^(alpha-1) deg Q); every Standard
/// state stays within it.
inline long state_degree_bound(const DiagonalProblem& problem) {
  long a = initial_state(problem, Variant::Standard).degree();
  long b = static_cast<long>(problem.modulus.previous_power()) * problem.Q.degree();
  return std::max(a, b);
}

/// One transition of the engine, for a |B|-tuple of digits.
inline ModPoly mu_step(const ModPoly& state, std::span<const std::uint32_t> digits, const DiagonalProblem& problem,
                       Variant variant = Variant::Standard) {
  MuKernel kernel(problem, variant, variant == Variant::Standard ? state_degree_bound(problem) : -1);
  return kernel.apply(state, digits);
}

/// Breadth-first closure of the initial state under all mu maps. States are
/// numbered in discovery order, scanning digit tuples in ascending order; the
/// output of a state is its value at the origin.
inline BuildResult build_automaton(const DiagonalProblem& input, const EngineOptions& options = {}) {
  const DiagonalProblem problem = input.is_normalized() ? input : input.normalized();
  const std::size_t b = problem.partition.size();
  const std::uint64_t p = problem.modulus.p();
  BuildResult result;
  result.variant = options.variant;
  const long bound = state_degree_bound(problem);
  result.degree_bound = options.variant == Variant::Standard ? bound : -1;
  MuKernel kernel(problem, options.variant, options.variant == Variant::Standard ? bound : -1);

  Dfao<Residue> d(p, b);
  std::unordered_map<ModPoly, StateId, ModPolyHash> index;
  std::vector<ModPoly>& states = result.states;

  auto intern = [&](ModPoly s) -> StateId {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (options.variant == Variant::Standard && options.check_degree_bound && s.degree() > bound) {
      fail(ErrorCode::VerificationFailed, "state degree " + std::to_string(s.degree()) + " exceeds the bound " +
                                              std::to_string(bound));
    }
    result.max_state_degree = std::max(result.max_state_degree, s.degree());
    StateId id = d.add_state(s.constant_term());
    index.emplace(s, id);
    states.push_back(std::move(s));
    return id;
  };

  auto explode = [&](std::size_t explored) {
    for (StateId s = static_cast<StateId>(explored); s < d.size(); ++s) {
      for (Symbol a = 0; a < d.alphabet_size(); ++a) d.set_transition(s, a, s);
    }
    throw StateExplosionError("more than " + std::to_string(options.state_cap) + " states", d, explored);
  };

  d.set_initial(intern(initial_state(problem, options.variant)));
  const unsigned threads = std::max(1u, options.threads);
  std::size_t next = 0;
  while (next < states.size()) {
    // Expand a batch of pending states (possibly in parallel), then commit
    // their successors sequentially so numbering matches the serial order.
    std::size_t end = std::min(states.size(), next + (threads == 1 ? 1 : 4 * static_cast<std::size_t>(threads)));
    std::vector<std::vector<ModPoly>> succ(end - next);
    if (threads == 1 || end - next == 1) {
      for (std::size_t i = next; i < end; ++i) succ[i - next] = kernel.apply_all(states[i]);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next + w; i < end; i += threads) succ[i - next] = kernel.apply_all(states[i]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t i = next; i < end; ++i) {
      auto& out = succ[i - next];
      for (Symbol a = 0; a < out.size(); ++a) {
        StateId t = intern(std::move(out[a]));
        d.set_transition(static_cast<StateId>(i), a, t);
        if (d.size() > options.state_cap) explode(i);
      }
    }
    next = end;
  }
  result.automaton = std::move(d);
  return result;
}

}  // namespace autocong
