#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "autocong/christol/fp_poly.hpp"
#include "autocong/dfao.hpp"
#include "autocong/error.hpp"
#include "autocong/mod_poly.hpp"

namespace autocong::christol {

/// P(x, y) = sum_j coeffs[j](x) y^j over F_p.
struct CurveFp {
  std::uint64_t p = 2;
  std::vector<FpPoly> coeffs;

  long degree_y() const { return static_cast<long>(coeffs.size()) - 1; }
};

/// Reads a bivariate polynomial (x, y) and reduces its coefficients mod p.
inline CurveFp curve_from(const ModPoly& P) {
  if (P.arity() != 2) fail(ErrorCode::ArityMismatch, "expected a polynomial in x and y");
  const std::uint64_t p = P.modulus().p();
  CurveFp c{p, {}};
  std::vector<std::vector<std::uint64_t>> raw;
  for (std::size_t t = 0; t < P.size(); ++t) {
    auto e = P.exponents(t);
    std::uint64_t v = P.coefficient(t) % p;
    if (!v) continue;
    if (raw.size() <= e[1]) raw.resize(e[1] + 1);
    if (raw[e[1]].size() <= e[0]) raw[e[1]].resize(e[0] + 1, 0);
    raw[e[1]][e[0]] = v;
  }
  for (auto& r : raw) c.coeffs.emplace_back(p, r);
  while (!c.coeffs.empty() && c.coeffs.back().is_zero()) c.coeffs.pop_back();
  return c;
}

/// g_0 y + g_1 y^p + ... + g_m y^(p^m) with g_0 != 0, primitive, g_0 monic.
struct OreForm {
  std::uint64_t p = 2;
  std::vector<FpPoly> g;

  std::size_t height() const { return g.size() - 1; }

  std::string to_string() const {
    std::string s;
    std::uint64_t e = 1;
    std::vector<std::string> parts;
    for (const auto& gi : g) {
      if (!gi.is_zero()) {
        std::string y = e == 1 ? "y" : "y^" + std::to_string(e);
        std::string c = gi.to_string();
        if (c == "1") {
          parts.push_back(y);
        } else if (gi.coeffs().size() > 1 && c.find('+') != std::string::npos) {
          parts.push_back("(" + c + ")*" + y);
        } else {
          parts.push_back(c + "*" + y);
        }
      }
      e *= p;
    }
    for (std::size_t i = parts.size(); i-- > 0;) {
      if (!s.empty()) s += " + ";
      s += parts[i];
    }
    return s;
  }
};

namespace detail {

using Vec = std::vector<RatFunc>;

inline FpPoly lcm(const FpPoly& a, const FpPoly& b) { return (a * b).divmod(gcd(a, b)).first.monic(); }

/// Divides out the gcd of the coefficients and makes the lowest nonzero one monic.
inline std::vector<FpPoly> primitive(std::vector<FpPoly> c) {
  const std::uint64_t p = c.front().p();
  FpPoly g(p);
  for (const auto& ci : c) g = gcd(g, ci);
  if (g.is_zero()) fail(ErrorCode::ZeroPolynomial, "zero relation");
  for (auto& ci : c) ci = ci.divmod(g).first;
  for (const auto& ci : c) {
    if (!ci.is_zero()) {
      std::uint64_t inv = ci.inverse_of(ci.lead());
      for (auto& cj : c) cj = cj.scaled(inv);
      break;
    }
  }
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

/// P = R^p with R in F_p[x, y] exactly when every y-exponent and x-exponent is
/// a multiple of p; replace P by R then, since both have the same roots.
inline CurveFp strip_pth_powers(CurveFp P) {
  const std::uint64_t p = P.p;
  for (;;) {
    bool power = P.coeffs.size() > 1;
    for (std::size_t j = 0; j < P.coeffs.size() && power; ++j) {
      if (P.coeffs[j].is_zero()) continue;
      if (j % p) power = false;
      const auto& c = P.coeffs[j].coeffs();
      for (std::size_t i = 0; i < c.size() && power; ++i) power = c[i] == 0 || i % p == 0;
    }
    if (!power) return P;
    CurveFp R{p, {}};
    for (std::size_t j = 0; j < P.coeffs.size(); j += p) R.coeffs.push_back(P.coeffs[j].cartier(0));
    P = std::move(R);
  }
}

/// Kernel vector of the columns v_0..v_i (each of length n) when they are
/// dependent, normalized with c_i = 1; empty otherwise.
inline Vec dependence(const std::vector<Vec>& cols, std::uint64_t p) {
  const std::size_t n = cols.front().size();
  const std::size_t k = cols.size();
  std::vector<Vec> M(n, Vec(k, RatFunc::zero(p)));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < n; ++r) M[r][j] = cols[j][r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t piv = row;
    while (piv < n && M[piv][c].is_zero()) ++piv;
    if (piv == n) continue;
    std::swap(M[piv], M[row]);
    RatFunc inv = RatFunc::one(p) / M[row][c];
    for (auto& v : M[row]) v = v * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || M[r][c].is_zero()) continue;
      RatFunc f = M[r][c];
      for (std::size_t cc = c; cc < k; ++cc) M[r][cc] = M[r][cc] - f * M[row][cc];
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() == k) return {};
  // The first k-1 columns are independent, so the last one is the free column.
  Vec c(k, RatFunc::zero(p));
  c[k - 1] = RatFunc::one(p);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) c[pivot_col[r]] = -M[r][k - 1];
  return c;
}

}  // namespace detail

/// sum_i g_i(x) f(x^(p^i)) mod x^T for a prefix of f of length T.
inline FpPoly apply_relation(const OreForm& ore, std::span<const std::uint64_t> prefix) {
  const std::uint64_t p = ore.p;
  const std::size_t T = prefix.size();
  std::vector<std::uint64_t> f(prefix.begin(), prefix.end());
  FpPoly acc(p);
  std::size_t stride = 1;
  for (const auto& gi : ore.g) {
    std::vector<std::uint64_t> c(T, 0);
    for (std::size_t n = 0; n * stride < T; ++n) c[n * stride] = f[n] % p;
    acc = acc + (gi * FpPoly(p, c)).truncated(T);
    stride *= p;
  }
  return acc;
}

/// An Ore relation for the roots of P: the first linear dependence among
/// y, y^p, y^(p^2), ... in F_p(x)[y]/(P), shortened while its lowest
/// coefficient vanishes, then checked against the series prefix.
inline OreForm ore_form(const CurveFp& curve, std::span<const std::uint64_t> prefix) {
  const std::uint64_t p = curve.p;
  if (curve.coeffs.empty()) fail(ErrorCode::ZeroPolynomial, "the curve is zero");
  CurveFp P = detail::strip_pth_powers(curve);
  const long dy = P.degree_y();
  if (dy < 1) fail(ErrorCode::InvalidArgument, "the curve does not involve y");
  // y^k mod P for 0 <= k < p*dy.
  RatFunc lc(P.coeffs[dy]);
  std::vector<detail::Vec> ypow;
  detail::Vec cur(dy, RatFunc::zero(p));
  cur[0] = RatFunc::one(p);
  for (long k = 0; k < static_cast<long>(p) * dy; ++k) {
    ypow.push_back(cur);
    detail::Vec next(dy, RatFunc::zero(p));
    for (long j = 0; j + 1 < dy; ++j) next[j + 1] = cur[j];
    RatFunc top = cur[dy - 1];
    if (!top.is_zero()) {
      for (long j = 0; j < dy; ++j) next[j] = next[j] - top * RatFunc(P.coeffs[j]) / lc;
    }
    cur = std::move(next);
  }
  std::vector<detail::Vec> cols{ypow[1]};
  detail::Vec c;
  for (;;) {
    const auto& last = cols.back();
    detail::Vec next(dy, RatFunc::zero(p));
    for (long j = 0; j < dy; ++j) {
      if (last[j].is_zero()) continue;
      RatFunc fr = last[j].frobenius();
      for (long r = 0; r < dy; ++r) next[r] = next[r] + fr * ypow[j * p][r];
    }
    cols.push_back(std::move(next));
    c = detail::dependence(cols, p);
    if (!c.empty()) break;
    if (cols.size() > static_cast<std::size_t>(dy) + 1) fail(ErrorCode::VerificationFailed, "no dependence found");
  }
  FpPoly L = FpPoly::constant(p, 1);
  for (const auto& ci : c) L = detail::lcm(L, ci.den());
  std::vector<FpPoly> g;
  for (const auto& ci : c) g.push_back(ci.num() * L.divmod(ci.den()).first);
  g = detail::primitive(g);
  while (g.front().is_zero()) {
    // sum_i c_i f^(p^i) = sum_r x^r (sum_{i>=1} gamma_{i,r} f^(p^(i-1)))^p and
    // the x^r parts separate, so each inner sum vanishes.
    std::vector<FpPoly> shorter;
    for (std::uint64_t r = 0; r < p && shorter.empty(); ++r) {
      std::vector<FpPoly> cand;
      bool nonzero = false;
      for (std::size_t i = 1; i < g.size(); ++i) {
        cand.push_back(g[i].cartier(r));
        nonzero = nonzero || !cand.back().is_zero();
      }
      if (nonzero) shorter = std::move(cand);
    }
    g = detail::primitive(std::move(shorter));
  }
  {
    std::uint64_t inv = g.front().inverse_of(g.front().lead());
    for (auto& gi : g) gi = gi.scaled(inv);
  }
  OreForm ore{p, g};
  long maxdeg = 0;
  for (const auto& gi : g) maxdeg = std::max(maxdeg, gi.degree());
  if (prefix.size() <= static_cast<std::size_t>(maxdeg)) {
    fail(ErrorCode::PrecisionTooLow, "prefix of length " + std::to_string(prefix.size()) +
                                         " cannot test a relation of degree " + std::to_string(maxdeg));
  }
  if (!apply_relation(ore, prefix).is_zero()) {
    fail(ErrorCode::VerificationFailed, "Ore relation " + ore.to_string() + " does not annihilate the series prefix");
  }
  return ore;
}

/// Automaton for f mod p from an Ore relation. A state (q_0, ..., q_{m-1})
/// stands for (1/g_0) sum_i q_i f^(p^i); reading digit d applies Lambda_d:
/// q'_{j-1} = Lambda_d(g_0^(p-1) q_j - g_0^(p-2) q_0 g_j), with q_m = 0.
inline Dfao<Residue> christol_automaton(const OreForm& ore, std::span<const std::uint64_t> prefix,
                                        std::size_t state_cap = 1'000'000) {
  const std::uint64_t p = ore.p;
  const std::size_t m = ore.height();
  if (ore.g.empty() || ore.g.front().is_zero()) fail(ErrorCode::DegenerateLeadingCoefficient, "g_0 vanishes");
  if (m == 0) fail(ErrorCode::InvalidArgument, "an Ore relation of height 0 only has the zero root");
  const FpPoly& g0 = ore.g.front();
  const long G0 = g0.degree();
  long G = 0;
  for (std::size_t i = 1; i <= m; ++i) G = std::max(G, ore.g[i].degree());
  const long D = std::max(G0, G0 + (G + static_cast<long>(p) - 2) / (static_cast<long>(p) - 1));
  const FpPoly g0_pm1 = g0.pow(p - 1);
  const FpPoly g0_pm2 = g0.pow(p - 2);
  const std::size_t v = g0.valuation();
  if (prefix.size() < v + 1) fail(ErrorCode::PrecisionTooLow, "prefix too short to read outputs");
  const FpPoly u = g0.divmod(FpPoly::monomial(p, v)).first;
  const std::uint64_t u0_inv = u.inverse_of(u[0]);

  // Output: with g_0 = x^v u(x), the constant term of N/g_0 is [x^v]N / u(0),
  // where N = sum q_i f^(p^i) needs f only modulo x^(v+1).
  auto output = [&](const std::vector<FpPoly>& q) {
    std::vector<std::uint64_t> f(prefix.begin(), prefix.begin() + (v + 1));
    std::vector<std::uint64_t> N(v + 1, 0);
    std::size_t stride = 1;
    for (std::size_t i = 0; i < m; ++i, stride *= p) {
      for (std::size_t a = 0; a <= v && a < q[i].coeffs().size(); ++a) {
        for (std::size_t n = 0; a + n * stride <= v; ++n) {
          N[a + n * stride] = (N[a + n * stride] + q[i][a] * (f[n] % p)) % p;
        }
      }
    }
    for (std::size_t a = 0; a < v; ++a) {
      if (N[a]) fail(ErrorCode::VerificationFailed, "state does not denote a power series");
    }
    return N[v] * u0_inv % p;
  };

  Dfao<Residue> d(p, 1);
  std::map<std::vector<std::vector<std::uint64_t>>, StateId> ids;
  std::vector<std::vector<FpPoly>> states;
  auto intern = [&](std::vector<FpPoly> q) {
    std::vector<std::vector<std::uint64_t>> key;
    for (const auto& qi : q) {
      if (qi.degree() > D) fail(ErrorCode::VerificationFailed, "state degree exceeds the bound");
      key.push_back(qi.coeffs());
    }
    auto [it, inserted] = ids.emplace(key, static_cast<StateId>(states.size()));
    if (inserted) {
      d.add_state(output(q));
      states.push_back(std::move(q));
      if (states.size() > state_cap) fail(ErrorCode::StateExplosion, "too many Christol states");
    }
    return it->second;
  };
  std::vector<FpPoly> init(m, FpPoly(p));
  init[0] = g0;
  d.set_initial(intern(init));
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::uint64_t digit = 0; digit < p; ++digit) {
      const auto q = states[s];
      std::vector<FpPoly> next(m, FpPoly(p));
      for (std::size_t j = 1; j <= m; ++j) {
        FpPoly qj = j < m ? q[j] : FpPoly(p);
        FpPoly h = g0_pm1 * qj - g0_pm2 * q[0] * ore.g[j];
        next[j - 1] = h.cartier(digit);
      }
      d.set_transition(static_cast<StateId>(s), static_cast<Symbol>(digit), intern(std::move(next)));
    }
  }
  return d;
}

}  // namespace autocong::christol
