#pragma once

#include <cstddef>
#include <string>

#include "autocong/error.hpp"
#include "autocong/mod_poly.hpp"
#include "autocong/modulus.hpp"
#include "autocong/partition.hpp"

namespace autocong {

/// D_B(R/Q) mod p^alpha. After `normalized()` the denominator has constant term 1.
struct DiagonalProblem {
  ModPoly R;
  ModPoly Q;
  ModulusSpec modulus;
  SetPartition partition;

  DiagonalProblem() = default;
  DiagonalProblem(ModPoly r, ModPoly q, SetPartition b)
      : R(std::move(r)), Q(std::move(q)), modulus(Q.modulus()), partition(std::move(b)) {
    if (R.arity() != Q.arity()) fail(ErrorCode::ArityMismatch, "R and Q must have the same number of variables");
    if (!(R.modulus() == Q.modulus())) fail(ErrorCode::InvalidModulus, "R and Q must share a modulus");
    if (partition.arity() != Q.arity()) fail(ErrorCode::InvalidPartition, "partition does not cover the variables");
  }

  std::size_t arity() const noexcept { return Q.arity(); }
  bool is_normalized() const { return Q.constant_term() == 1 % modulus.modulus(); }

  /// Multiplies R and Q by Q(0)^-1.
  DiagonalProblem normalized() const {
    Residue c = modulus.inverse(Q.constant_term());
    return DiagonalProblem(R.scaled(c), Q.scaled(c), partition);
  }
};

/// Realizes the root f of P(x, y) with f(0) = 0 as the diagonal of
/// c*y*P_y(xy, y) / (c*P(xy, y)/y), where c = P_y(0, 0)^-1.
inline DiagonalProblem furstenberg_transform(const ModPoly& P) {
  if (P.arity() != 2) fail(ErrorCode::ArityMismatch, "expected a polynomial in x and y");
  const auto& m = P.modulus();
  if (P.constant_term() != 0) fail(ErrorCode::ConstantTermNonzero, "P(0,0) must vanish");
  ModPoly Py = derivative(P, 1);
  Residue d0 = Py.constant_term();
  if (!m.is_unit(d0)) {
    fail(ErrorCode::DerivativeNotUnit,
         "dP/dy(0,0) = " + std::to_string(d0) + " is not a unit mod " + std::to_string(m.modulus()));
  }
  Residue c = m.inverse(d0);
  // (a, b) -> (a, a + b) is x^a y^b evaluated at (xy, y).
  auto sub = [](std::span<const Exponent> e, std::span<Exponent> out) {
    out[0] = e[0];
    out[1] = e[0] + e[1];
  };
  ModPoly R = map_exponents(Py, 2, [&](std::span<const Exponent> e, std::span<Exponent> out) {
                sub(e, out);
                out[1] += 1;
              }).scaled(c);
  ModPoly Q = map_exponents(P, 2, [&](std::span<const Exponent> e, std::span<Exponent> out) {
                sub(e, out);
                out[1] -= 1;  // every term has a + b >= 1 since P(0,0) = 0
              }).scaled(c);
  return DiagonalProblem(std::move(R), std::move(Q), SetPartition::full(2));
}

}  // namespace autocong
