#pragma once

#include <string_view>

namespace autocong::corpus {

/// The built-in fixtures, in the registry file format read by parse_registry.
inline constexpr std::string_view kBuiltinRegistry = R"(# Sequence fixtures.
#
# kind = algebraic: `curve` is a polynomial in x and z vanishing at the
# generating function; `substitute` gives z in terms of the new unknown y.
# After substituting, the polynomial is divided by the largest power of x and
# the integer content. The automaton index m then corresponds to the sequence
# index m + offset, valid for n >= threshold, and labels are multiplied by
# label_scale.
#
# kind = rational: diagonal of numerator/denominator in x1..xk along a
# partition of the variables.
#
# kind = relabel: the automaton of `base` with each label mapped by `map`.

[catalan]
description = Catalan numbers
kind = algebraic
curve = x*z^2 - z + 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = catalan
terms = 1, 1, 2, 5, 14, 42, 132, 429
moduli = 2^1 2^2 2^3 2^4 2^5 3^1 3^2 5^1 5^2

[motzkin]
description = Motzkin numbers
kind = algebraic
curve = x^2*z^2 + (x - 1)*z + 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = motzkin
terms = 1, 1, 2, 4, 9, 21, 51, 127
moduli = 2^1 2^2 2^3 3^1 3^2 5^1 5^2 7^1

[motzkin-nu2]
description = 2-adic valuations of Motzkin numbers, capped at alpha
kind = relabel
base = motzkin
map = valuation
moduli = 2^2 2^3

[riordan]
description = Riordan numbers
kind = algebraic
curve = x*(x + 1)*z^2 - (x + 1)*z + 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = riordan
terms = 1, 0, 1, 1, 3, 6, 15, 36
moduli = 2^1 2^2 2^5 3^1 3^2 5^1 5^2

[directed-animals]
description = Directed animals of size n
kind = algebraic
curve = (3*x - 1)*z^2 - (3*x - 1)*z + x
substitute = 1 + y
offset = 0
threshold = 1
oracle = directed-animals
terms = 1, 1, 2, 5, 13, 35, 96, 267
moduli = 2^1 2^2 2^5 3^1 3^2 5^1 5^2

[hexagonal]
description = Restricted hexagonal polyominoes
kind = algebraic
curve = x*z^2 + (x - 1)*z - x + 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = hexagonal
terms = 1, 1, 3, 10, 36, 137, 543, 2219
moduli = 2^1 2^2 2^3 3^1 3^2 5^1 5^2

[a159769]
description = Binary trees avoiding a contiguous subtree pattern (A159769)
kind = algebraic
curve = (x - 2)*x^2*z^2 + (2*x^2 - 2*x + 1)*z + x - 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = quadratic
terms = 1, 1, 2, 5, 14, 41, 124, 384
moduli = 2^1 2^2 2^5 3^1 3^2 5^1 5^2

[a159771]
description = Binary trees avoiding a contiguous subtree pattern (A159771)
kind = algebraic
curve = 2*x^2*z^2 - (3*x^2 - 2*x + 1)*z + x^2 - x + 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = quadratic
terms = 1, 1, 2, 5, 14, 41, 124, 385
moduli = 2^1 2^2 2^4 3^1 3^2 5^1 5^2

[a029759]
description = Permutations avoiding 3412 and 2143
kind = algebraic
curve = (4*x - 1)*(2*x - 1)^2*z^2 + (3*x - 1)^2
substitute = 1 + x + 2*x*y
offset = 1
threshold = 2
label_scale = 2
oracle = a029759
terms = 1, 1, 2, 6, 22, 86, 340, 1340
moduli = 2^1 2^2 2^3 2^4 3^1 3^2 5^1 5^2

[a032351]
description = Permutations avoiding 2143 and 1324
kind = algebraic
curve = (4*x^3 - 8*x^2 + 6*x - 1)*z^2 + 2*(3*x^2 - 5*x + 1)*z + x^2 + 4*x - 1
substitute = 1 + x + 2*x^2 + 2*x^2*y
offset = 2
threshold = 3
label_scale = 2
oracle = a032351
terms = 1, 1, 2, 6, 22, 88, 366, 1552
moduli = 2^1 2^2 2^3 3^1 3^2 5^1 5^2

[a109033]
description = Permutations avoiding 1342 and 2143
kind = algebraic
curve = 2*x*(x - 1)*z^2 + z + x - 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = quadratic
terms = 1, 1, 2, 6, 22, 88, 368, 1584
moduli = 2^1 2^2 2^3 3^1 3^2 5^1 5^2

[central-trinomial]
description = Central trinomial coefficients
kind = algebraic
curve = (x + 1)*(3*x - 1)*z^2 + 1
substitute = 1 + y
offset = 0
threshold = 1
oracle = trinomial
terms = 1, 1, 3, 7, 19, 51, 141, 393
moduli = 2^1 2^2 3^1 3^2 5^1 5^2
lucas_q = -(x + 1)*(3*x - 1)
lucas_s = 2

[apery-zeta3]
description = Apery numbers sum C(n,k)^2 C(n+k,k)^2
kind = rational
variables = 4
denominator = (1 - x1 - x2)*(1 - x3 - x4) - x1*x2*x3*x4
partition = {1,2,3,4}
oracle = apery3
terms = 1, 5, 73, 1445, 33001, 819005
moduli = 2^1 2^2 2^3 2^4 3^1 3^2 5^1 5^2 7^1
lucas_q = (1 - x1 - x2)*(1 - x3 - x4) - x1*x2*x3*x4

[apery-zeta2]
description = Apery numbers sum C(n,k)^2 C(n+k,k)
kind = rational
variables = 4
denominator = (1 - x1)*(1 - x2)*(1 - x3)*(1 - x4) - (1 - x1)*x1*x2*x3
partition = {1,2,3,4}
oracle = apery2
terms = 1, 3, 19, 147, 1251, 11253
moduli = 2^1 2^2 3^1 3^2 5^1 5^2

[binomial]
description = Binomial coefficients C(n, m) as a two-dimensional diagonal
kind = rational
variables = 2
denominator = 1 - x1 - x1*x2
partition = {1},{2}
oracle = binomial
moduli = 2^1 2^2 3^1 3^2 5^1 5^2
lucas_q = 1 - x1 - x1*x2
lucas_partition = {1},{2}
)";

}  // namespace autocong::corpus
