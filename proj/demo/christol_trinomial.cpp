// Central trinomial coefficients mod 2 through an Ore relation.

#include <cstdio>

#include "autocong/autocong.hpp"

int main() {
  using namespace autocong;
  std::vector<std::uint64_t> prefix;
  for (const auto& t : corpus::oracle::trinomial(64)) prefix.push_back(static_cast<std::uint64_t>(t % 2));
  auto curve = christol::curve_from(parse_mod_poly("(x + 1)*(3*x - 1)*y^2 + 1", 2, ModulusSpec(2, 1)));
  auto ore = christol::ore_form(curve, prefix);
  std::printf("Ore form: %s\n", ore.to_string().c_str());
  auto d = minimize(christol::christol_automaton(ore, prefix));
  std::printf("%zu state(s); T(n) mod 2 = %llu for every n\n", d.size(),
              static_cast<unsigned long long>(d.output(d.initial())));
}
