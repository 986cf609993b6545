// Apery numbers mod 16 against the binary block count, and the failure of
// periodicity.

#include <cstdio>

#include "autocong/autocong.hpp"

int main() {
  using namespace autocong;
  const auto& apery = corpus::find_fixture(corpus::fixture_registry(), "apery-zeta3");
  auto doc = corpus::build_for(apery, ModulusSpec(2, 4));
  std::printf("A(n) mod 16: %zu states\n", doc.automaton.size());
  for (std::uint64_t n = 0; n < 16; ++n) {
    std::printf("  n = %2llu  A(n) mod 16 = %2llu  4*blocks(n) + 1 = %2llu\n", static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(doc.value(n)),
                static_cast<unsigned long long>((4 * analysis::block_count(n) + 1) % 16));
  }
  for (std::uint64_t m : {1u, 2u, 4u, 8u}) {
    auto v = analysis::verify_period(doc.automaton, m);
    if (v.periodic) {
      std::printf("period %llu holds from n = %llu\n", static_cast<unsigned long long>(m),
                  static_cast<unsigned long long>(v.threshold));
    } else {
      std::printf("period %llu fails first at n = %llu\n", static_cast<unsigned long long>(m),
                  static_cast<unsigned long long>(v.counterexample));
    }
  }
}
