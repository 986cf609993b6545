// Residues mod 2^a that no Catalan number attains, read off the automaton.

#include <cstdio>

#include "autocong/autocong.hpp"

int main() {
  using namespace autocong;
  const auto& cat = corpus::find_fixture(corpus::fixture_registry(), "catalan");
  for (unsigned a = 1; a <= 5; ++a) {
    auto doc = corpus::build_for(cat, ModulusSpec(2, a));
    auto report = corpus::residue_report(doc);
    std::printf("mod %2llu: %3zu states, forbidden {", static_cast<unsigned long long>(report.modulus),
                doc.automaton.size());
    bool first = true;
    for (auto r : report.forbidden) {
      std::printf(first ? "%llu" : ", %llu", static_cast<unsigned long long>(r));
      first = false;
    }
    std::printf("}\n");
  }
}
