#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "autocong/autocong.hpp"

namespace {

using namespace autocong;
using corpus::AutomatonDocument;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct Source {
  std::string target;
  std::uint64_t prime = 0;
  unsigned alpha = 1;
  std::string variant = "standard";
  unsigned threads = 1;
};

class Session {
 public:
  explicit Session(const std::string& registry_path)
      : reg_(registry_path.empty() ? corpus::fixture_registry() : corpus::load_registry(registry_path)) {}

  const corpus::Registry& registry() const { return reg_; }
  const corpus::SequenceFixture& fixture(const std::string& name) const { return corpus::find_fixture(reg_, name); }

  AutomatonDocument build(const std::string& name, std::uint64_t p, unsigned alpha, const Source& src) const {
    if (p == 0) fail(ErrorCode::InvalidArgument, "--prime is required when building from a fixture");
    corpus::BuildOptions opt;
    opt.engine.variant = src.variant == "post-cartier" ? Variant::PostCartier : Variant::Standard;
    opt.engine.threads = src.threads;
    return corpus::build_for(fixture(name), reg_, ModulusSpec(p, alpha), opt);
  }

  // A path to an existing document is loaded; anything else names a fixture.
  AutomatonDocument resolve(const Source& src) const {
    if (std::filesystem::is_regular_file(src.target)) return corpus::load_document(src.target);
    return build(src.target, src.prime, src.alpha, src);
  }

 private:
  corpus::Registry reg_;
};

template <typename C>
std::string braces(const C& c) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& v : c) {
    out << (first ? "" : ", ") << v;
    first = false;
  }
  out << "}";
  return out.str();
}

std::string header(const AutomatonDocument& doc) {
  std::ostringstream out;
  out << doc.fixture << " mod " << doc.modulus();
  if (doc.labels == "valuation") out << " (valuations capped at " << doc.alpha << ")";
  out << ": " << doc.automaton.size() << " states";
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

int cmd_list(const Session& s) {
  for (const auto& f : s.registry()) {
    std::cout << f.name << "  " << corpus::to_string(f.kind) << "  moduli:";
    for (auto [p, a] : f.moduli) std::cout << " " << p << "^" << a;
    if (!f.description.empty()) std::cout << "  " << f.description;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_automaton(const Session& s, const Source& src, const std::string& out, const std::string& dot) {
  auto doc = s.build(src.target, src.prime, src.alpha, src);
  const std::string json = corpus::serialize(doc);
  if (!dot.empty()) write_file(dot, corpus::to_dot(doc.automaton, doc.fixture));
  if (out.empty()) {
    std::cout << json;
    return kOk;
  }
  write_file(out, json);
  std::cout << header(doc) << " (" << doc.method;
  if (!doc.variant.empty()) std::cout << ", " << doc.variant;
  std::cout << ")\n";
  return kOk;
}

void print_residue_report(const AutomatonDocument& doc) {
  auto r = corpus::residue_report(doc);
  std::cout << header(doc) << "\n";
  if (doc.validity_threshold > 0) {
    std::cout << "automaton valid for n >= " << doc.validity_threshold << "; initial values "
              << braces(doc.initial_values) << "\n";
  }
  std::set<Residue> attained(r.declared.begin(), r.declared.end());
  for (auto l : r.forbidden) attained.erase(l);
  std::cout << "attained: " << braces(attained) << "\n";
  std::cout << "forbidden: " << braces(r.forbidden) << "\n";
  if (doc.validity_threshold > 0) {
    std::cout << "forbidden for n >= " << doc.validity_threshold << ": " << braces(r.forbidden_from_threshold)
              << "\n";
  }
  for (const auto& [label, ns] : r.finite) std::cout << "finitely attained: " << label << " at n in " << braces(ns) << "\n";
}

int cmd_residues(const Session& s, const Source& src) {
  print_residue_report(s.resolve(src));
  return kOk;
}

void print_frequencies(const Dfao<Residue>& d) {
  auto f = analysis::output_frequencies(d);
  std::cout << (f.mode == analysis::FrequencyMode::Limit ? "limiting densities" : "Cesaro densities (no plain limit)")
            << ":\n";
  for (const auto& [label, q] : f.frequency) std::cout << "  " << label << ": " << q << "\n";
}

int cmd_frequencies(const Session& s, const Source& src) {
  auto doc = s.resolve(src);
  std::cout << header(doc) << "\n";
  print_frequencies(doc.automaton);
  return kOk;
}

int cmd_valuation(const Session& s, const Source& src) {
  auto doc = s.build(src.target, src.prime, src.alpha, src);
  const ModulusSpec m(doc.p, doc.alpha);
  if (doc.labels != "valuation") {
    doc.labels = "valuation";
    for (auto& v : doc.initial_values) v = m.valuation(v);
    doc.automaton = relabel(doc.automaton, [&](Residue l) { return static_cast<Residue>(m.valuation(l)); });
  }
  doc.automaton = minimize(doc.automaton);
  print_residue_report(doc);
  print_frequencies(doc.automaton);
  return kOk;
}

int cmd_period(const Session& s, const Source& src, std::uint64_t period) {
  auto doc = s.resolve(src);
  if (doc.arity() != 1) fail(ErrorCode::ArityUnsupported, "period needs a one-dimensional sequence");
  auto v = analysis::verify_period(doc.automaton, period);
  std::cout << header(doc) << "\n";
  const std::uint64_t shift = doc.index_offset, thr = doc.validity_threshold;
  auto differs = [&](std::uint64_t n) { return doc.value(n) != doc.value(n + period); };
  if (v.periodic) {
    // The automaton agrees from automaton index v.threshold on; indices below
    // the validity threshold are checked against the true initial values.
    std::uint64_t N = std::max<std::uint64_t>(v.threshold + shift, thr);
    while (N > 0 && !differs(N - 1)) --N;
    std::cout << "periodic from N=" << N << " with period " << period << "\n";
    return kOk;
  }
  std::uint64_t n = v.counterexample + shift;
  if (shift || thr) {
    for (std::uint64_t k = 1; k < n; ++k) {
      if (differs(k)) {
        n = k;
        break;
      }
    }
  }
  std::cout << "not eventually periodic with period " << period << ": a_n != a_{n+" << period << "} first at n=" << n;
  if (thr == 0 && v.differs_at_zero) std::cout << " (n=0 also differs)";
  std::cout << "\n";
  return kOk;
}

int cmd_lucas(const Session& s, const Source& src, std::uint64_t root) {
  if (src.prime == 0) fail(ErrorCode::InvalidArgument, "--prime is required");
  const auto& f = s.fixture(src.target);
  auto spec = corpus::lucas_spec(f, src.prime, root);
  auto outcome = lucas::lucas_check(spec);
  std::cout << f.name << " mod " << src.prime << ", root exponent " << spec.s << "\n";
  if (auto* bad = std::get_if<lucas::LucasFailure>(&outcome)) {
    std::cout << "no Lucas product: the image at digits " << braces(bad->digits) << " is "
              << bad->image.to_string() << ", not a constant\n";
    return kMathFailure;
  }
  const auto& t = std::get<lucas::LucasTable>(outcome);
  Dfao<Residue> shape(t.p, t.blocks);
  std::cout << "Lucas product holds; table:\n";
  for (Symbol a = 0; a < shape.alphabet_size(); ++a) {
    std::cout << "  " << braces(shape.decode(a)) << " -> " << t.entries[a] << "\n";
  }
  std::cout << "automaton: " << lucas::lucas_automaton(t).size() << " states\n";
  if (!t.has_zero()) std::cout << "no zero entry: no term is divisible by " << t.p << "\n";
  return kOk;
}

int cmd_verify(const Session& s, const Source& src, std::size_t count) {
  auto doc = s.build(src.target, src.prime, src.alpha, src);
  auto r = corpus::verify_document(doc, s.fixture(src.target), s.registry(), count);
  if (r.ok()) {
    std::cout << header(doc) << "; " << r.checked << " terms agree with the oracle\n";
    return kOk;
  }
  const auto& mm = *r.mismatch;
  std::cout << header(doc) << "; mismatch at n=" << braces(mm.index) << ": oracle " << mm.expected << ", automaton "
            << mm.actual << "\n";
  return kMathFailure;
}

int cmd_pplucas(std::uint64_t n, std::uint64_t m, std::uint64_t p, unsigned alpha) {
  const ModulusSpec mod(p, alpha);
  std::cout << "C(" << n << ", " << m << ") mod " << mod.modulus() << " = "
            << lucas::prime_power_lucas_binomial(n, m, mod) << "\n";
  return kOk;
}

bool usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownFixture:
    case ErrorCode::InvalidModulus:
    case ErrorCode::ModulusTooLarge:
    case ErrorCode::InvalidArgument:
    case ErrorCode::FormatError:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automata for sequences modulo prime powers"};
  app.require_subcommand(1);
  std::string registry_path;
  app.add_option("--registry", registry_path, "Fixture registry file (default: built-in corpus)");

  Source src;
  auto add_modulus = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--prime,-p", src.prime, "Prime p");
    if (required) o->required();
    c->add_option("--alpha,-a", src.alpha, "Exponent alpha")->check(CLI::Range(1u, 63u));
  };

  auto* list = app.add_subcommand("list", "List the fixtures");

  std::string out, dot;
  auto* automaton = app.add_subcommand("automaton", "Build the automaton of a fixture");
  automaton->add_option("fixture", src.target)->required();
  add_modulus(automaton, true);
  automaton->add_option("--variant", src.variant)->check(CLI::IsMember({"standard", "post-cartier"}));
  automaton->add_option("--threads", src.threads)->check(CLI::Range(1u, 256u));
  automaton->add_option("--out", out, "Write the JSON document here instead of stdout");
  automaton->add_option("--dot", dot, "Write a Graphviz rendering here");

  auto* residues = app.add_subcommand("residues", "Attained, forbidden and finitely attained residues");
  residues->add_option("target", src.target, "Fixture name or automaton file")->required();
  add_modulus(residues, false);
  residues->add_option("--variant", src.variant)->check(CLI::IsMember({"standard", "post-cartier"}));

  auto* frequencies = app.add_subcommand("frequencies", "Limiting output densities");
  frequencies->add_option("target", src.target, "Fixture name or automaton file")->required();
  add_modulus(frequencies, false);

  auto* valuation = app.add_subcommand("valuation", "p-adic valuations of the terms, capped at alpha");
  valuation->add_option("fixture", src.target)->required();
  add_modulus(valuation, true);

  std::uint64_t period = 0;
  auto* per = app.add_subcommand("period", "Decide eventual periodicity with a given period");
  per->add_option("target", src.target, "Automaton file or fixture name")->required();
  per->add_option("--period,-m", period)->required()->check(CLI::PositiveNumber);
  add_modulus(per, false);

  std::uint64_t root = 0;
  auto* luc = app.add_subcommand("lucas", "Check for a Lucas product mod p");
  luc->add_option("fixture", src.target)->required();
  luc->add_option("--prime,-p", src.prime)->required();
  luc->add_option("--root-exponent,-s", root, "Root exponent s (default: the fixture's)");

  std::size_t count = 512;
  auto* verify = app.add_subcommand("verify", "Compare the automaton with the fixture's oracle");
  verify->add_option("fixture", src.target)->required();
  add_modulus(verify, true);
  verify->add_option("--count,-N", count, "Indices checked (per axis for several indices)");
  verify->add_option("--variant", src.variant)->check(CLI::IsMember({"standard", "post-cartier"}));

  std::uint64_t bn = 0, bm = 0;
  auto* pplucas = app.add_subcommand("pplucas", "C(n, m) mod p^alpha by the prime-power Lucas sum");
  pplucas->add_option("--n", bn)->required();
  pplucas->add_option("--m", bm)->required();
  add_modulus(pplucas, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Session s(registry_path);
    if (*list) return cmd_list(s);
    if (*automaton) return cmd_automaton(s, src, out, dot);
    if (*residues) return cmd_residues(s, src);
    if (*frequencies) return cmd_frequencies(s, src);
    if (*valuation) return cmd_valuation(s, src);
    if (*per) return cmd_period(s, src, period);
    if (*luc) return cmd_lucas(s, src, root);
    if (*verify) return cmd_verify(s, src, count);
    if (*pplucas) return cmd_pplucas(bn, bm, src.prime, src.alpha);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_error(e.code()) ? kUsage : kMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}
