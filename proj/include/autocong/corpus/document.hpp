#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "autocong/corpus/build.hpp"
#include "autocong/dfao.hpp"
#include "autocong/error.hpp"

namespace autocong::corpus {

using Json = nlohmann::ordered_json;

/// Stable key order: identical documents serialize to identical bytes.
inline Json to_json(const AutomatonDocument& doc) {
  const auto& d = doc.automaton;
  Json j;
  j["format_version"] = kFormatVersion;
  j["fixture"] = doc.fixture;
  j["p"] = doc.p;
  j["alpha"] = doc.alpha;
  j["arity"] = d.arity();
  j["labels"] = doc.labels;
  j["index_offset"] = doc.index_offset;
  j["validity_threshold"] = doc.validity_threshold;
  j["initial_values"] = doc.initial_values;
  Json states = Json::array();
  for (StateId s = 0; s < d.size(); ++s) {
    Json edges = Json::array();
    for (Symbol a = 0; a < d.alphabet_size(); ++a) edges.push_back(d.next(s, a));
    states.push_back(Json{{"id", s}, {"output", d.output(s)}, {"edges", std::move(edges)}});
  }
  j["states"] = std::move(states);
  j["initial"] = d.initial();
  j["provenance"] = Json{{"method", doc.method}, {"variant", doc.variant}, {"engine_version", doc.engine_version}};
  return j;
}

inline std::string serialize(const AutomatonDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline AutomatonDocument from_json(const Json& j) {
  try {
    if (j.at("format_version").get<int>() != kFormatVersion) {
      fail(ErrorCode::FormatError, "unsupported format version " + j.at("format_version").dump());
    }
    AutomatonDocument doc;
    doc.fixture = j.at("fixture").get<std::string>();
    doc.p = j.at("p").get<std::uint64_t>();
    doc.alpha = j.at("alpha").get<unsigned>();
    const ModulusSpec m(doc.p, doc.alpha);
    doc.labels = j.at("labels").get<std::string>();
    if (doc.labels != "residue" && doc.labels != "valuation") fail(ErrorCode::FormatError, "unknown label kind");
    doc.index_offset = j.at("index_offset").get<unsigned>();
    doc.validity_threshold = j.at("validity_threshold").get<unsigned>();
    doc.initial_values = j.at("initial_values").get<std::vector<Residue>>();
    if (doc.initial_values.size() != doc.validity_threshold) {
      fail(ErrorCode::FormatError, "initial_values must list one value per index below the threshold");
    }
    const auto arity = j.at("arity").get<std::size_t>();
    Dfao<Residue> d(doc.p, arity);
    const auto& states = j.at("states");
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i].at("id").get<std::size_t>() != i) fail(ErrorCode::FormatError, "state ids must be 0, 1, 2, ...");
      d.add_state(states[i].at("output").get<Residue>());
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& edges = states[i].at("edges");
      if (edges.size() != d.alphabet_size()) fail(ErrorCode::FormatError, "state needs one edge per symbol");
      for (Symbol a = 0; a < d.alphabet_size(); ++a) {
        auto t = edges[a].get<std::size_t>();
        if (t >= states.size()) fail(ErrorCode::FormatError, "edge to a missing state");
        d.set_transition(static_cast<StateId>(i), a, static_cast<StateId>(t));
      }
    }
    if (states.empty()) fail(ErrorCode::FormatError, "automaton has no states");
    auto init = j.at("initial").get<std::size_t>();
    if (init >= states.size()) fail(ErrorCode::FormatError, "initial state out of range");
    d.set_initial(static_cast<StateId>(init));
    const auto& prov = j.at("provenance");
    doc.method = prov.at("method").get<std::string>();
    doc.variant = prov.at("variant").get<std::string>();
    doc.engine_version = prov.at("engine_version").get<std::string>();
    doc.automaton = std::move(d);
    return doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::FormatError, std::string("malformed automaton document: ") + e.what());
  }
}

inline AutomatonDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::FormatError, std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

inline AutomatonDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FormatError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

/// Graphviz rendering: one node per state labeled with its output, one edge
/// per (state, symbol) labeled with the digit tuple, and an unlabeled arrow
/// into the initial state.
template <typename Label>
std::string to_dot(const Dfao<Label>& d, const std::string& name = "automaton") {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  start [shape=point, label=\"\"];\n";
  for (StateId s = 0; s < d.size(); ++s) {
    out << "  s" << s << " [shape=circle, label=\"" << d.output(s) << "\"];\n";
  }
  out << "  start -> s" << d.initial() << ";\n";
  for (StateId s = 0; s < d.size(); ++s) {
    for (Symbol a = 0; a < d.alphabet_size(); ++a) {
      std::string label;
      for (auto digit : d.decode(a)) label += (label.empty() ? "" : ",") + std::to_string(digit);
      out << "  s" << s << " -> s" << d.next(s, a) << " [label=\"" << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace autocong::corpus
