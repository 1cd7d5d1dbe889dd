#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "limitid/hypothesis_list.hpp"
#include "limitid/measure.hpp"
#include "limitid/pmf.hpp"

namespace limitid {

// Hypothesis descriptors:
//   {"kind": "categorical" | "simple_pmf" | "geometric"
//          | "markov" | "iid_lift" | "simple_measure" | "black_swan",
//    "alphabet": [names] | {"unbounded_prefix": "a"},
//    "params": {...}}
// with rationals as {"num": int, "den": int}. Parse failures throw ParseError;
// contract violations keep their own codes (NotNormalized, ...).
bool is_pmf_kind(const std::string& kind);
bool is_measure_kind(const std::string& kind);

PmfProgram pmf_from_descriptor(const nlohmann::json& descriptor);
MeasureProgram measure_from_descriptor(const nlohmann::json& descriptor);

// Hypothesis-list exchange document:
//   {"type": "pmf" | "measure", "kind": "ce" | "co_ce",
//    "hypotheses": [descriptor, ...],
//    "eliminations": [[base_index, stage], ...]}
struct ListDocument {
  std::string type;
  ListKind kind = ListKind::ce;
  std::vector<nlohmann::json> hypotheses;
  std::vector<Elimination> eliminations;
};

ListDocument parse_list_document(const nlohmann::json& doc);
nlohmann::json to_json(const ListDocument& doc);

HypothesisList<PmfProgram> pmf_list_from_document(const ListDocument& doc);
HypothesisList<MeasureProgram> measure_list_from_document(const ListDocument& doc);

template <class P>
ListDocument document_for(const std::vector<P>& programs, ListKind kind = ListKind::ce,
                          std::vector<Elimination> eliminations = {}) {
  ListDocument doc;
  doc.type = std::is_same_v<P, PmfProgram> ? "pmf" : "measure";
  doc.kind = kind;
  for (const auto& p : programs) doc.hypotheses.push_back(p.descriptor());
  doc.eliminations = std::move(eliminations);
  return doc;
}

// Reads a JSON file; a missing or unparsable file is a ConfigError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace limitid
