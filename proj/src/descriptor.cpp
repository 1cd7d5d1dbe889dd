#include "limitid/descriptor.hpp"

#include <fstream>

#include "limitid/errors.hpp"
#include "limitid/families.hpp"

namespace limitid {

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name))
    fail(Errc::ParseError, std::string("missing field '") + name + "' in " + obj.dump());
  return obj.at(name);
}

std::vector<Rational> rationals(const nlohmann::json& arr) {
  if (!arr.is_array()) fail(Errc::ParseError, "expected an array of rationals: " + arr.dump());
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (const auto& r : arr) out.push_back(rational_from_json(r));
  return out;
}

template <class T>
T get_as(const nlohmann::json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

bool is_pmf_kind(const std::string& kind) {
  return kind == "categorical" || kind == "simple_pmf" || kind == "geometric";
}

bool is_measure_kind(const std::string& kind) {
  return kind == "markov" || kind == "iid_lift" || kind == "simple_measure" || kind == "black_swan";
}

PmfProgram pmf_from_descriptor(const nlohmann::json& d) {
  const auto kind = get_as<std::string>(field(d, "kind"), "kind");
  const Alphabet alphabet = Alphabet::from_json(field(d, "alphabet"));
  const auto& params = field(d, "params");
  if (kind == "categorical") {
    auto masses = rationals(field(params, "masses"));
    if (alphabet.is_finite()) return make_categorical(alphabet, std::move(masses));
    return make_categorical_with_descriptor(alphabet, std::move(masses), d);
  }
  if (kind == "simple_pmf") {
    const auto family = builtin_family(get_as<std::string>(field(params, "family"), "family"));
    return make_simple_pmf(family, get_as<std::size_t>(field(params, "index"), "index"), alphabet);
  }
  if (kind == "geometric") {
    const std::size_t shift = params.contains("shift") ? get_as<std::size_t>(params.at("shift"), "shift") : 0;
    return make_geometric(alphabet, rational_from_json(field(params, "ratio")), shift);
  }
  fail(Errc::ParseError, "'" + kind + "' is not a pmf kind");
}

MeasureProgram measure_from_descriptor(const nlohmann::json& d) {
  const auto kind = get_as<std::string>(field(d, "kind"), "kind");
  const Alphabet alphabet = Alphabet::from_json(field(d, "alphabet"));
  const auto& params = field(d, "params");
  if (kind == "markov") {
    std::vector<std::vector<Rational>> rows;
    const auto& t = field(params, "transitions");
    if (!t.is_array()) fail(Errc::ParseError, "transitions must be an array of rows");
    for (const auto& row : t) rows.push_back(rationals(row));
    return make_markov_measure(alphabet, rationals(field(params, "initial")), std::move(rows));
  }
  if (kind == "iid_lift") {
    PmfProgram p = pmf_from_descriptor(field(params, "pmf"));
    if (!(p.alphabet() == alphabet)) fail(Errc::ParseError, "iid_lift alphabet differs from its pmf's");
    return lift_iid(p);
  }
  if (kind == "simple_measure") {
    const auto family = builtin_family(get_as<std::string>(field(params, "family"), "family"));
    return make_simple_measure(family, get_as<std::size_t>(field(params, "index"), "index"), alphabet);
  }
  if (kind == "black_swan") {
    if (!(alphabet == binary_alphabet())) fail(Errc::ParseError, "black_swan is defined over [\"a\",\"b\"]");
    return make_black_swan_mixture(get_as<std::size_t>(field(params, "n_star"), "n_star"));
  }
  fail(Errc::ParseError, "'" + kind + "' is not a measure kind");
}

ListDocument parse_list_document(const nlohmann::json& doc) {
  ListDocument out;
  out.type = get_as<std::string>(field(doc, "type"), "type");
  if (out.type != "pmf" && out.type != "measure") fail(Errc::ParseError, "type must be pmf or measure");
  const auto kind = doc.contains("kind") ? get_as<std::string>(doc.at("kind"), "kind") : std::string("ce");
  if (kind == "ce") out.kind = ListKind::ce;
  else if (kind == "co_ce") out.kind = ListKind::co_ce;
  else fail(Errc::ParseError, "kind must be ce or co_ce");
  const auto& hyps = field(doc, "hypotheses");
  if (!hyps.is_array()) fail(Errc::ParseError, "hypotheses must be an array");
  out.hypotheses.assign(hyps.begin(), hyps.end());
  if (doc.contains("eliminations")) {
    for (const auto& e : doc.at("eliminations")) {
      if (!e.is_array() || e.size() != 2) fail(Errc::ParseError, "elimination must be [base_index, stage]");
      Elimination el{get_as<std::size_t>(e[0], "base_index"), get_as<std::size_t>(e[1], "stage")};
      if (el.base_index == 0) fail(Errc::ParseError, "base indices are 1-based");
      out.eliminations.push_back(el);
    }
  }
  if (out.kind == ListKind::ce && !out.eliminations.empty())
    fail(Errc::ParseError, "a ce list cannot carry eliminations");
  return out;
}

nlohmann::json to_json(const ListDocument& doc) {
  nlohmann::json elims = nlohmann::json::array();
  for (const auto& e : doc.eliminations) elims.push_back({e.base_index, e.stage});
  return {{"type", doc.type},
          {"kind", doc.kind == ListKind::ce ? "ce" : "co_ce"},
          {"hypotheses", doc.hypotheses},
          {"eliminations", elims}};
}

HypothesisList<PmfProgram> pmf_list_from_document(const ListDocument& doc) {
  if (doc.type != "pmf") fail(Errc::ParseError, "expected a pmf list, got " + doc.type);
  std::vector<PmfProgram> items;
  for (const auto& h : doc.hypotheses) items.push_back(pmf_from_descriptor(h));
  return HypothesisList<PmfProgram>::finite(std::move(items), doc.kind, doc.eliminations);
}

HypothesisList<MeasureProgram> measure_list_from_document(const ListDocument& doc) {
  if (doc.type != "measure") fail(Errc::ParseError, "expected a measure list, got " + doc.type);
  std::vector<MeasureProgram> items;
  for (const auto& h : doc.hypotheses) items.push_back(measure_from_descriptor(h));
  return HypothesisList<MeasureProgram>::finite(std::move(items), doc.kind, doc.eliminations);
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ConfigError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, path.string() + ": " + e.what());
  }
}

}  // namespace limitid
