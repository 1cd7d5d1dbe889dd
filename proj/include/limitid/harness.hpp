#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "limitid/alphabet.hpp"
#include "limitid/complexity.hpp"
#include "limitid/hypothesis_list.hpp"
#include "limitid/measure.hpp"
#include "limitid/pmf.hpp"

namespace limitid {

enum class Mode { iid, measure, predict };

std::string to_string(Mode m);

// Experiment configuration, read from a JSON object with these keys (all but
// "hypotheses" optional):
//   mode              "iid" | "measure" | "predict"
//   hypotheses        list document path (relative to the config file),
//                     "builtin:<family>" or "builtin:black_swan", or an
//                     inline list document object
//   alphabet          alphabet for builtin families (default ["a","b"])
//   n_star            parameter of builtin:black_swan (default 8)
//   source            hypothesis descriptor of the true source
//   source_index      1-based base index of the true source in the list
//   data_file         comma-separated symbols, used instead of sampling
//   context           comma-separated prefix for predict mode
//   seed, trials, n_max, estimator, fluctuation_lambda, fluctuation_every,
//   threads (0 = one per core), output
// Violations of the field contracts throw ConfigError.
struct ExperimentConfig {
  Mode mode = Mode::iid;
  nlohmann::json hypotheses;
  nlohmann::json alphabet = nlohmann::json::array({"a", "b"});
  std::size_t n_star = 8;
  std::optional<nlohmann::json> source;
  std::optional<std::size_t> source_index;
  std::optional<std::filesystem::path> data_file;
  std::string context;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t n_max = 1;
  std::string estimator = "compress-default";
  double fluctuation_lambda = 1.4142135623730951;
  std::size_t fluctuation_every = 1000;
  std::size_t threads = 0;
  std::filesystem::path output = "trace.csv";
  std::filesystem::path base_dir = ".";
};

ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

// Hypotheses, source and data resolved from a config.
struct ExperimentPlan {
  Alphabet alphabet = binary_alphabet();
  std::optional<HypothesisList<PmfProgram>> pmfs;          // iid mode
  std::optional<HypothesisList<MeasureProgram>> measures;  // measure and predict modes
  std::optional<PmfProgram> pmf_source;
  std::optional<MeasureProgram> measure_source;
  std::optional<Sequence> data;  // fixed data shared by all trials
  std::shared_ptr<const ComplexityEstimator> estimator;
};

// Loads files and builds programs; any failure is a ConfigError.
ExperimentPlan resolve(const ExperimentConfig& config);

struct TrialResult {
  std::size_t trial = 0;
  std::vector<std::size_t> guesses;  // i_n, n = 1..n_max
  std::vector<std::size_t> origins;  // base index behind each guess
  std::vector<double> scores;        // score (iid) or deficiency bits (measure)
  std::vector<double> thresholds;    // sqrt(ln n / n) (iid) or the bound i_n (measure)
  std::vector<bool> fallbacks;
  std::optional<std::size_t> lock;
  std::size_t fluctuation_checks = 0;
  std::size_t fluctuation_violations = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;

  double lock_in_rate() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentPlan& plan);
ExperimentResult run_experiment(const ExperimentConfig& config);

// Trace CSV: a schema comment line, the header, one row per (trial, n).
void write_trace(std::ostream& out, const ExperimentResult& result);
void write_summary(std::ostream& out, const ExperimentResult& result);
// Writes <output> and <output>.summary.
void write_outputs(const ExperimentResult& result);

// Per-trial lock times recomputed from a trace file alone.
struct TraceReport {
  std::vector<std::size_t> trials;
  std::vector<std::optional<std::size_t>> locks;
  std::vector<std::size_t> final_guesses;

  double lock_in_rate() const;
};

// Throws ParseError on malformed input.
TraceReport read_trace(std::istream& in);
void write_report(std::ostream& out, const TraceReport& report);

// Predictions under the source (if given) or every hypothesis of a finite list.
nlohmann::json run_predict(const ExperimentConfig& config, const ExperimentPlan& plan);

}  // namespace limitid
