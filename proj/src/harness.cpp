#include "limitid/harness.hpp"

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "limitid/descriptor.hpp"
#include "limitid/errors.hpp"
#include "limitid/families.hpp"
#include "limitid/iid_identifier.hpp"
#include "limitid/lock_time.hpp"
#include "limitid/prediction.hpp"
#include "limitid/sampling.hpp"
#include "limitid/typicality_identifier.hpp"

namespace limitid {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::iid:
      return "iid";
    case Mode::measure:
      return "measure";
    case Mode::predict:
      return "predict";
  }
  return "?";
}

namespace {

const std::set<std::string> kConfigKeys = {
    "mode",    "hypotheses", "alphabet",  "n_star",    "source",             "source_index",
    "data_file", "context",  "seed",      "trials",    "n_max",              "estimator",
    "fluctuation_lambda",    "fluctuation_every",      "threads",            "output"};

template <class T>
T unsigned_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(Errc::ConfigError, std::string("'") + key + "' must be a nonnegative integer");
  return v.get<T>();
}

std::string string_field(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) fail(Errc::ConfigError, std::string("'") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

Mode parse_mode(const std::string& s) {
  if (s == "iid") return Mode::iid;
  if (s == "measure") return Mode::measure;
  if (s == "predict") return Mode::predict;
  fail(Errc::ConfigError, "unknown mode '" + s + "'");
}

fs::path resolve_path(const fs::path& base, const fs::path& p) { return p.is_absolute() ? p : base / p; }

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A pmf list document whose entries are read as i.i.d. measures.
ListDocument lifted(ListDocument doc) {
  for (auto& d : doc.hypotheses) {
    json alphabet = d.contains("alphabet") ? d.at("alphabet") : json();
    d = json{{"kind", "iid_lift"}, {"alphabet", alphabet}, {"params", {{"pmf", d}}}};
  }
  doc.type = "measure";
  return doc;
}

Alphabet document_alphabet(const ListDocument& doc) {
  if (doc.hypotheses.empty()) fail(Errc::ConfigError, "hypothesis list is empty");
  const json& first = doc.hypotheses.front();
  if (!first.is_object() || !first.contains("alphabet")) fail(Errc::ParseError, "hypothesis without alphabet");
  return Alphabet::from_json(first.at("alphabet"));
}

void resolve_hypotheses(const ExperimentConfig& config, ExperimentPlan& plan) {
  const json& h = config.hypotheses;
  if (h.is_string() && h.get<std::string>().rfind("builtin:", 0) == 0) {
    const std::string id = h.get<std::string>().substr(8);
    if (id == "black_swan") {
      if (config.mode == Mode::iid) fail(Errc::ConfigError, "builtin:black_swan is a measure list");
      const auto pair = black_swan_pair(config.n_star);
      plan.alphabet = binary_alphabet();
      plan.measures = HypothesisList<MeasureProgram>::finite({pair.mu1, pair.mu0});
      return;
    }
    const FunctionFamily family = builtin_family(id);
    plan.alphabet = Alphabet::from_json(config.alphabet);
    if (config.mode == Mode::iid)
      plan.pmfs = make_simple_pmf_family(family, plan.alphabet);
    else
      plan.measures = make_simple_measure_family(family, plan.alphabet);
    return;
  }
  ListDocument doc;
  if (h.is_string())
    doc = parse_list_document(read_json_file(resolve_path(config.base_dir, h.get<std::string>())));
  else if (h.is_object())
    doc = parse_list_document(h);
  else
    fail(Errc::ConfigError, "'hypotheses' must be a path, a builtin id or a list document");
  plan.alphabet = document_alphabet(doc);
  if (config.mode == Mode::iid) {
    if (doc.type != "pmf") fail(Errc::ConfigError, "iid mode needs a pmf list");
    plan.pmfs = pmf_list_from_document(doc);
  } else {
    plan.measures = measure_list_from_document(doc.type == "pmf" ? lifted(doc) : doc);
  }
}

void resolve_source(const ExperimentConfig& config, ExperimentPlan& plan) {
  if (config.source && config.source_index) fail(Errc::ConfigError, "give either 'source' or 'source_index'");
  if (config.source) {
    const json& d = *config.source;
    const std::string kind = d.is_object() && d.contains("kind") && d.at("kind").is_string()
                                 ? d.at("kind").get<std::string>()
                                 : std::string();
    if (config.mode == Mode::iid) {
      if (!is_pmf_kind(kind)) fail(Errc::ConfigError, "iid mode needs a pmf source");
      plan.pmf_source = pmf_from_descriptor(d);
    } else if (is_pmf_kind(kind)) {
      plan.measure_source = lift_iid(pmf_from_descriptor(d));
    } else {
      plan.measure_source = measure_from_descriptor(d);
    }
  } else if (config.source_index) {
    const std::size_t k = *config.source_index;
    if (plan.pmfs) {
      const auto* e = plan.pmfs->base_entry(k);
      if (!e) fail(Errc::ConfigError, "source_index past the end of the list");
      plan.pmf_source = e->program;
    } else {
      const auto* e = plan.measures->base_entry(k);
      if (!e) fail(Errc::ConfigError, "source_index past the end of the list");
      plan.measure_source = e->program;
    }
  }
  if (plan.pmf_source && !(plan.pmf_source->alphabet() == plan.alphabet))
    fail(Errc::ConfigError, "source alphabet differs from the hypotheses'");
  if (plan.measure_source && !(plan.measure_source->alphabet() == plan.alphabet))
    fail(Errc::ConfigError, "source alphabet differs from the hypotheses'");
}

Sequence read_sequence_file(const fs::path& path, const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) fail(Errc::ConfigError, "cannot open data file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
  return parse_sequence(text, alphabet);
}

// Runs `body(t)` for t in [0, count) on a small pool; rethrows the first failure.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t t = next.fetch_add(1);
        if (t >= count) return;
        try {
          body(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

TrialResult run_iid_trial(const ExperimentConfig& config, const ExperimentPlan& plan, std::size_t trial) {
  Sequence data;
  if (plan.data) {
    data = *plan.data;
  } else {
    SeededSource src(trial_seed(config.seed, trial));
    data = draw_iid(*plan.pmf_source, src, config.n_max);
  }
  TrialResult r;
  r.trial = trial;
  IidIdentifier id(*plan.pmfs, plan.alphabet);
  for (std::size_t n = 1; n <= config.n_max; ++n) {
    id.update(data[n - 1]);
    const IidStep s = id.step();
    r.guesses.push_back(s.index);
    r.origins.push_back(s.origin);
    r.scores.push_back(s.score.get_d());
    r.thresholds.push_back(s.threshold);
    r.fallbacks.push_back(s.fallback);
    if (plan.pmf_source && config.fluctuation_every > 0 && n % config.fluctuation_every == 0) {
      ++r.fluctuation_checks;
      bool violated = false;
      for (Symbol a : trunc_set(*plan.pmf_source, id.table(), n))
        violated = violated ||
                   fluctuation_violation(plan.pmf_source->mass(a), id.table().count(a), n, config.fluctuation_lambda);
      if (violated) ++r.fluctuation_violations;
    }
  }
  r.lock = lock_time(r.guesses);
  return r;
}

TrialResult run_measure_trial(const ExperimentConfig& config, const ExperimentPlan& plan, std::size_t trial) {
  Sequence data;
  if (plan.data) {
    data = *plan.data;
  } else {
    SeededSource src(trial_seed(config.seed, trial));
    data = draw_from_measure(*plan.measure_source, src, config.n_max);
  }
  TrialResult r;
  r.trial = trial;
  TypicalityIdentifier id(repeat_infinitely(*plan.measures), plan.alphabet, plan.estimator);
  for (std::size_t n = 1; n <= config.n_max; ++n) {
    id.update(data[n - 1]);
    const TypStep s = id.step();
    r.guesses.push_back(s.index);
    r.origins.push_back(s.origin);
    r.scores.push_back(s.deficiency);
    r.thresholds.push_back(static_cast<double>(s.index));
    r.fallbacks.push_back(s.fallback);
  }
  r.lock = lock_time(r.guesses);
  return r;
}

}  // namespace

ExperimentConfig parse_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) fail(Errc::ConfigError, "config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kConfigKeys.count(key)) fail(Errc::ConfigError, "unknown config key '" + key + "'");
  ExperimentConfig c;
  c.base_dir = base_dir;
  c.mode = parse_mode(string_field(j, "mode", "iid"));
  if (!j.contains("hypotheses")) fail(Errc::ConfigError, "missing 'hypotheses'");
  c.hypotheses = j.at("hypotheses");
  if (j.contains("alphabet")) c.alphabet = j.at("alphabet");
  c.n_star = unsigned_field<std::size_t>(j, "n_star", c.n_star);
  if (c.n_star == 0) fail(Errc::ConfigError, "'n_star' must be positive");
  if (j.contains("source")) c.source = j.at("source");
  if (j.contains("source_index")) {
    c.source_index = unsigned_field<std::size_t>(j, "source_index", 0);
    if (*c.source_index == 0) fail(Errc::ConfigError, "'source_index' is 1-based");
  }
  if (j.contains("data_file")) c.data_file = string_field(j, "data_file", "");
  c.context = string_field(j, "context", "");
  c.seed = unsigned_field<std::uint64_t>(j, "seed", c.seed);
  c.trials = unsigned_field<std::size_t>(j, "trials", c.trials);
  c.n_max = unsigned_field<std::size_t>(j, "n_max", c.n_max);
  c.estimator = string_field(j, "estimator", c.estimator);
  if (j.contains("fluctuation_lambda")) {
    if (!j.at("fluctuation_lambda").is_number()) fail(Errc::ConfigError, "'fluctuation_lambda' must be a number");
    c.fluctuation_lambda = j.at("fluctuation_lambda").get<double>();
  }
  c.fluctuation_every = unsigned_field<std::size_t>(j, "fluctuation_every", c.fluctuation_every);
  c.threads = unsigned_field<std::size_t>(j, "threads", c.threads);
  c.output = string_field(j, "output", c.output.string());
  if (c.trials < 1) fail(Errc::ConfigError, "'trials' must be at least 1");
  if (c.n_max < 1) fail(Errc::ConfigError, "'n_max' must be at least 1");
  if (!(c.fluctuation_lambda > 1.0)) fail(Errc::ConfigError, "'fluctuation_lambda' must exceed 1");
  const auto ids = estimator_ids();
  if (std::find(ids.begin(), ids.end(), c.estimator) == ids.end())
    fail(Errc::ConfigError, "unknown estimator '" + c.estimator + "'");
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  const json j = read_json_file(path);
  ExperimentConfig c = parse_config(j, path.parent_path().empty() ? fs::path(".") : path.parent_path());
  return c;
}

ExperimentPlan resolve(const ExperimentConfig& config) {
  ExperimentPlan plan;
  try {
    resolve_hypotheses(config, plan);
    resolve_source(config, plan);
    plan.estimator = make_estimator(config.estimator);
    if (config.data_file) {
      plan.data = read_sequence_file(resolve_path(config.base_dir, *config.data_file), plan.alphabet);
      if (plan.data->size() < config.n_max) fail(Errc::ConfigError, "data file holds fewer than n_max symbols");
    }
    if (config.mode != Mode::predict && !plan.data && !plan.pmf_source && !plan.measure_source)
      fail(Errc::ConfigError, "need 'source', 'source_index' or 'data_file'");
    if (config.mode == Mode::measure && (!plan.alphabet.is_finite() || plan.alphabet.size() > 256))
      fail(Errc::ConfigError, "measure mode needs a finite alphabet of at most 256 symbols");
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    fail(Errc::ConfigError, e.what());
  } catch (const std::exception& e) {
    fail(Errc::ConfigError, e.what());
  }
  return plan;
}

double ExperimentResult::lock_in_rate() const {
  if (trials.empty()) return 0.0;
  std::size_t locked = 0;
  for (const auto& t : trials) locked += t.lock.has_value();
  return static_cast<double>(locked) / static_cast<double>(trials.size());
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentPlan& plan) {
  if (config.mode == Mode::predict) fail(Errc::ConfigError, "predict mode has no trials");
  if (config.mode == Mode::iid && !plan.pmfs) fail(Errc::ConfigError, "iid mode needs a pmf list");
  if (config.mode == Mode::measure && !plan.measures) fail(Errc::ConfigError, "measure mode needs a measure list");
  if (config.mode == Mode::measure && !plan.estimator) fail(Errc::ConfigError, "measure mode needs an estimator");
  ExperimentResult result;
  result.config = config;
  result.trials.resize(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    result.trials[t] =
        config.mode == Mode::iid ? run_iid_trial(config, plan, t) : run_measure_trial(config, plan, t);
  });
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) { return run_experiment(config, resolve(config)); }

void write_trace(std::ostream& out, const ExperimentResult& result) {
  const bool measure = result.config.mode == Mode::measure;
  out << "# schema=limitid-trace/1 mode=" << to_string(result.config.mode) << '\n';
  out << "trial,n,i_n,score,threshold,fallback" << (measure ? ",deficiency_bits" : "") << '\n';
  std::string line;
  for (const auto& t : result.trials) {
    for (std::size_t k = 0; k < t.guesses.size(); ++k) {
      line = std::to_string(t.trial);
      line += ',';
      line += std::to_string(k + 1);
      line += ',';
      line += std::to_string(t.guesses[k]);
      line += ',';
      line += format_double(t.scores[k]);
      line += ',';
      line += format_double(t.thresholds[k]);
      line += t.fallbacks[k] ? ",1" : ",0";
      if (measure) {
        line += ',';
        line += format_double(t.scores[k]);
      }
      line += '\n';
      out << line;
    }
  }
}

namespace {

const char* kCaveat =
    "# lock_time is the least n after which the guess stays constant up to n_max. It is an empirical\n"
    "# surrogate: identification in the limit cannot be observed in a finite trace, so a locked trial\n"
    "# may still change after n_max and an unlocked one may lock later.\n";

std::string lock_string(const std::optional<std::size_t>& lock) { return lock ? std::to_string(*lock) : "none"; }

}  // namespace

void write_summary(std::ostream& out, const ExperimentResult& result) {
  const ExperimentConfig& c = result.config;
  out << "# schema=limitid-summary/1\n" << kCaveat;
  out << "mode=" << to_string(c.mode) << '\n';
  out << "trials=" << c.trials << '\n';
  out << "n_max=" << c.n_max << '\n';
  out << "seed=" << c.seed << '\n';
  if (c.mode == Mode::measure) out << "estimator=" << c.estimator << '\n';
  if (c.mode == Mode::iid) out << "fluctuation_lambda=" << format_double(c.fluctuation_lambda) << '\n';
  out << "trial,lock_time,final_guess,final_origin,fallback_stages,fluctuation_checks,fluctuation_violations\n";
  std::size_t locked = 0, checks = 0, violations = 0;
  for (const auto& t : result.trials) {
    std::size_t fallback_stages = 0;
    for (bool f : t.fallbacks) fallback_stages += f;
    locked += t.lock.has_value();
    checks += t.fluctuation_checks;
    violations += t.fluctuation_violations;
    out << t.trial << ',' << lock_string(t.lock) << ',' << t.guesses.back() << ',' << t.origins.back() << ','
        << fallback_stages << ',' << t.fluctuation_checks << ',' << t.fluctuation_violations << '\n';
  }
  out << "locked_trials=" << locked << '\n';
  out << "lock_in_rate=" << format_double(result.lock_in_rate()) << '\n';
  if (checks > 0)
    out << "fluctuation_violation_fraction="
        << format_double(static_cast<double>(violations) / static_cast<double>(checks)) << '\n';
}

void write_outputs(const ExperimentResult& result) {
  const fs::path trace = resolve_path(".", result.config.output);
  if (trace.has_parent_path()) fs::create_directories(trace.parent_path());
  std::ofstream t(trace, std::ios::binary);
  if (!t) fail(Errc::InvalidArgument, "cannot write " + trace.string());
  write_trace(t, result);
  std::ofstream s(trace.string() + ".summary", std::ios::binary);
  if (!s) fail(Errc::InvalidArgument, "cannot write " + trace.string() + ".summary");
  write_summary(s, result);
  if (!t || !s) fail(Errc::InvalidArgument, "write failed");
}

double TraceReport::lock_in_rate() const {
  if (locks.empty()) return 0.0;
  std::size_t locked = 0;
  for (const auto& l : locks) locked += l.has_value();
  return static_cast<double>(locked) / static_cast<double>(locks.size());
}

TraceReport read_trace(std::istream& in) {
  TraceReport report;
  std::string line;
  bool header = false;
  std::vector<std::size_t> guesses;
  std::size_t current = 0, expect_n = 1, line_no = 0;
  auto flush = [&] {
    if (guesses.empty()) return;
    report.trials.push_back(current);
    report.locks.push_back(lock_time(guesses));
    report.final_guesses.push_back(guesses.back());
    guesses.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("trial,n,i_n,score,threshold,fallback", 0) != 0)
        fail(Errc::ParseError, "line " + std::to_string(line_no) + ": unexpected trace header");
      header = true;
      continue;
    }
    std::size_t trial = 0, n = 0, i = 0;
    if (std::sscanf(line.c_str(), "%zu,%zu,%zu,", &trial, &n, &i) != 3)
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": malformed trace row");
    if (guesses.empty() || trial != current) {
      flush();
      current = trial;
      expect_n = 1;
    }
    if (n != expect_n) fail(Errc::ParseError, "line " + std::to_string(line_no) + ": stages are not contiguous");
    ++expect_n;
    guesses.push_back(i);
  }
  flush();
  if (!header) fail(Errc::ParseError, "trace has no header");
  return report;
}

void write_report(std::ostream& out, const TraceReport& report) {
  out << "# schema=limitid-report/1\n" << kCaveat;
  out << "trial,lock_time,final_guess\n";
  std::size_t locked = 0;
  for (std::size_t k = 0; k < report.trials.size(); ++k) {
    locked += report.locks[k].has_value();
    out << report.trials[k] << ',' << lock_string(report.locks[k]) << ',' << report.final_guesses[k] << '\n';
  }
  out << "trials=" << report.trials.size() << '\n';
  out << "locked_trials=" << locked << '\n';
  out << "lock_in_rate=" << format_double(report.lock_in_rate()) << '\n';
}

json run_predict(const ExperimentConfig& config, const ExperimentPlan& plan) {
  const Sequence context = parse_sequence(config.context, plan.alphabet);
  json out = {{"context", config.context}, {"predictions", json::array()}};
  if (plan.measure_source) {
    json entry = to_json(predict_measure(*plan.measure_source, context));
    entry["descriptor"] = plan.measure_source->descriptor();
    out["predictions"].push_back(entry);
    return out;
  }
  if (!plan.measures) fail(Errc::ConfigError, "predict mode needs measures");
  const std::size_t limit = 64;
  for (std::size_t k = 1; k <= limit; ++k) {
    const auto* e = plan.measures->base_entry(k);
    if (!e) break;
    json entry;
    try {
      entry = to_json(predict_measure(e->program, context));
    } catch (const Error& err) {
      if (err.code() != Errc::ZeroMassContext) throw;
      entry = {{"context_length", context.size()}, {"error", "zero_mass_context"}};
    }
    entry["hypothesis"] = k;
    entry["descriptor"] = e->program.descriptor();
    out["predictions"].push_back(entry);
  }
  return out;
}

}  // namespace limitid
