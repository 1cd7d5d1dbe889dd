// limitid iid-run|measure-run|predict|report --config <file> [--seed N] [--estimator ID] [--out PATH]
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "limitid/descriptor.hpp"
#include "limitid/errors.hpp"
#include "limitid/harness.hpp"

namespace {

constexpr int kConfigExit = 1;
constexpr int kRuntimeExit = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> estimator;
  std::optional<std::string> out;
};

limitid::ExperimentConfig load(const Options& o, limitid::Mode mode) {
  limitid::ExperimentConfig c = limitid::load_config(o.config);
  nlohmann::json raw = limitid::read_json_file(o.config);
  if (raw.contains("mode") && c.mode != mode)
    limitid::fail(limitid::Errc::ConfigError, "config mode '" + limitid::to_string(c.mode) +
                                                  "' does not match the subcommand");
  c.mode = mode;
  if (o.seed) c.seed = *o.seed;
  if (o.estimator) {
    nlohmann::json probe = raw;
    probe["estimator"] = *o.estimator;
    limitid::parse_config(probe, c.base_dir);  // validates the id
    c.estimator = *o.estimator;
  }
  if (o.out) c.output = *o.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identification-in-the-limit experiments over exact pmf and measure hypotheses"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "experiment config (JSON)")->required();
    sub->add_option("--seed", o.seed, "override the config seed");
    sub->add_option("--estimator", o.estimator, "complexity estimator id");
    sub->add_option("--out", o.out, "trace output path (report: trace to read)");
  };
  auto* iid = app.add_subcommand("iid-run", "frequency-threshold identifier over i.i.d. data");
  auto* measure = app.add_subcommand("measure-run", "typicality identifier over sequential data");
  auto* predict = app.add_subcommand("predict", "next-symbol predictions as exact rationals");
  auto* report = app.add_subcommand("report", "recompute lock-in statistics from a trace file");
  for (auto* sub : {iid, measure, predict, report}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  limitid::ExperimentConfig config;
  limitid::ExperimentPlan plan;
  try {
    if (*report) {
      config = limitid::load_config(o.config);
      if (o.out) config.output = *o.out;
    } else {
      const limitid::Mode mode = *iid ? limitid::Mode::iid : *measure ? limitid::Mode::measure : limitid::Mode::predict;
      config = load(o, mode);
      plan = limitid::resolve(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "limitid: config error: " << e.what() << '\n';
    return kConfigExit;
  }

  try {
    if (*report) {
      std::ifstream in(config.output);
      if (!in) {
        std::cerr << "limitid: config error: cannot open trace " << config.output << '\n';
        return kConfigExit;
      }
      limitid::write_report(std::cout, limitid::read_trace(in));
    } else if (*predict) {
      std::cout << limitid::run_predict(config, plan).dump(2) << '\n';
    } else {
      const auto result = limitid::run_experiment(config, plan);
      limitid::write_outputs(result);
      std::cout << "wrote " << config.output.string() << " and " << config.output.string() << ".summary\n";
      std::cout << "lock_in_rate=" << result.lock_in_rate() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "limitid: runtime error: " << e.what() << '\n';
    return kRuntimeExit;
  }
  return 0;
}
