// Command line front end: one subcommand per experiment kind, plus the acceptance suite.

#include "gprates/harness.hpp"
#include "gprates/log.hpp"
#include "gprates/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace gprates;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
  bool verbose = false;
};

fs::path output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("GPRATES_OUT"); env && *env) return env;
  return "out";
}

int run_config(const std::string& subcommand, const Options& o) {
  ExperimentConfig config;
  try {
    config = load_config(o.config);
    if (subcommand != "run" && subcommand != experiment_kind_name(config.kind)) {
      throw ConfigError(o.config + ": experiment is '" + experiment_kind_name(config.kind) + "' but the subcommand is '" +
                        subcommand + "'");
    }
    if (o.seed) config.set_seed(*o.seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const RunOutcome outcome = run_experiment(config, output_dir(o));
  for (const std::string& line : outcome.lines) std::cout << line << "\n";
  for (const fs::path& p : outcome.artifacts) logger()->info("wrote {}", p.string());
  return outcome.exit_code;
}

int run_accept(const Options& o, bool skip_determinism) {
  const std::uint64_t seed = o.seed.value_or(42);
  const std::vector<CriterionResult> results = run_acceptance(output_dir(o), seed, !skip_determinism);
  bool ok = true;
  for (const CriterionResult& r : results) {
    std::cout << r.line() << "\n";
    ok = ok && (!r.gating || r.pass);
  }
  return ok ? kExitOk : kExitFailed;
}

int write_acceptance_configs(const Options& o) {
  const fs::path dir = output_dir(o);
  fs::create_directories(dir);
  for (const ExperimentConfig& c : acceptance_configs(o.seed.value_or(42))) {
    const fs::path path = dir / (c.id + ".json");
    std::ofstream(path, std::ios::binary) << to_json(c).dump(2) << "\n";
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence-rate experiments for Gaussian-process interpolation, regression, quadrature and "
               "optimisation"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", o.verbose, "log progress to stderr");

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("-c,--config", o.config, "JSON experiment file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "overrides the seed of the config");
    sub->add_option("-o,--out", o.out, "output directory (default: $GPRATES_OUT, else ./out)");
  };

  std::vector<std::pair<std::string, CLI::App*>> experiments;
  for (const char* name : {"run", "design", "interpolate", "regress", "rates", "bq", "bo"}) {
    const std::string help = std::string(name) == "run" ? "run any experiment config"
                                                        : std::string("run a '") + name + "' experiment config";
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, true);
    experiments.emplace_back(name, sub);
  }
  CLI::App* accept = app.add_subcommand("accept", "run the acceptance suite A1-A10");
  add_common(accept, false);
  bool skip_determinism = false;
  bool dump_configs = false;
  accept->add_flag("--skip-determinism", skip_determinism, "run the suite once and omit A10");
  accept->add_flag("--write-configs", dump_configs, "write the acceptance experiment configs as JSON and exit");
  CLI::App* registry = app.add_subcommand("list_registry", "list targets, densities, designs and experiments");
  registry->alias("list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  logger()->set_level(o.verbose ? spdlog::level::info : spdlog::level::warn);
  if (o.threads > 0) set_thread_count(o.threads);

  try {
    if (registry->parsed()) {
      std::cout << registry_text();
      return kExitOk;
    }
    if (accept->parsed()) return dump_configs ? write_acceptance_configs(o) : run_accept(o, skip_determinism);
    for (const auto& [name, sub] : experiments) {
      if (sub->parsed()) return run_config(name, o);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitFailed;
}
