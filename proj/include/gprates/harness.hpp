#pragma once

#include "gprates/config.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gprates {

/// Process exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> lines;  // verdict lines for stdout
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one validated experiment and writes <id>_*.csv / <id>_report.json into out_dir.
/// design, interpolate and regress never gate; rates, bq and bo exit 1 on a failed verdict.
/// Numerical aborts (singular designs, unresolved grids, aborted optimisation) give exit 3.
RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Targets, densities, designs, noise models, experiment kinds and acceptance ids, one per line.
std::string registry_text();

struct CriterionResult {
  std::string id;  // "A1" .. "A10", or a diagnostic id
  bool gating = true;
  bool pass = false;
  std::string detail;

  /// "A1 PASS <detail>"; non-gating entries read "INFO".
  std::string line() const;
};

/// Ids of the gating acceptance criteria in order.
const std::vector<std::string>& acceptance_ids();

/// The configurations behind A1-A7 plus the non-gating expansion diagnostic, in run order.
std::vector<ExperimentConfig> acceptance_configs(std::uint64_t seed);

/// Runs A1-A9 into out_dir. With `check_determinism` the suite runs a second time into a scratch
/// directory with a different thread count and A10 compares every artifact byte for byte.
std::vector<CriterionResult> run_acceptance(const std::filesystem::path& out_dir, std::uint64_t seed,
                                            bool check_determinism = true);

/// Files present in either directory whose bytes differ (or that exist on one side only).
std::vector<std::string> differing_files(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace gprates
