#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clasym/config.hpp"

namespace clasym {

struct OracleComparison {
  std::vector<double> times;
  std::vector<double> dx_list;
  /// l1[k][i], linf[k][i]: gaps at dx_list[k], times[i].
  std::vector<std::vector<double>> l1;
  std::vector<std::vector<double>> linf;
  /// ratio[k][i] = l1[k][i] / l1[k+1][i] across a dx halving.
  std::vector<std::vector<double>> ratio;
};

/// Variational-vs-Godunov gaps on identical grids. Throws when an explicit
/// finite-volume window cannot keep boundary effects away from the read
/// region.
OracleComparison compare_oracles(const ExperimentConfig& cfg);

struct Assertion {
  std::string name;
  std::string comparison;
  double threshold = 0.0;
  double measured = 0.0;
  bool pass = true;
};

struct RunResult {
  bool pass = true;
  std::vector<Assertion> assertions;
  std::string summary_text;  // serialized summary JSON
  std::vector<std::string> files;
};

/// Runs the configured study, writes the CSV artifacts and summary.json
/// under outdir, and evaluates every configured threshold.
RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::filesystem::path& outdir, int threads = 1);

}  // namespace clasym
