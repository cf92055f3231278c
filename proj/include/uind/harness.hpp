#pragma once

// Experiment runners behind the command-line subcommands, plus their CSV and
// JSON renderings.  Output is deterministic for a fixed config.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uind/complexity.hpp"
#include "uind/config.hpp"
#include "uind/physbounds.hpp"

namespace uind {

using nlohmann::json;

json to_json(const PredictionDistribution& d, const MachineConfig& machine);
json to_json(const MassReport& r);
json to_json(const std::optional<ComplexityEstimate>& e, const SymbolString& target,
             const MachineConfig& machine);
json to_json(const EnumerationLimits& limits);
json to_json(const PriorSpec& prior);

struct ConvergenceRow {
  int trial = 0;
  std::size_t t = 0;  // 1-based position of the predicted symbol
  bool defined = false;
  std::vector<double> predicted;  // uniform when undefined
  std::vector<double> truth;
  double squared_error = 0;
  double cumulative_error = 0;
};

struct ConvergenceSummary {
  std::size_t t = 0;
  std::size_t defined_count = 0;
  std::vector<double> mean_predicted;
  std::vector<double> mean_truth;
  double mean_squared_error = 0;
  double stddev_squared_error = 0;
  double mean_cumulative_error = 0;
};

struct ConvergenceReport {
  int trials = 0;
  std::size_t length = 0;
  int alphabet_size = 2;
  std::vector<ConvergenceRow> rows;  // ordered by (trial, t)
  std::vector<ConvergenceSummary> summary;
};

// Samples `trials` sequences from the configured source and scores the
// predictor at every position by sum_a (p(a) - mu(a | x_<t))^2.
ConvergenceReport run_converge(const ExperimentConfig& config);
std::string convergence_csv(const ConvergenceReport& report);
json convergence_json(const ConvergenceReport& report);

struct EnumerationReport {
  std::vector<HaltingProgram> programs;
  double omega_lower_bound = 0;
};

EnumerationReport run_enumerate(const ExperimentConfig& config);
std::string enumeration_csv(const EnumerationReport& report, const MachineConfig& machine);
json enumeration_json(const EnumerationReport& report, const MachineConfig& machine);

MemoryBank load_bank_file(const std::string& path, const MachineConfig& machine);

// Shortest round-trip decimal form used in every CSV.
std::string format_number(double v);

}  // namespace uind
