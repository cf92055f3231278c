#pragma once

// Flat key=value experiment configuration with dotted keys, e.g.
//
//   machine.alphabet_size=2
//   limits.max_bits=21
//   prior.family=Length
//   source.family=Periodic
//   source.pattern=01
//
// Blank lines and lines starting with '#' are ignored.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "uind/engine.hpp"
#include "uind/priors.hpp"
#include "uind/sources.hpp"

namespace uind {

struct ExperimentConfig {
  MachineConfig machine;
  EnumerationLimits limits;  // workspace_limit follows machine.workspace_limit
  PriorSpec prior;
  CostModelParams cost;
  std::optional<SourceModel> source;
  int trials = 1;
  std::size_t sequence_length = 32;
  std::uint64_t seed = 1;
  bool reproducible_reduction = true;
  int threads = 1;

  void validate() const;
  EngineContext engine() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

using ConfigMap = std::map<std::string, std::string, std::less<>>;

ConfigMap parse_config_text(std::string_view text);
ConfigMap load_config_file(const std::string& path);

// Unknown keys and malformed values throw std::invalid_argument.
ExperimentConfig build_config(const ConfigMap& settings);
ConfigMap config_to_map(const ExperimentConfig& config);

ExperimentConfig parse_config(std::string_view text);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace uind
