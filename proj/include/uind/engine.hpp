#pragma once

// Resource-bounded algorithmic probability: semimeasure mass of output
// prefixes, ratio-normalized next-symbol prediction, cost-weighted message
// probability over halting machines, and a lower bound on the halting
// probability.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uind/logsum.hpp"
#include "uind/priors.hpp"
#include "uind/refmachine.hpp"
#include "uind/traversal.hpp"

namespace uind {

inline constexpr std::size_t kMaxEnumerationBits = 40;

struct EnumerationLimits {
  std::size_t max_bits = 21;
  std::uint64_t step_budget = 300;
  std::size_t workspace_limit = 4096;

  void validate() const;
  friend bool operator==(const EnumerationLimits&, const EnumerationLimits&) = default;
};

struct EngineContext {
  MachineConfig machine;
  EnumerationLimits limits;
  CostModelParams cost;
  ExecPolicy exec;

  // The machine configuration with the workspace limit taken from `limits`.
  MachineConfig effective_machine() const;
};

struct MassReport {
  double log_mass = kNegInf;
  std::uint64_t contributing_count = 0;
  EnumerationLimits limits;
  PriorSpec prior;
};

struct PredictionDistribution {
  // Indexed by symbol 0..alphabet_size-1; all zero when undefined.
  std::vector<double> probabilities;
  std::vector<double> log_masses;
  bool defined = false;
};

MassReport semimeasure_mass(const SymbolString& x, const PriorSpec& prior,
                            const EngineContext& ctx, const MemoryBank* bank = nullptr);

PredictionDistribution predict_next(const SymbolString& history, const PriorSpec& prior,
                                    const EngineContext& ctx, const MemoryBank* bank = nullptr);

// Element t is the prediction of sequence[t] from sequence[0..t), all taken
// from a single traversal.  Bit-identical to calling predict_next on each
// prefix.
std::vector<PredictionDistribution> predict_sequence(const SymbolString& sequence,
                                                     const PriorSpec& prior,
                                                     const EngineContext& ctx,
                                                     const MemoryBank* bank = nullptr);

// Weight of halting machines whose output starts with x over the weight of
// all halting machines with nonempty output.  Throws std::runtime_error
// when no machine within the limits emits anything.
double physical_probability(const SymbolString& x, const PriorSpec& prior,
                            const EngineContext& ctx);

// Sum of 2^-|p| over halting programs within the limits (exact).
double estimate_omega(const EngineContext& ctx);

}  // namespace uind
