#pragma once

// Resource-bounded estimates of algorithmic entropy and of the physical
// message complexities: minimum cost over halting programs whose output is
// exactly the message.

#include <optional>
#include <string_view>

#include "uind/engine.hpp"

namespace uind {

enum class ComplexityKind {
  Hbits,
  Volume,
  Energy,
  Action,
  ConstructiveEnergy,
  ConstructiveAction,
  TotalEnergy,
  TotalAction,
};

std::string_view to_string(ComplexityKind k);
ComplexityKind parse_complexity_kind(std::string_view text);

double kind_cost(ComplexityKind kind, const ResourceUsage& usage, std::size_t message_length,
                 const CostModelParams& params);

struct ComplexityEstimate {
  ComplexityKind kind = ComplexityKind::Hbits;
  double value = 0;
  Program witness;
  ResourceUsage usage;
  EnumerationLimits limits;
  bool exact_within_limits = true;
};

// std::nullopt means no program within the limits emits exactly x.
// Ties on cost go to the shorter, then lexicographically smaller, program.
std::optional<ComplexityEstimate> estimate(const SymbolString& x, ComplexityKind kind,
                                           const EngineContext& ctx,
                                           const MemoryBank* bank = nullptr);

// Same minimization with `bank` installed (reachable through the CALL
// convention).  The bank must be nonempty.
std::optional<ComplexityEstimate> estimate_conditional(const SymbolString& x, ComplexityKind kind,
                                                       const EngineContext& ctx,
                                                       const MemoryBank& bank);

// Programs emitting x, the separator, then y.  Needs separator_enabled and a
// nonempty y.
std::optional<ComplexityEstimate> estimate_joint(const SymbolString& x, const SymbolString& y,
                                                 ComplexityKind kind, const EngineContext& ctx);

SymbolString joint_message(const SymbolString& x, const SymbolString& y,
                           const MachineConfig& config);

}  // namespace uind
