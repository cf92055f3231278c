#pragma once

// Lazy-read reference machine: 3-bit opcodes fetched on demand from a bit
// string, a bounded tape of small counters and a write-only output tape.
// The halting domain is prefix-free because a halted run never asks for
// another bit.  See docs/machine.md for the opcode table.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uind {

using Symbol = std::uint8_t;
using SymbolString = std::vector<Symbol>;

struct Program {
  std::vector<std::uint8_t> bits;

  static Program parse(std::string_view text);
  std::string to_string() const;
  std::size_t size() const { return bits.size(); }
  friend bool operator==(const Program&, const Program&) = default;
};

enum class Opcode : std::uint8_t {
  Halt = 0,
  Out = 1,
  Inc = 2,
  Dec = 3,
  Right = 4,
  Left = 5,
  Loop = 6,
  End = 7,
};

struct MachineConfig {
  int alphabet_size = 2;
  std::size_t workspace_limit = 4096;
  bool separator_enabled = false;

  void validate() const;
  // Number of distinct output symbols, including the separator when enabled.
  int output_radix() const { return alphabet_size + (separator_enabled ? 1 : 0); }
  Symbol separator() const { return static_cast<Symbol>(alphabet_size); }
  int cell_modulus() const { return alphabet_size * 8; }
  friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

// Text form of output strings: digits 0-9 then a-z for symbols, '#' for the
// separator.
char symbol_char(Symbol s, const MachineConfig& config);
SymbolString parse_symbols(std::string_view text, const MachineConfig& config);
std::string format_symbols(const SymbolString& s, const MachineConfig& config);

struct MemoryBank {
  std::vector<SymbolString> entries;
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

struct ResourceUsage {
  std::uint64_t bits_read = 0;
  std::uint64_t steps = 0;
  std::uint64_t peak_cells = 0;
  std::uint64_t step_cell_sum = 0;
  friend bool operator==(const ResourceUsage&, const ResourceUsage&) = default;
};

enum class Status { Halted, BudgetExhausted, NeedsMoreBits, WorkspaceOverflow };

std::string_view to_string(Status s);

struct ExecutionOutcome {
  Status status = Status::NeedsMoreBits;
  SymbolString output;
  ResourceUsage usage;
};

struct CostModelParams {
  double c_build = 1.0;
  double c_tx = 1.0;
  friend bool operator==(const CostModelParams&, const CostModelParams&) = default;
};

struct CostVector {
  double volume = 0;
  double energy = 0;
  double action = 0;
  double constructive_energy = 0;
  double constructive_action = 0;
  double total_energy = 0;
  double total_action = 0;
};

// Cost of any (possibly unfinished) run; cost_of() is the checked entry
// point for halted outcomes.
CostVector cost_from_usage(const ResourceUsage& usage, std::size_t message_length,
                           const CostModelParams& params);
CostVector cost_of(const ExecutionOutcome& outcome, std::size_t message_length,
                   const CostModelParams& params = {});

// Resumable interpreter state.  run() consumes bits from the span it is
// given (always the same growing bit string for one machine) and pauses on
// a terminal status, when it needs a bit the span does not hold yet, or when
// the output reaches a requested length.  Copying a Machine forks the run.
class Machine {
 public:
  enum class Event { Halted, BudgetExhausted, WorkspaceOverflow, NeedBit, OutputReached };
  static constexpr std::size_t kNoStop = std::numeric_limits<std::size_t>::max();

  Machine(const MachineConfig& config, std::uint64_t step_budget,
          const MemoryBank* bank = nullptr);

  Event run(std::span<const std::uint8_t> bits, std::size_t stop_at_output = kNoStop);

  const SymbolString& output() const { return out_; }
  ResourceUsage usage() const;
  std::uint64_t bits_read() const { return bits_read_; }
  std::uint64_t steps() const { return steps_; }
  const MachineConfig& config() const { return config_; }

  // True when every continuation ends in BudgetExhausted with no further
  // output.
  bool spent() const;

  // Skipping a loop body with no enclosing loop open: the skipped code can
  // never run, so the whole LOOP..END is removable without changing the
  // output (except a LOOP at position 0 when a bank is installed).
  bool in_dead_skip() const;

  // Key of the state that determines all future behaviour apart from the
  // remaining bits and budget: tape, head, output length, open loops and the
  // cached code they can jump back into.  Empty when the machine is not
  // between whole opcodes in the fetch phase.
  std::string state_key() const;

 private:
  enum class Phase : std::uint8_t { Fetch, Skip, CallIndex, Done };

  // Appends the next opcode to the cache; false when bits run out.
  bool fetch(std::span<const std::uint8_t> bits);
  void account_step();

  MachineConfig config_;
  const MemoryBank* bank_;
  std::uint64_t budget_;

  std::vector<Opcode> code_;
  std::vector<std::uint16_t> tape_;
  std::vector<std::uint32_t> loops_;
  SymbolString out_;

  std::size_t pc_ = 0;
  std::size_t head_ = 0;
  std::uint64_t bits_read_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t step_cell_sum_ = 0;
  std::uint32_t skip_depth_ = 0;
  std::uint32_t call_index_ = 0;
  std::size_t skip_origin_ = 0;
  Phase phase_ = Phase::Fetch;
  Event final_ = Event::Halted;
};

ExecutionOutcome execute(const Program& program, const MachineConfig& config,
                         std::uint64_t step_budget, const MemoryBank* bank = nullptr);

// Like execute() but stops as soon as the output holds `stop_at_output`
// symbols.  `reached` tells whether that happened; the outcome status is
// only meaningful when it did not.
struct PrefixRun {
  ExecutionOutcome outcome;
  bool reached = false;
};
PrefixRun execute_until_output(const Program& program, const MachineConfig& config,
                               std::uint64_t step_budget, std::size_t stop_at_output,
                               const MemoryBank* bank = nullptr);

struct HaltingProgram {
  Program program;
  ExecutionOutcome outcome;
};

// Programs of at most max_bits bits that halt within the budget after
// reading exactly their own length, in lexicographic (depth-first) order.
void for_each_halting(const MachineConfig& config, std::size_t max_bits,
                      std::uint64_t step_budget, const MemoryBank* bank,
                      const std::function<void(const HaltingProgram&)>& sink);
std::vector<HaltingProgram> enumerate_halting(const MachineConfig& config, std::size_t max_bits,
                                              std::uint64_t step_budget,
                                              const MemoryBank* bank = nullptr);

struct MinimalProgramRecord {
  Program program;
  std::uint64_t bits_read = 0;
  bool output_prefix_matches = false;
  SymbolString output;
  ResourceUsage usage;
};

// Leaves of the bit-request tree at which the output first reaches
// |target| symbols.  Halting is not required.
void for_each_output_record(const MachineConfig& config, const SymbolString& target,
                            std::size_t max_bits, std::uint64_t step_budget,
                            const MemoryBank* bank,
                            const std::function<void(const MinimalProgramRecord&)>& sink);
std::vector<MinimalProgramRecord> traverse_outputs(const MachineConfig& config,
                                                   const SymbolString& target,
                                                   std::size_t max_bits,
                                                   std::uint64_t step_budget,
                                                   const MemoryBank* bank = nullptr);

}  // namespace uind
