#include "uind/refmachine.hpp"

#include <algorithm>
#include <stdexcept>

#include "uind/traversal.hpp"

namespace uind {

Program Program::parse(std::string_view text) {
  Program p;
  p.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("program bits must be 0 or 1");
    p.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return p;
}

std::string Program::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

void MachineConfig::validate() const {
  if (alphabet_size < 2 || alphabet_size > 36)
    throw std::invalid_argument("alphabet_size must be in [2, 36]");
  if (workspace_limit < 1) throw std::invalid_argument("workspace_limit must be >= 1");
}

char symbol_char(Symbol s, const MachineConfig& config) {
  if (config.separator_enabled && s == config.separator()) return '#';
  if (s < 10) return static_cast<char>('0' + s);
  return static_cast<char>('a' + (s - 10));
}

SymbolString parse_symbols(std::string_view text, const MachineConfig& config) {
  SymbolString out;
  out.reserve(text.size());
  for (char c : text) {
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
    else if (c == '#' && config.separator_enabled) v = config.separator();
    if (v < 0 || (v >= config.alphabet_size && !(c == '#')))
      throw std::invalid_argument(std::string("symbol '") + c + "' is not in the output alphabet");
    out.push_back(static_cast<Symbol>(v));
  }
  return out;
}

std::string format_symbols(const SymbolString& s, const MachineConfig& config) {
  std::string text;
  text.reserve(s.size());
  for (auto sym : s) text.push_back(symbol_char(sym, config));
  return text;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Halted: return "Halted";
    case Status::BudgetExhausted: return "BudgetExhausted";
    case Status::NeedsMoreBits: return "NeedsMoreBits";
    case Status::WorkspaceOverflow: return "WorkspaceOverflow";
  }
  return "?";
}

CostVector cost_from_usage(const ResourceUsage& usage, std::size_t message_length,
                           const CostModelParams& params) {
  CostVector c;
  c.volume = static_cast<double>(usage.bits_read + usage.peak_cells);
  c.energy = static_cast<double>(usage.steps);
  c.action = static_cast<double>(usage.step_cell_sum);
  c.constructive_energy = c.energy + params.c_build * c.volume;
  c.constructive_action = c.action + params.c_build * c.volume;
  const double tx = params.c_tx * static_cast<double>(message_length);
  c.total_energy = c.constructive_energy + tx;
  c.total_action = c.constructive_action + tx;
  return c;
}

CostVector cost_of(const ExecutionOutcome& outcome, std::size_t message_length,
                   const CostModelParams& params) {
  if (outcome.status != Status::Halted)
    throw std::invalid_argument("cost_of requires a halted outcome");
  if (params.c_build < 0 || params.c_tx < 0)
    throw std::invalid_argument("cost constants must be non-negative");
  return cost_from_usage(outcome.usage, message_length, params);
}

// ---------------------------------------------------------------------------

Machine::Machine(const MachineConfig& config, std::uint64_t step_budget, const MemoryBank* bank)
    : config_(config), bank_(bank), budget_(step_budget), tape_(1, 0) {
  config_.validate();
  if (step_budget == 0) throw std::invalid_argument("step budget must be positive");
}

ResourceUsage Machine::usage() const {
  return {bits_read_, steps_, tape_.size(), step_cell_sum_};
}

bool Machine::spent() const {
  return (phase_ == Phase::Fetch || phase_ == Phase::Skip) && steps_ >= budget_;
}

bool Machine::in_dead_skip() const {
  return phase_ == Phase::Skip && loops_.empty() && !(bank_ != nullptr && skip_origin_ == 0);
}

std::string Machine::state_key() const {
  if (phase_ != Phase::Fetch || code_.empty()) return {};
  std::string key;
  auto put = [&](std::uint64_t v) {
    do {
      key.push_back(static_cast<char>((v & 0x7f) | (v > 0x7f ? 0x80 : 0)));
      v >>= 7;
    } while (v != 0);
  };
  std::size_t n = tape_.size();
  while (n > 0 && tape_[n - 1] == 0) --n;
  key.reserve(n + 16);
  put(out_.size());
  put(head_);
  put(n);
  for (std::size_t i = 0; i < n; ++i) put(tape_[i]);
  if (!loops_.empty()) {
    const std::size_t base = loops_.front();
    put(pc_ - base);
    put(loops_.size());
    for (auto l : loops_) put(l - base);
    for (std::size_t i = base; i < code_.size(); ++i) key.push_back(static_cast<char>(code_[i]));
  } else if (pc_ != code_.size()) {
    return {};
  }
  return key;
}

bool Machine::fetch(std::span<const std::uint8_t> bits) {
  if (bits.size() < bits_read_ + 3) return false;
  auto op = (bits[bits_read_] << 2) | (bits[bits_read_ + 1] << 1) | bits[bits_read_ + 2];
  bits_read_ += 3;
  code_.push_back(static_cast<Opcode>(op));
  return true;
}

void Machine::account_step() {
  ++steps_;
  step_cell_sum_ += tape_.size();
}

Machine::Event Machine::run(std::span<const std::uint8_t> bits, std::size_t stop_at_output) {
  if (phase_ == Phase::Done) return final_;
  auto finish = [&](Event e) {
    phase_ = Phase::Done;
    final_ = e;
    return e;
  };

  for (;;) {
    if (out_.size() >= stop_at_output) return Event::OutputReached;

    if (phase_ == Phase::Skip) {
      if (pc_ == code_.size() && !fetch(bits)) return Event::NeedBit;
      auto op = code_[pc_++];
      if (op == Opcode::Loop) ++skip_depth_;
      else if (op == Opcode::End && --skip_depth_ == 0) phase_ = Phase::Fetch;
      continue;
    }

    if (phase_ == Phase::CallIndex) {
      if (bits.size() <= bits_read_) return Event::NeedBit;
      if (bits[bits_read_++] == 1) {
        ++call_index_;
        continue;
      }
      if (call_index_ < bank_->size()) {
        const auto& entry = bank_->entries[call_index_];
        out_.insert(out_.end(), entry.begin(), entry.end());
      }
      phase_ = Phase::Fetch;
      continue;
    }

    if (pc_ == code_.size() && !fetch(bits)) return Event::NeedBit;
    if (steps_ >= budget_) return finish(Event::BudgetExhausted);

    const auto op = code_[pc_];
    auto& cell = tape_[head_];
    switch (op) {
      case Opcode::Halt:
        account_step();
        return finish(Event::Halted);
      case Opcode::Out:
        out_.push_back(static_cast<Symbol>(cell % config_.output_radix()));
        ++pc_;
        break;
      case Opcode::Inc:
        cell = static_cast<std::uint16_t>((cell + 1) % config_.cell_modulus());
        ++pc_;
        break;
      case Opcode::Dec:
        if (cell > 0) --cell;
        ++pc_;
        break;
      case Opcode::Right:
        if (head_ + 1 >= config_.workspace_limit) return finish(Event::WorkspaceOverflow);
        ++head_;
        if (head_ == tape_.size()) tape_.push_back(0);
        ++pc_;
        break;
      case Opcode::Left:
        if (head_ > 0) --head_;
        ++pc_;
        break;
      case Opcode::Loop:
        ++pc_;
        if (cell != 0) {
          loops_.push_back(static_cast<std::uint32_t>(pc_ - 1));
        } else {
          phase_ = Phase::Skip;
          skip_depth_ = 1;
          skip_origin_ = pc_ - 1;
        }
        break;
      case Opcode::End:
        if (pc_ == 0 && bank_ != nullptr) {
          ++pc_;
          phase_ = Phase::CallIndex;
          call_index_ = 0;
        } else if (loops_.empty()) {
          ++pc_;
        } else if (cell != 0) {
          pc_ = loops_.back() + 1;
        } else {
          loops_.pop_back();
          ++pc_;
        }
        break;
    }
    account_step();
  }
}

// ---------------------------------------------------------------------------

namespace {

Status status_of(Machine::Event e) {
  switch (e) {
    case Machine::Event::Halted: return Status::Halted;
    case Machine::Event::BudgetExhausted: return Status::BudgetExhausted;
    case Machine::Event::WorkspaceOverflow: return Status::WorkspaceOverflow;
    default: return Status::NeedsMoreBits;
  }
}

struct HaltingVisitor {
  const std::function<void(const HaltingProgram&)>* sink;

  std::size_t stop_length(const Machine&) const { return Machine::kNoStop; }
  bool on_output(const Machine&, BitPath, std::size_t) { return true; }
  bool expand(const Machine&, BitPath) { return true; }
  void on_halt(const Machine& m, BitPath path) {
    HaltingProgram hp;
    hp.program.bits.assign(path.begin(), path.end());
    hp.outcome = {Status::Halted, m.output(), m.usage()};
    (*sink)(hp);
  }
};

struct OutputVisitor {
  const SymbolString* target;
  const std::function<void(const MinimalProgramRecord&)>* sink;

  std::size_t stop_length(const Machine&) const { return target->size(); }
  bool expand(const Machine&, BitPath) { return true; }
  void on_halt(const Machine&, BitPath) {}
  bool on_output(const Machine& m, BitPath path, std::size_t) {
    MinimalProgramRecord r;
    r.program.bits.assign(path.begin(), path.end());
    r.bits_read = m.bits_read();
    r.output = m.output();
    r.output_prefix_matches = std::equal(target->begin(), target->end(), r.output.begin());
    r.usage = m.usage();
    (*sink)(r);
    return false;
  }
};

}  // namespace

ExecutionOutcome execute(const Program& program, const MachineConfig& config,
                         std::uint64_t step_budget, const MemoryBank* bank) {
  return execute_until_output(program, config, step_budget, Machine::kNoStop, bank).outcome;
}

PrefixRun execute_until_output(const Program& program, const MachineConfig& config,
                               std::uint64_t step_budget, std::size_t stop_at_output,
                               const MemoryBank* bank) {
  Machine m(config, step_budget, bank);
  auto e = m.run(program.bits, stop_at_output);
  PrefixRun r;
  r.reached = e == Machine::Event::OutputReached;
  r.outcome = {status_of(e), m.output(), m.usage()};
  return r;
}

void for_each_halting(const MachineConfig& config, std::size_t max_bits,
                      std::uint64_t step_budget, const MemoryBank* bank,
                      const std::function<void(const HaltingProgram&)>& sink) {
  if (max_bits < 3) throw std::invalid_argument("max_bits must be at least 3");
  HaltingVisitor v{&sink};
  walk_tree(Machine(config, step_budget, bank), max_bits, v);
}

std::vector<HaltingProgram> enumerate_halting(const MachineConfig& config, std::size_t max_bits,
                                              std::uint64_t step_budget,
                                              const MemoryBank* bank) {
  std::vector<HaltingProgram> out;
  for_each_halting(config, max_bits, step_budget, bank,
                   [&](const HaltingProgram& hp) { out.push_back(hp); });
  return out;
}

void for_each_output_record(const MachineConfig& config, const SymbolString& target,
                            std::size_t max_bits, std::uint64_t step_budget,
                            const MemoryBank* bank,
                            const std::function<void(const MinimalProgramRecord&)>& sink) {
  if (target.empty()) throw std::invalid_argument("target must be nonempty");
  OutputVisitor v{&target, &sink};
  walk_tree(Machine(config, step_budget, bank), max_bits, v);
}

std::vector<MinimalProgramRecord> traverse_outputs(const MachineConfig& config,
                                                   const SymbolString& target,
                                                   std::size_t max_bits,
                                                   std::uint64_t step_budget,
                                                   const MemoryBank* bank) {
  std::vector<MinimalProgramRecord> out;
  for_each_output_record(config, target, max_bits, step_budget, bank,
                         [&](const MinimalProgramRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace uind
