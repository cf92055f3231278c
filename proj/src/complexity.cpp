#include "uind/complexity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace uind {

std::string_view to_string(ComplexityKind k) {
  switch (k) {
    case ComplexityKind::Hbits: return "Hbits";
    case ComplexityKind::Volume: return "Volume";
    case ComplexityKind::Energy: return "Energy";
    case ComplexityKind::Action: return "Action";
    case ComplexityKind::ConstructiveEnergy: return "ConstructiveEnergy";
    case ComplexityKind::ConstructiveAction: return "ConstructiveAction";
    case ComplexityKind::TotalEnergy: return "TotalEnergy";
    case ComplexityKind::TotalAction: return "TotalAction";
  }
  return "?";
}

ComplexityKind parse_complexity_kind(std::string_view text) {
  for (auto k : {ComplexityKind::Hbits, ComplexityKind::Volume, ComplexityKind::Energy,
                 ComplexityKind::Action, ComplexityKind::ConstructiveEnergy,
                 ComplexityKind::ConstructiveAction, ComplexityKind::TotalEnergy,
                 ComplexityKind::TotalAction}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown complexity kind: " + std::string(text));
}

double kind_cost(ComplexityKind kind, const ResourceUsage& usage, std::size_t message_length,
                 const CostModelParams& params) {
  if (kind == ComplexityKind::Hbits) return static_cast<double>(usage.bits_read);
  const auto c = cost_from_usage(usage, message_length, params);
  switch (kind) {
    case ComplexityKind::Volume: return c.volume;
    case ComplexityKind::Energy: return c.energy;
    case ComplexityKind::Action: return c.action;
    case ComplexityKind::ConstructiveEnergy: return c.constructive_energy;
    case ComplexityKind::ConstructiveAction: return c.constructive_action;
    case ComplexityKind::TotalEnergy: return c.total_energy;
    case ComplexityKind::TotalAction: return c.total_action;
    default: break;
  }
  return c.volume;
}

namespace {

struct Candidate {
  double cost = 0;
  std::uint64_t bits = 0;
  Program witness;
  ResourceUsage usage;

  bool beats(const Candidate& other) const {
    return cost < other.cost || (cost == other.cost && bits < other.bits);
  }
};

bool dominates(const ResourceUsage& a, const ResourceUsage& b) {
  return a.bits_read <= b.bits_read && a.steps <= b.steps && a.peak_cells <= b.peak_cells &&
         a.step_cell_sum <= b.step_cell_sum;
}

// Branch-and-bound over the request tree.  Every cost kind is non-decreasing
// along a run, so a partial cost above the incumbent closes the branch.  Two
// exact reductions on top:
//  - a dead skip (see Machine::in_dead_skip) is dropped, since deleting the
//    skipped LOOP..END gives a shorter and cheaper program;
//  - a state whose key matches an earlier visit with no larger resource usage
//    is dropped, since every continuation does at least as well from the
//    earlier one, with a shorter or lexicographically smaller program.
class MinCostVisitor {
 public:
  MinCostVisitor(const SymbolString& target, ComplexityKind kind, const CostModelParams& params,
                 std::optional<double> ceiling)
      : target_(&target), kind_(kind), params_(params), ceiling_(ceiling) {}

  std::size_t stop_length(const Machine& m) const { return m.output().size() + 1; }

  bool on_output(const Machine& m, BitPath, std::size_t previous) {
    const auto& out = m.output();
    if (out.size() > target_->size()) return false;
    return std::equal(out.begin() + static_cast<std::ptrdiff_t>(previous), out.end(),
                      target_->begin() + static_cast<std::ptrdiff_t>(previous));
  }

  void on_halt(const Machine& m, BitPath path) {
    if (m.output().size() != target_->size()) return;
    Candidate c;
    c.usage = m.usage();
    c.cost = kind_cost(kind_, c.usage, target_->size(), params_);
    c.bits = path.size();
    if (best_ && !c.beats(*best_)) return;
    c.witness.bits.assign(path.begin(), path.end());
    best_ = std::move(c);
  }

  bool expand(const Machine& m, BitPath path) {
    const auto usage = m.usage();
    const double partial = kind_cost(kind_, usage, target_->size(), params_);
    if (ceiling_ && partial > *ceiling_) return false;
    if (best_) {
      if (partial > best_->cost) return false;
      if (partial >= best_->cost && path.size() + 1 > best_->bits) return false;
    }
    if (m.in_dead_skip()) return false;
    if (path.size() != m.bits_read()) return true;
    if (auto key = m.state_key(); !key.empty()) {
      auto [it, inserted] = seen_.try_emplace(std::move(key), usage);
      if (!inserted) {
        if (dominates(it->second, usage)) return false;
        if (dominates(usage, it->second)) it->second = usage;
      }
    }
    return true;
  }

  void merge(MinCostVisitor&& other) {
    if (other.best_ && (!best_ || other.best_->beats(*best_))) best_ = std::move(other.best_);
  }

  const std::optional<Candidate>& best() const { return best_; }

 private:
  const SymbolString* target_;
  ComplexityKind kind_;
  CostModelParams params_;
  std::optional<double> ceiling_;
  std::optional<Candidate> best_;
  std::unordered_map<std::string, ResourceUsage> seen_;
};

std::optional<Candidate> search(const SymbolString& target, ComplexityKind kind,
                                const EngineContext& ctx, const MemoryBank* bank,
                                std::size_t max_bits, std::optional<double> ceiling) {
  Machine root(ctx.effective_machine(), ctx.limits.step_budget, bank);
  auto v = walk_partitioned<MinCostVisitor>(
      root, max_bits, ctx.exec,
      [&] { return MinCostVisitor(target, kind, ctx.cost, ceiling); },
      [](MinCostVisitor& into, MinCostVisitor&& from) { into.merge(std::move(from)); });
  return v.best();
}

}  // namespace

std::optional<ComplexityEstimate> estimate(const SymbolString& x, ComplexityKind kind,
                                           const EngineContext& ctx, const MemoryBank* bank) {
  ctx.limits.validate();
  const auto machine = ctx.effective_machine();
  machine.validate();
  for (auto s : x) {
    if (s >= machine.output_radix())
      throw std::invalid_argument("message symbol outside the output alphabet");
  }

  // Deepen the bit limit until something is found.  For Hbits the first hit
  // is already the minimum; other kinds use it as a ceiling for the full run.
  const std::size_t max_bits = ctx.limits.max_bits;
  // Without a bank every halting program is a whole number of opcodes.
  const std::size_t stride = bank == nullptr ? 3 : 1;
  std::optional<Candidate> found;
  std::size_t depth = std::min<std::size_t>(3, max_bits);
  for (;;) {
    found = search(x, kind, ctx, bank, depth, std::nullopt);
    if (found || depth == max_bits) break;
    depth = std::min(depth + stride, max_bits);
  }
  if (!found) return std::nullopt;
  if (kind != ComplexityKind::Hbits && depth < max_bits)
    found = search(x, kind, ctx, bank, max_bits, found->cost);

  ComplexityEstimate e;
  e.kind = kind;
  e.value = found->cost;
  e.witness = std::move(found->witness);
  e.usage = found->usage;
  e.limits = ctx.limits;
  return e;
}

std::optional<ComplexityEstimate> estimate_conditional(const SymbolString& x, ComplexityKind kind,
                                                       const EngineContext& ctx,
                                                       const MemoryBank& bank) {
  if (bank.empty()) throw std::invalid_argument("conditional estimate needs a nonempty bank");
  return estimate(x, kind, ctx, &bank);
}

SymbolString joint_message(const SymbolString& x, const SymbolString& y,
                           const MachineConfig& config) {
  if (!config.separator_enabled)
    throw std::invalid_argument("joint messages need separator_enabled");
  SymbolString xy = x;
  xy.push_back(config.separator());
  xy.insert(xy.end(), y.begin(), y.end());
  return xy;
}

std::optional<ComplexityEstimate> estimate_joint(const SymbolString& x, const SymbolString& y,
                                                 ComplexityKind kind, const EngineContext& ctx) {
  if (y.empty()) throw std::invalid_argument("estimate_joint needs a nonempty y");
  return estimate(joint_message(x, y, ctx.machine), kind, ctx);
}

}  // namespace uind
