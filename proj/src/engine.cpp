#include "uind/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uind {

void EnumerationLimits::validate() const {
  if (max_bits == 0 || step_budget == 0 || workspace_limit == 0)
    throw std::invalid_argument("enumeration limits must be positive");
  if (max_bits > kMaxEnumerationBits)
    throw std::invalid_argument("max_bits is capped at 40");
}

MachineConfig EngineContext::effective_machine() const {
  MachineConfig m = machine;
  m.workspace_limit = limits.workspace_limit;
  return m;
}

namespace {

// Accumulates, for every horizon L = 1..horizons, the prior mass of the
// request-tree leaves where the output first reaches L symbols having
// matched `sequence` on its first L-1 symbols, split by the L-th symbol.
class HorizonVisitor {
 public:
  HorizonVisitor(const SymbolString& sequence, std::size_t horizons, int radix,
                 const PriorSpec& prior, const CostModelParams& cost)
      : sequence_(&sequence), horizons_(horizons), radix_(radix), prior_(prior), cost_(cost),
        acc_(horizons * static_cast<std::size_t>(radix)) {}

  std::size_t stop_length(const Machine& m) const { return m.output().size() + 1; }
  bool expand(const Machine&, BitPath) { return true; }
  void on_halt(const Machine&, BitPath) {}

  bool on_output(const Machine& m, BitPath, std::size_t previous) {
    const auto& out = m.output();
    const std::size_t reached = std::min(out.size(), horizons_);
    for (std::size_t len = previous + 1; len <= reached; ++len) {
      // out[0..len-2] must agree with the sequence; earlier positions were
      // checked at previous pauses.
      if (len >= 2 && out[len - 2] != (*sequence_)[len - 2]) return false;
      acc_[(len - 1) * radix_ + out[len - 1]].add(weight(m, len));
    }
    if (out.size() >= horizons_) return false;
    return out.back() == (*sequence_)[out.size() - 1];
  }

  void merge(const HorizonVisitor& other) {
    for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i].merge(other.acc_[i]);
  }

  const LogSumExp& at(std::size_t horizon, Symbol s) const {
    return acc_[(horizon - 1) * radix_ + s];
  }

 private:
  double weight(const Machine& m, std::size_t length) const {
    if (prior_.family == PriorFamily::Length)
      return -static_cast<double>(m.bits_read()) * std::numbers::ln2;
    return log_weight(prior_, cost_from_usage(m.usage(), length, cost_), m.bits_read());
  }

  const SymbolString* sequence_;
  std::size_t horizons_;
  std::size_t radix_;
  PriorSpec prior_;
  CostModelParams cost_;
  std::vector<LogSumExp> acc_;
};

HorizonVisitor run_horizons(const SymbolString& sequence, std::size_t horizons,
                            const PriorSpec& prior, const EngineContext& ctx,
                            const MemoryBank* bank) {
  ctx.limits.validate();
  prior.validate();
  const auto machine = ctx.effective_machine();
  const int radix = machine.output_radix();
  for (auto s : sequence) {
    if (s >= radix) throw std::invalid_argument("sequence symbol outside the output alphabet");
  }
  Machine root(machine, ctx.limits.step_budget, bank);
  return walk_partitioned<HorizonVisitor>(
      root, ctx.limits.max_bits, ctx.exec,
      [&] { return HorizonVisitor(sequence, horizons, radix, prior, ctx.cost); },
      [](HorizonVisitor& into, const HorizonVisitor& from) { into.merge(from); });
}

PredictionDistribution distribution_at(const HorizonVisitor& v, std::size_t horizon,
                                       int alphabet_size) {
  PredictionDistribution d;
  d.log_masses.resize(alphabet_size, kNegInf);
  d.probabilities.assign(alphabet_size, 0.0);
  LogSumExp total;
  for (int a = 0; a < alphabet_size; ++a) {
    const auto& acc = v.at(horizon, static_cast<Symbol>(a));
    d.log_masses[a] = acc.log_value();
    total.merge(acc);
  }
  if (total.count() == 0) return d;
  const double z = total.log_value();
  for (int a = 0; a < alphabet_size; ++a)
    d.probabilities[a] = d.log_masses[a] == kNegInf ? 0.0 : std::exp(d.log_masses[a] - z);
  d.defined = true;
  return d;
}

class HaltingWeightVisitor {
 public:
  HaltingWeightVisitor(const SymbolString& x, const PriorSpec& prior, const CostModelParams& cost)
      : x_(&x), prior_(prior), cost_(cost) {}

  std::size_t stop_length(const Machine&) const { return Machine::kNoStop; }
  bool on_output(const Machine&, BitPath, std::size_t) { return true; }
  bool expand(const Machine&, BitPath) { return true; }
  void on_halt(const Machine& m, BitPath) {
    const auto& out = m.output();
    if (out.empty()) return;
    const double w = log_weight(prior_, cost_from_usage(m.usage(), out.size(), cost_), m.bits_read());
    denominator.add(w);
    if (out.size() >= x_->size() && std::equal(x_->begin(), x_->end(), out.begin()))
      numerator.add(w);
  }
  void merge(const HaltingWeightVisitor& o) {
    numerator.merge(o.numerator);
    denominator.merge(o.denominator);
  }

  LogSumExp numerator;
  LogSumExp denominator;

 private:
  const SymbolString* x_;
  PriorSpec prior_;
  CostModelParams cost_;
};

// Halting-program counts per length; the Kraft sum is then an exact dyadic.
struct KraftVisitor {
  std::vector<std::uint64_t> by_length = std::vector<std::uint64_t>(kMaxEnumerationBits + 1, 0);

  std::size_t stop_length(const Machine&) const { return Machine::kNoStop; }
  bool on_output(const Machine&, BitPath, std::size_t) { return true; }
  bool expand(const Machine&, BitPath) { return true; }
  void on_halt(const Machine&, BitPath path) { ++by_length[path.size()]; }
  void merge(const KraftVisitor& o) {
    for (std::size_t i = 0; i < by_length.size(); ++i) by_length[i] += o.by_length[i];
  }
};

}  // namespace

MassReport semimeasure_mass(const SymbolString& x, const PriorSpec& prior,
                            const EngineContext& ctx, const MemoryBank* bank) {
  if (x.empty()) throw std::invalid_argument("semimeasure_mass needs a nonempty string");
  auto v = run_horizons(x, x.size(), prior, ctx, bank);
  const auto& acc = v.at(x.size(), x.back());
  return {acc.log_value(), acc.count(), ctx.limits, prior};
}

PredictionDistribution predict_next(const SymbolString& history, const PriorSpec& prior,
                                    const EngineContext& ctx, const MemoryBank* bank) {
  auto v = run_horizons(history, history.size() + 1, prior, ctx, bank);
  return distribution_at(v, history.size() + 1, ctx.machine.alphabet_size);
}

std::vector<PredictionDistribution> predict_sequence(const SymbolString& sequence,
                                                     const PriorSpec& prior,
                                                     const EngineContext& ctx,
                                                     const MemoryBank* bank) {
  std::vector<PredictionDistribution> out;
  if (sequence.empty()) return out;
  auto v = run_horizons(sequence, sequence.size(), prior, ctx, bank);
  out.reserve(sequence.size());
  for (std::size_t t = 1; t <= sequence.size(); ++t)
    out.push_back(distribution_at(v, t, ctx.machine.alphabet_size));
  return out;
}

double physical_probability(const SymbolString& x, const PriorSpec& prior,
                            const EngineContext& ctx) {
  ctx.limits.validate();
  prior.validate();
  if (!prior.cost_based())
    throw std::invalid_argument("physical_probability needs an ExpVolume or ExpAction prior");
  Machine root(ctx.effective_machine(), ctx.limits.step_budget);
  auto v = walk_partitioned<HaltingWeightVisitor>(
      root, ctx.limits.max_bits, ctx.exec, [&] { return HaltingWeightVisitor(x, prior, ctx.cost); },
      [](HaltingWeightVisitor& into, const HaltingWeightVisitor& from) { into.merge(from); });
  if (v.denominator.count() == 0)
    throw std::runtime_error("no halting machine with nonempty output within the limits");
  if (v.numerator.count() == 0) return 0.0;
  return std::min(1.0, std::exp(v.numerator.log_value() - v.denominator.log_value()));
}

double estimate_omega(const EngineContext& ctx) {
  ctx.limits.validate();
  Machine root(ctx.effective_machine(), ctx.limits.step_budget);
  auto v = walk_partitioned<KraftVisitor>(
      root, ctx.limits.max_bits, ctx.exec, [] { return KraftVisitor{}; },
      [](KraftVisitor& into, const KraftVisitor& from) { into.merge(from); });
  std::uint64_t scaled = 0;  // in units of 2^-40
  for (std::size_t len = 0; len <= kMaxEnumerationBits; ++len)
    scaled += v.by_length[len] << (kMaxEnumerationBits - len);
  return std::ldexp(static_cast<double>(scaled), -static_cast<int>(kMaxEnumerationBits));
}

}  // namespace uind
