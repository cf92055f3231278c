#include "uind/harness.hpp"

#include <boost/rational.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uind {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const EnumerationLimits& limits) {
  return {{"max_bits", limits.max_bits},
          {"step_budget", limits.step_budget},
          {"workspace_limit", limits.workspace_limit}};
}

json to_json(const PriorSpec& prior) {
  return {{"family", std::string(to_string(prior.family))},
          {"lambda", prior.lambda},
          {"kT", prior.kT},
          {"F", prior.F}};
}

json to_json(const PredictionDistribution& d, const MachineConfig& machine) {
  json probs = json::object();
  json masses = json::object();
  for (std::size_t a = 0; a < d.probabilities.size(); ++a) {
    const std::string key(1, symbol_char(static_cast<Symbol>(a), machine));
    probs[key] = d.probabilities[a];
    masses[key] = std::isfinite(d.log_masses[a]) ? json(d.log_masses[a]) : json(nullptr);
  }
  return {{"defined", d.defined}, {"probabilities", probs}, {"log_masses", masses}};
}

json to_json(const MassReport& r) {
  return {{"log_mass", std::isfinite(r.log_mass) ? json(r.log_mass) : json(nullptr)},
          {"contributing_count", r.contributing_count},
          {"limits", to_json(r.limits)},
          {"prior", to_json(r.prior)}};
}

json to_json(const std::optional<ComplexityEstimate>& e, const SymbolString& target,
             const MachineConfig& machine) {
  json j = {{"target", format_symbols(target, machine)}};
  if (!e) {
    j["found"] = false;
    j["result"] = "NotFound";
    return j;
  }
  j["found"] = true;
  j["kind"] = std::string(to_string(e->kind));
  j["value"] = e->value;
  j["witness"] = e->witness.to_string();
  j["usage"] = {{"bits_read", e->usage.bits_read},
                {"steps", e->usage.steps},
                {"peak_cells", e->usage.peak_cells},
                {"step_cell_sum", e->usage.step_cell_sum}};
  j["limits"] = to_json(e->limits);
  j["exact_within_limits"] = e->exact_within_limits;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ConvergenceRow> converge_trial(const ExperimentConfig& config, const EngineContext& ctx,
                                           int trial) {
  const auto& source = *config.source;
  const auto alphabet = static_cast<std::size_t>(config.machine.alphabet_size);
  const auto seq = sample(source, config.sequence_length, config.seed + static_cast<std::uint64_t>(trial));
  const auto predictions = predict_sequence(seq, config.prior, ctx);

  std::vector<ConvergenceRow> rows;
  rows.reserve(seq.size());
  double cumulative = 0;
  SymbolString history;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ConvergenceRow row;
    row.trial = trial;
    row.t = i + 1;
    row.defined = predictions[i].defined;
    row.predicted = row.defined ? predictions[i].probabilities
                                : std::vector<double>(alphabet, 1.0 / static_cast<double>(alphabet));
    row.truth.resize(alphabet);
    for (std::size_t a = 0; a < alphabet; ++a) {
      row.truth[a] = boost::rational_cast<double>(
          conditional_pdf(source, history, static_cast<Symbol>(a)));
      const double diff = row.predicted[a] - row.truth[a];
      row.squared_error += diff * diff;
    }
    cumulative += row.squared_error;
    row.cumulative_error = cumulative;
    rows.push_back(std::move(row));
    history.push_back(seq[i]);
  }
  return rows;
}

}  // namespace

ConvergenceReport run_converge(const ExperimentConfig& config) {
  config.validate();
  if (!config.source) throw std::invalid_argument("converge needs a source (source.family)");

  ConvergenceReport report;
  report.trials = config.trials;
  report.length = config.sequence_length;
  report.alphabet_size = config.machine.alphabet_size;

  // Fan out over trials when there are enough of them, otherwise over
  // subtrees inside each traversal.  The subtree partition is fixed, so both
  // give the same numbers.
  auto ctx = config.engine();
  const bool across_trials = config.trials >= config.threads;
  if (across_trials) ctx.exec.threads = 1;
  std::vector<std::vector<ConvergenceRow>> per_trial(static_cast<std::size_t>(config.trials));
  detail::parallel_for(per_trial.size(), across_trials ? config.threads : 1, [&](std::size_t i) {
    per_trial[i] = converge_trial(config, ctx, static_cast<int>(i));
  });

  const auto alphabet = static_cast<std::size_t>(config.machine.alphabet_size);
  const auto n = static_cast<double>(config.trials);
  for (std::size_t t = 0; t < config.sequence_length; ++t) {
    ConvergenceSummary s;
    s.t = t + 1;
    s.mean_predicted.assign(alphabet, 0.0);
    s.mean_truth.assign(alphabet, 0.0);
    for (const auto& rows : per_trial) {
      const auto& r = rows[t];
      s.defined_count += r.defined ? 1 : 0;
      for (std::size_t a = 0; a < alphabet; ++a) {
        s.mean_predicted[a] += r.predicted[a] / n;
        s.mean_truth[a] += r.truth[a] / n;
      }
      s.mean_squared_error += r.squared_error / n;
      s.mean_cumulative_error += r.cumulative_error / n;
    }
    if (config.trials > 1) {
      double ss = 0;
      for (const auto& rows : per_trial) {
        const double d = rows[t].squared_error - s.mean_squared_error;
        ss += d * d;
      }
      s.stddev_squared_error = std::sqrt(ss / (n - 1));
    }
    report.summary.push_back(std::move(s));
  }
  for (auto& rows : per_trial) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  return report;
}

std::string convergence_csv(const ConvergenceReport& report) {
  const auto alphabet = static_cast<std::size_t>(report.alphabet_size);
  std::ostringstream out;
  out << "row,trial,t,defined";
  for (std::size_t a = 0; a < alphabet; ++a) out << ",p_hat_" << a;
  for (std::size_t a = 0; a < alphabet; ++a) out << ",mu_" << a;
  out << ",sq_error,cum_sq_error,sq_error_std\n";
  for (const auto& r : report.rows) {
    out << "trial," << r.trial << ',' << r.t << ',' << (r.defined ? 1 : 0);
    for (double p : r.predicted) out << ',' << format_number(p);
    for (double p : r.truth) out << ',' << format_number(p);
    out << ',' << format_number(r.squared_error) << ',' << format_number(r.cumulative_error)
        << ",\n";
  }
  for (const auto& s : report.summary) {
    out << "mean,," << s.t << ',' << s.defined_count;
    for (double p : s.mean_predicted) out << ',' << format_number(p);
    for (double p : s.mean_truth) out << ',' << format_number(p);
    out << ',' << format_number(s.mean_squared_error) << ','
        << format_number(s.mean_cumulative_error) << ',' << format_number(s.stddev_squared_error)
        << '\n';
  }
  return out.str();
}

json convergence_json(const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"trial", r.trial},
                    {"t", r.t},
                    {"defined", r.defined},
                    {"predicted", r.predicted},
                    {"truth", r.truth},
                    {"squared_error", r.squared_error},
                    {"cumulative_error", r.cumulative_error}});
  }
  json summary = json::array();
  for (const auto& s : report.summary) {
    summary.push_back({{"t", s.t},
                       {"defined_count", s.defined_count},
                       {"mean_predicted", s.mean_predicted},
                       {"mean_truth", s.mean_truth},
                       {"mean_squared_error", s.mean_squared_error},
                       {"stddev_squared_error", s.stddev_squared_error},
                       {"mean_cumulative_error", s.mean_cumulative_error}});
  }
  return {{"trials", report.trials}, {"length", report.length}, {"rows", rows}, {"summary", summary}};
}

// ---------------------------------------------------------------------------

EnumerationReport run_enumerate(const ExperimentConfig& config) {
  config.validate();
  const auto ctx = config.engine();
  EnumerationReport report;
  report.programs = enumerate_halting(ctx.effective_machine(), ctx.limits.max_bits,
                                      ctx.limits.step_budget);
  report.omega_lower_bound = estimate_omega(ctx);
  return report;
}

std::string enumeration_csv(const EnumerationReport& report, const MachineConfig& machine) {
  std::ostringstream out;
  out << "program,bits,steps,peak_cells,output\n";
  for (const auto& hp : report.programs) {
    out << hp.program.to_string() << ',' << hp.program.size() << ',' << hp.outcome.usage.steps
        << ',' << hp.outcome.usage.peak_cells << ',' << format_symbols(hp.outcome.output, machine)
        << '\n';
  }
  out << "# omega_lower_bound=" << format_number(report.omega_lower_bound) << '\n';
  return out.str();
}

json enumeration_json(const EnumerationReport& report, const MachineConfig& machine) {
  json programs = json::array();
  for (const auto& hp : report.programs) {
    programs.push_back({{"program", hp.program.to_string()},
                        {"bits", hp.program.size()},
                        {"steps", hp.outcome.usage.steps},
                        {"peak_cells", hp.outcome.usage.peak_cells},
                        {"output", format_symbols(hp.outcome.output, machine)}});
  }
  return {{"programs", programs}, {"omega_lower_bound", report.omega_lower_bound}};
}

MemoryBank load_bank_file(const std::string& path, const MachineConfig& machine) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open bank file " + path);
  MemoryBank bank;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bank.entries.push_back(parse_symbols(line, machine));
  }
  return bank;
}

}  // namespace uind
