// uind: command-line harness for the resource-bounded induction engine.
//
//   uind predict    --history 0101        next-symbol distribution (JSON)
//   uind converge   --set source.family=Periodic --set source.pattern=01
//   uind complexity --x 0 --kind Hbits [--y 1] [--bank-file bank.txt]
//   uind physbounds entropy --diag 0.75,0.25 | --matrix rho.txt
//   uind physbounds bekenstein --radius 1 --energy 1
//   uind enumerate  --max-bits 9
//
// Exit codes: 0 success (NotFound included), 1 usage or config error,
// 2 undefined prediction.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uind/harness.hpp"

namespace {

using namespace uind;

struct SharedFlags {
  std::string config_path;
  std::optional<std::size_t> max_bits;
  std::optional<std::uint64_t> step_budget;
  std::optional<std::string> prior;
  std::optional<double> lambda;
  std::optional<double> kT;
  std::optional<double> F;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::vector<std::string> settings;
  std::string out_path;
  std::string format = "json";
};

void add_shared(CLI::App* cmd, SharedFlags& f, const std::string& default_format) {
  f.format = default_format;
  cmd->add_option("--config", f.config_path, "key=value config file");
  cmd->add_option("--max-bits", f.max_bits, "program length limit (bits)");
  cmd->add_option("--step-budget", f.step_budget, "machine steps per program");
  cmd->add_option("--prior", f.prior, "Length|ExpVolume|Boltzmann|Canonical|ExpAction");
  cmd->add_option("--lambda", f.lambda, "rate of the exponential priors");
  cmd->add_option("--kT", f.kT, "temperature of the thermal priors");
  cmd->add_option("--F", f.F, "free energy of the canonical prior");
  cmd->add_option("--seed", f.seed, "sampler seed");
  cmd->add_option("--trials", f.trials, "number of sampled sequences");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("--set", f.settings, "override a config key (key=value)");
  cmd->add_option("--out", f.out_path, "write output here instead of stdout");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig resolve(const SharedFlags& f) {
  ConfigMap settings;
  if (!f.config_path.empty()) settings = load_config_file(f.config_path);
  auto put = [&](const char* key, const auto& v) {
    if (v) {
      std::ostringstream s;
      s.precision(17);
      s << *v;
      settings[key] = s.str();
    }
  };
  put("limits.max_bits", f.max_bits);
  put("limits.step_budget", f.step_budget);
  put("prior.family", f.prior);
  put("prior.lambda", f.lambda);
  put("prior.kT", f.kT);
  put("prior.F", f.F);
  put("run.seed", f.seed);
  put("run.trials", f.trials);
  put("run.threads", f.threads);
  for (const auto& kv : f.settings) {
    auto text = parse_config_text(kv);
    for (auto& [k, v] : text) settings[k] = v;
  }
  return build_config(settings);
}

void emit(const SharedFlags& f, const std::string& text) {
  if (f.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(f.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + f.out_path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource-bounded universal induction over a prefix-free reference machine"};
  app.require_subcommand(1);

  SharedFlags predict_flags, converge_flags, complexity_flags, enumerate_flags, phys_flags;

  auto* predict = app.add_subcommand("predict", "next-symbol distribution after a history");
  add_shared(predict, predict_flags, "json");
  std::string history;
  predict->add_option("--history", history, "observed symbols (may be empty)");

  auto* converge = app.add_subcommand("converge", "prediction error on sampled sequences");
  add_shared(converge, converge_flags, "csv");
  std::optional<std::size_t> length;
  converge->add_option("--length", length, "sequence length");

  auto* complexity = app.add_subcommand("complexity", "minimum-cost program for a message");
  add_shared(complexity, complexity_flags, "json");
  std::string x_text, kind_text = "Hbits", bank_file;
  std::optional<std::string> y_text;
  complexity->add_option("--x", x_text, "message")->required();
  complexity->add_option("--y", y_text, "second message (joint complexity)");
  complexity->add_option("--kind", kind_text, "Hbits|Volume|Energy|Action|ConstructiveEnergy|"
                                              "ConstructiveAction|TotalEnergy|TotalAction");
  complexity->add_option("--bank-file", bank_file, "memory bank, one entry per line");

  auto* phys = app.add_subcommand("physbounds", "von Neumann entropy and Bekenstein bound");
  add_shared(phys, phys_flags, "json");
  phys->require_subcommand(1);
  auto* entropy = phys->add_subcommand("entropy", "von Neumann entropy of a density matrix");
  std::string matrix_path, diag_text;
  auto* matrix_opt = entropy->add_option("--matrix", matrix_path, "density matrix file");
  entropy->add_option("--diag", diag_text, "diagonal density matrix, comma-separated")
      ->excludes(matrix_opt);
  auto* bek = phys->add_subcommand("bekenstein", "maximal entropy for radius and energy");
  double radius = 0, energy = 0;
  bek->add_option("--radius", radius, "metres")->required();
  bek->add_option("--energy", energy, "joules")->required();

  auto* enumerate = app.add_subcommand("enumerate", "halting programs and the Omega lower bound");
  add_shared(enumerate, enumerate_flags, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*predict) {
      auto cfg = resolve(predict_flags);
      const auto h = parse_symbols(history, cfg.machine);
      const auto d = predict_next(h, cfg.prior, cfg.engine());
      if (predict_flags.format == "csv") {
        std::string out = "symbol,probability,log_mass\n";
        for (std::size_t a = 0; a < d.probabilities.size(); ++a) {
          out += symbol_char(static_cast<Symbol>(a), cfg.machine);
          out += "," + format_number(d.probabilities[a]) + "," + format_number(d.log_masses[a]) + "\n";
        }
        emit(predict_flags, out);
      } else {
        auto j = to_json(d, cfg.machine);
        j["history"] = history;
        j["limits"] = to_json(cfg.engine().limits);
        j["prior"] = to_json(cfg.prior);
        emit(predict_flags, dump(j));
      }
      if (!d.defined) {
        std::cerr << "prediction undefined: no program reaches length " << h.size() + 1
                  << " within the limits\n";
        return 2;
      }
      return 0;
    }

    if (*converge) {
      auto cfg = resolve(converge_flags);
      if (length) cfg.sequence_length = *length;
      const auto report = run_converge(cfg);
      emit(converge_flags, converge_flags.format == "csv" ? convergence_csv(report)
                                                          : dump(convergence_json(report)));
      return 0;
    }

    if (*complexity) {
      auto cfg = resolve(complexity_flags);
      const auto kind = parse_complexity_kind(kind_text);
      auto ctx = cfg.engine();
      const auto x = parse_symbols(x_text, cfg.machine);
      std::optional<ComplexityEstimate> est;
      SymbolString target = x;
      if (y_text) {
        const auto y = parse_symbols(*y_text, cfg.machine);
        target = joint_message(x, y, cfg.machine);
        est = estimate_joint(x, y, kind, ctx);
      } else if (!bank_file.empty()) {
        est = estimate_conditional(x, kind, ctx, load_bank_file(bank_file, cfg.machine));
      } else {
        est = estimate(x, kind, ctx);
      }
      if (complexity_flags.format == "csv") {
        std::string out = "target,kind,found,value,witness\n";
        out += format_symbols(target, cfg.machine) + "," + kind_text + "," +
               (est ? "1," + format_number(est->value) + "," + est->witness.to_string() : "0,,") +
               "\n";
        emit(complexity_flags, out);
      } else {
        emit(complexity_flags, dump(to_json(est, target, cfg.machine)));
      }
      return 0;
    }

    if (*phys) {
      json j;
      if (*entropy) {
        if (matrix_path.empty() && diag_text.empty())
          throw std::invalid_argument("entropy needs --matrix or --diag");
        const auto rho = [&] {
          if (!matrix_path.empty()) return DensityMatrix::load(matrix_path);
          const auto diag = parse_list(diag_text);
          return DensityMatrix::diagonal(Eigen::Map<const Eigen::VectorXd>(
              diag.data(), static_cast<Eigen::Index>(diag.size())));
        }();
        const double s = von_neumann_entropy(rho);
        j = {{"quantity", "von_neumann_entropy"},
             {"dim", rho.dim()},
             {"nats", s},
             {"bits", nats_to_bits(s)}};
      } else {
        const double s = bekenstein_bound(radius, energy);
        j = {{"quantity", "bekenstein_bound"},
             {"radius_m", radius},
             {"energy_j", energy},
             {"nats", s},
             {"bits", nats_to_bits(s)},
             {"joules_per_kelvin", bekenstein_bound_thermodynamic(radius, energy)}};
      }
      if (phys_flags.format == "csv") {
        std::string out = "quantity,nats,bits\n";
        out += j["quantity"].get<std::string>() + "," + format_number(j["nats"].get<double>()) +
               "," + format_number(j["bits"].get<double>()) + "\n";
        emit(phys_flags, out);
      } else {
        emit(phys_flags, dump(j));
      }
      return 0;
    }

    if (*enumerate) {
      auto cfg = resolve(enumerate_flags);
      const auto report = run_enumerate(cfg);
      emit(enumerate_flags, enumerate_flags.format == "csv"
                                ? enumeration_csv(report, cfg.machine)
                                : dump(enumeration_json(report, cfg.machine)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
