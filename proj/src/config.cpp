#include "uind/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uind {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view key, std::string_view value) {
  throw std::invalid_argument("invalid value for " + std::string(key) + ": '" +
                              std::string(value) + "'");
}

template <class Int>
Int to_int(std::string_view key, std::string_view value) {
  Int v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) bad(key, value);
  return v;
}

double to_double(std::string_view key, std::string_view value) {
  std::string s(value);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) bad(key, value);
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad(key, value);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::vector<Rational>> parse_table(std::string_view value) {
  std::vector<std::vector<Rational>> table;
  for (auto row : split(value, ';')) {
    std::vector<Rational> entries;
    for (auto cell : split(row, ',')) entries.push_back(parse_rational(cell));
    table.push_back(std::move(entries));
  }
  return table;
}

std::string format_table(const std::vector<std::vector<Rational>>& table) {
  std::string out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (r > 0) out += ';';
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      if (c > 0) out += ',';
      out += format_rational(table[r][c]);
    }
  }
  return out;
}

std::string value_or(const ConfigMap& m, std::string_view key, std::string fallback) {
  auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

SourceModel build_source(std::string_view family, const ConfigMap& s, const MachineConfig& machine) {
  SourceModel src;
  src.machine = machine;
  src.description_note = value_or(s, "source.note", "");
  if (family == "Bernoulli") {
    src.family = BernoulliSource{parse_rational(value_or(s, "source.p", "1/2"))};
  } else if (family == "Markov") {
    MarkovSource m;
    m.order = to_int<int>("source.order", value_or(s, "source.order", "1"));
    auto it = s.find("source.table");
    if (it == s.end()) throw std::invalid_argument("Markov source needs source.table");
    m.table = parse_table(it->second);
    src.family = std::move(m);
  } else if (family == "Periodic") {
    auto it = s.find("source.pattern");
    if (it == s.end()) throw std::invalid_argument("Periodic source needs source.pattern");
    src.family = PeriodicSource{parse_symbols(it->second, machine)};
  } else if (family == "Program") {
    ProgramSource p;
    auto it = s.find("source.program");
    if (it == s.end()) throw std::invalid_argument("Program source needs source.program");
    p.program = Program::parse(it->second);
    p.step_budget = to_int<std::uint64_t>(
        "source.step_budget", value_or(s, "source.step_budget", std::to_string(p.step_budget)));
    src.family = std::move(p);
  } else {
    bad("source.family", family);
  }
  src.validate();
  return src;
}

const std::vector<std::string_view>& source_keys() {
  static const std::vector<std::string_view> keys = {
      "source.family", "source.p",       "source.order",      "source.table",
      "source.pattern", "source.program", "source.step_budget", "source.note"};
  return keys;
}

}  // namespace

void ExperimentConfig::validate() const {
  machine.validate();
  limits.validate();
  prior.validate();
  if (cost.c_build < 0 || cost.c_tx < 0) throw std::invalid_argument("cost constants must be >= 0");
  if (trials < 1) throw std::invalid_argument("run.trials must be >= 1");
  if (sequence_length < 1) throw std::invalid_argument("run.sequence_length must be >= 1");
  if (threads < 1) throw std::invalid_argument("run.threads must be >= 1");
  if (source) source->validate();
}

EngineContext ExperimentConfig::engine() const {
  EngineContext ctx;
  ctx.machine = machine;
  ctx.limits = limits;
  ctx.limits.workspace_limit = machine.workspace_limit;
  ctx.cost = cost;
  ctx.exec = {threads, reproducible_reduction};
  return ctx;
}

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap m;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    m[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return m;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig build_config(const ConfigMap& settings) {
  ExperimentConfig c;
  bool source_seen = false;
  for (const auto& [key, value] : settings) {
    if (key == "machine.alphabet_size") c.machine.alphabet_size = to_int<int>(key, value);
    else if (key == "machine.workspace_limit") c.machine.workspace_limit = to_int<std::size_t>(key, value);
    else if (key == "machine.separator_enabled") c.machine.separator_enabled = to_bool(key, value);
    else if (key == "limits.max_bits") c.limits.max_bits = to_int<std::size_t>(key, value);
    else if (key == "limits.step_budget") c.limits.step_budget = to_int<std::uint64_t>(key, value);
    else if (key == "prior.family") c.prior.family = parse_prior_family(value);
    else if (key == "prior.lambda") c.prior.lambda = to_double(key, value);
    else if (key == "prior.kT") c.prior.kT = to_double(key, value);
    else if (key == "prior.F") c.prior.F = to_double(key, value);
    else if (key == "cost.c_build") c.cost.c_build = to_double(key, value);
    else if (key == "cost.c_tx") c.cost.c_tx = to_double(key, value);
    else if (key == "run.trials") c.trials = to_int<int>(key, value);
    else if (key == "run.sequence_length") c.sequence_length = to_int<std::size_t>(key, value);
    else if (key == "run.seed") c.seed = to_int<std::uint64_t>(key, value);
    else if (key == "run.reproducible_reduction") c.reproducible_reduction = to_bool(key, value);
    else if (key == "run.threads") c.threads = to_int<int>(key, value);
    else if (key.starts_with("source.")) {
      bool known = false;
      for (auto k : source_keys()) known = known || k == key;
      if (!known) throw std::invalid_argument("unknown config key: " + key);
      source_seen = true;
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  c.limits.workspace_limit = c.machine.workspace_limit;
  c.machine.validate();
  if (source_seen) {
    const auto family = value_or(settings, "source.family", "none");
    if (family != "none") c.source = build_source(family, settings, c.machine);
  }
  c.validate();
  return c;
}

ConfigMap config_to_map(const ExperimentConfig& c) {
  ConfigMap m;
  m["machine.alphabet_size"] = std::to_string(c.machine.alphabet_size);
  m["machine.workspace_limit"] = std::to_string(c.machine.workspace_limit);
  m["machine.separator_enabled"] = c.machine.separator_enabled ? "true" : "false";
  m["limits.max_bits"] = std::to_string(c.limits.max_bits);
  m["limits.step_budget"] = std::to_string(c.limits.step_budget);
  m["prior.family"] = std::string(to_string(c.prior.family));
  m["prior.lambda"] = fmt_double(c.prior.lambda);
  m["prior.kT"] = fmt_double(c.prior.kT);
  m["prior.F"] = fmt_double(c.prior.F);
  m["cost.c_build"] = fmt_double(c.cost.c_build);
  m["cost.c_tx"] = fmt_double(c.cost.c_tx);
  m["run.trials"] = std::to_string(c.trials);
  m["run.sequence_length"] = std::to_string(c.sequence_length);
  m["run.seed"] = std::to_string(c.seed);
  m["run.reproducible_reduction"] = c.reproducible_reduction ? "true" : "false";
  m["run.threads"] = std::to_string(c.threads);
  if (!c.source) {
    m["source.family"] = "none";
    return m;
  }
  const auto& s = *c.source;
  m["source.family"] = std::string(s.family_name());
  if (!s.description_note.empty()) m["source.note"] = s.description_note;
  if (const auto* b = std::get_if<BernoulliSource>(&s.family)) {
    m["source.p"] = format_rational(b->p);
  } else if (const auto* mk = std::get_if<MarkovSource>(&s.family)) {
    m["source.order"] = std::to_string(mk->order);
    m["source.table"] = format_table(mk->table);
  } else if (const auto* p = std::get_if<PeriodicSource>(&s.family)) {
    m["source.pattern"] = format_symbols(p->pattern, s.machine);
  } else if (const auto* pr = std::get_if<ProgramSource>(&s.family)) {
    m["source.program"] = pr->program.to_string();
    m["source.step_budget"] = std::to_string(pr->step_budget);
  }
  return m;
}

ExperimentConfig parse_config(std::string_view text) {
  return build_config(parse_config_text(text));
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, value] : config_to_map(config)) out += key + "=" + value + "\n";
  return out;
}

}  // namespace uind
