#include "uind/sources.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace uind {

Rational parse_rational(std::string_view text) {
  auto to_int = [](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad rational: " + std::string(s));
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_int(text));
  const auto den = to_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(to_int(text.substr(0, slash)), den);
}

std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string_view SourceModel::family_name() const {
  switch (family.index()) {
    case 0: return "Bernoulli";
    case 1: return "Markov";
    case 2: return "Periodic";
    default: return "Program";
  }
}

namespace {

std::size_t pow_size(std::size_t base, int exp) {
  std::size_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SymbolString program_stream(const ProgramSource& s, const MachineConfig& machine,
                            std::size_t n) {
  auto run = execute_until_output(s.program, machine, s.step_budget, n);
  if (!run.reached)
    throw std::invalid_argument("program source stopped (" +
                                std::string(to_string(run.outcome.status)) + ") after " +
                                std::to_string(run.outcome.output.size()) + " symbols");
  run.outcome.output.resize(n);
  return run.outcome.output;
}

std::vector<Rational> pdf_of(const SourceModel& source, const SymbolString& history) {
  const auto alphabet = static_cast<std::size_t>(source.machine.alphabet_size);
  std::vector<Rational> pdf(alphabet, Rational(0));
  std::visit(
      overloaded{
          [&](const BernoulliSource& b) {
            pdf[0] = Rational(1) - b.p;
            pdf[1] = b.p;
          },
          [&](const MarkovSource& m) {
            std::size_t row = 0;
            for (int i = 0; i < m.order; ++i) {
              const auto pos = static_cast<std::ptrdiff_t>(history.size()) - m.order + i;
              row = row * alphabet + (pos >= 0 ? history[static_cast<std::size_t>(pos)] : 0);
            }
            pdf = m.table[row];
          },
          [&](const PeriodicSource& p) {
            for (std::size_t i = 0; i < history.size(); ++i) {
              if (history[i] != p.pattern[i % p.pattern.size()])
                throw std::invalid_argument("history is not a prefix of the periodic stream");
            }
            pdf[p.pattern[history.size() % p.pattern.size()]] = Rational(1);
          },
          [&](const ProgramSource& p) {
            auto stream = program_stream(p, source.machine, history.size() + 1);
            if (!std::equal(history.begin(), history.end(), stream.begin()))
              throw std::invalid_argument("history is not a prefix of the program's output");
            pdf[stream.back()] = Rational(1);
          },
      },
      source.family);
  return pdf;
}

}  // namespace

void SourceModel::validate() const {
  machine.validate();
  const auto alphabet = static_cast<std::size_t>(machine.alphabet_size);
  std::visit(
      overloaded{
          [&](const BernoulliSource& b) {
            if (alphabet != 2) throw std::invalid_argument("Bernoulli source is binary");
            if (b.p <= Rational(0) || b.p >= Rational(1))
              throw std::invalid_argument("Bernoulli p must lie in (0,1)");
          },
          [&](const MarkovSource& m) {
            if (m.order < 0 || m.order > 16) throw std::invalid_argument("Markov order out of range");
            if (m.table.size() != pow_size(alphabet, m.order))
              throw std::invalid_argument("Markov table needs |D|^order rows");
            for (const auto& row : m.table) {
              if (row.size() != alphabet) throw std::invalid_argument("Markov row needs |D| entries");
              Rational sum(0);
              for (const auto& p : row) {
                if (p < Rational(0)) throw std::invalid_argument("negative Markov probability");
                sum += p;
              }
              if (sum != Rational(1)) throw std::invalid_argument("Markov row must sum to 1");
            }
          },
          [&](const PeriodicSource& p) {
            if (p.pattern.empty()) throw std::invalid_argument("periodic pattern is empty");
            for (auto s : p.pattern) {
              if (s >= alphabet) throw std::invalid_argument("pattern symbol outside alphabet");
            }
          },
          [&](const ProgramSource& p) {
            if (p.step_budget == 0) throw std::invalid_argument("program source budget is zero");
          },
      },
      family);
}

Rational conditional_pdf(const SourceModel& source, const SymbolString& history, Symbol symbol) {
  if (symbol >= source.machine.alphabet_size)
    throw std::invalid_argument("symbol outside the alphabet");
  return pdf_of(source, history)[symbol];
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Symbol draw_symbol(SplitMix64& rng, const std::vector<Rational>& pdf) {
  using u128 = unsigned __int128;
  const u128 u = rng.next();
  Rational cumulative(0);
  for (std::size_t a = 0; a + 1 < pdf.size(); ++a) {
    cumulative += pdf[a];
    const u128 lhs = u * static_cast<u128>(cumulative.denominator());
    const u128 rhs = static_cast<u128>(cumulative.numerator()) << 64;
    if (lhs < rhs) return static_cast<Symbol>(a);
  }
  return static_cast<Symbol>(pdf.size() - 1);
}

SymbolString sample(const SourceModel& source, std::size_t n, std::uint64_t seed) {
  source.validate();
  if (const auto* p = std::get_if<PeriodicSource>(&source.family)) {
    SymbolString out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = p->pattern[i % p->pattern.size()];
    return out;
  }
  if (const auto* p = std::get_if<ProgramSource>(&source.family))
    return n == 0 ? SymbolString{} : program_stream(*p, source.machine, n);

  SplitMix64 rng(seed);
  SymbolString out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw_symbol(rng, pdf_of(source, out)));
  return out;
}

}  // namespace uind
