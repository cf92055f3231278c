#pragma once

// Computable stochastic sources with exact rational conditional pdfs.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "uind/refmachine.hpp"

namespace uind {

using Rational = boost::rational<std::int64_t>;

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

struct BernoulliSource {
  Rational p{1, 2};  // probability of symbol 1
  friend bool operator==(const BernoulliSource&, const BernoulliSource&) = default;
};

// Order-k chain over the machine alphabet.  Row index is the base-|D| value
// of the last k symbols (oldest first); each row holds |D| probabilities.
// Histories shorter than k are left-padded with symbol 0.
struct MarkovSource {
  int order = 1;
  std::vector<std::vector<Rational>> table;
  friend bool operator==(const MarkovSource&, const MarkovSource&) = default;
};

struct PeriodicSource {
  SymbolString pattern;
  friend bool operator==(const PeriodicSource&, const PeriodicSource&) = default;
};

// Output stream of a reference-machine program.
struct ProgramSource {
  Program program;
  std::uint64_t step_budget = 1'000'000;
  friend bool operator==(const ProgramSource&, const ProgramSource&) = default;
};

struct SourceModel {
  std::variant<BernoulliSource, MarkovSource, PeriodicSource, ProgramSource> family;
  std::string description_note;
  MachineConfig machine;

  void validate() const;
  std::string_view family_name() const;
  friend bool operator==(const SourceModel&, const SourceModel&) = default;
};

// Exact mu(symbol | history).  Throws std::invalid_argument when a
// deterministic source could not have produced `history`.
Rational conditional_pdf(const SourceModel& source, const SymbolString& history, Symbol symbol);

// SplitMix64.  state += 0x9e3779b97f4a7c15; z = state;
// z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9; z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
// return z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// Draws a symbol from an exact pdf with one 64-bit word u: the smallest a
// with u * den(C_a) < num(C_a) * 2^64, C_a being the cumulative mass up to a.
Symbol draw_symbol(SplitMix64& rng, const std::vector<Rational>& pdf);

// n symbols; a pure function of (source, n, seed).
SymbolString sample(const SourceModel& source, std::size_t n, std::uint64_t seed);

}  // namespace uind
