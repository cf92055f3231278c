#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uind/refmachine.hpp"

namespace uind {

enum class PriorFamily { Length, ExpVolume, Boltzmann, Canonical, ExpAction };

std::string_view to_string(PriorFamily f);
PriorFamily parse_prior_family(std::string_view text);

struct PriorSpec {
  PriorFamily family = PriorFamily::Length;
  double lambda = 1.0;  // rate of the exponential volume/action priors
  double kT = 1.0;      // temperature of the thermal priors
  double F = 0.0;       // Helmholtz free energy, canonical prior only

  void validate() const;
  bool cost_based() const {
    return family == PriorFamily::ExpVolume || family == PriorFamily::ExpAction;
  }
  friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
};

// Natural-log a-priori weight of one machine.
//   Length     -|p| ln 2
//   ExpVolume  ln(lambda) - lambda * volume
//   Boltzmann  -energy / kT
//   Canonical  (F - energy) / kT
//   ExpAction  ln(lambda) - lambda * action
// Throws std::domain_error when the result is not finite.
double log_weight(const PriorSpec& spec, const CostVector& cost, std::uint64_t program_bits);

// Normalized probabilities exp(w_i) / sum_j exp(w_j).
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

}  // namespace uind
