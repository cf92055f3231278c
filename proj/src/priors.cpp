#include "uind/priors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uind/logsum.hpp"

namespace uind {

std::string_view to_string(PriorFamily f) {
  switch (f) {
    case PriorFamily::Length: return "Length";
    case PriorFamily::ExpVolume: return "ExpVolume";
    case PriorFamily::Boltzmann: return "Boltzmann";
    case PriorFamily::Canonical: return "Canonical";
    case PriorFamily::ExpAction: return "ExpAction";
  }
  return "?";
}

PriorFamily parse_prior_family(std::string_view text) {
  for (auto f : {PriorFamily::Length, PriorFamily::ExpVolume, PriorFamily::Boltzmann,
                 PriorFamily::Canonical, PriorFamily::ExpAction}) {
    if (text == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown prior family: " + std::string(text));
}

void PriorSpec::validate() const {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be > 0");
  if (!(kT > 0) || !std::isfinite(kT)) throw std::invalid_argument("kT must be > 0");
  if (!std::isfinite(F)) throw std::invalid_argument("F must be finite");
}

double log_weight(const PriorSpec& spec, const CostVector& cost, std::uint64_t program_bits) {
  double w = 0;
  switch (spec.family) {
    case PriorFamily::Length:
      w = -static_cast<double>(program_bits) * std::numbers::ln2;
      break;
    case PriorFamily::ExpVolume:
      w = std::log(spec.lambda) - spec.lambda * cost.volume;
      break;
    case PriorFamily::Boltzmann:
      w = -cost.energy / spec.kT;
      break;
    case PriorFamily::Canonical:
      w = (spec.F - cost.energy) / spec.kT;
      break;
    case PriorFamily::ExpAction:
      w = std::log(spec.lambda) - spec.lambda * cost.action;
      break;
  }
  if (!std::isfinite(w)) throw std::domain_error("prior weight is not finite; check parameters");
  return w;
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  LogSumExp total;
  for (double w : log_weights) total.add(w);
  const double z = total.log_value();
  std::vector<double> p;
  p.reserve(log_weights.size());
  for (double w : log_weights) p.push_back(z == kNegInf ? 0.0 : std::exp(w - z));
  return p;
}

}  // namespace uind
