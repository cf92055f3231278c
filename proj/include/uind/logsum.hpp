#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace uind {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sum of exp(w_i) kept as exp(max) * (sum + compensation), with Neumaier
// compensation on the scaled terms.  Handles weights far below the double
// range.
class LogSumExp {
 public:
  void add(double log_weight) {
    if (log_weight == kNegInf) return;
    ++count_;
    rebase(log_weight);
    accumulate(std::exp(log_weight - max_));
  }

  void merge(const LogSumExp& other) {
    if (other.count_ == 0) return;
    count_ += other.count_;
    rebase(other.max_);
    const double scale = std::exp(other.max_ - max_);
    accumulate(other.sum_ * scale);
    accumulate(other.comp_ * scale);
  }

  double log_value() const {
    if (count_ == 0) return kNegInf;
    return max_ + std::log(sum_ + comp_);
  }
  std::uint64_t count() const { return count_; }

 private:
  void rebase(double log_weight) {
    if (log_weight <= max_) return;
    if (max_ != kNegInf) {
      const double scale = std::exp(max_ - log_weight);
      sum_ *= scale;
      comp_ *= scale;
    }
    max_ = log_weight;
  }

  void accumulate(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term))
      comp_ += (sum_ - t) + term;
    else
      comp_ += (term - t) + sum_;
    sum_ = t;
  }

  double max_ = kNegInf;
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::uint64_t count_ = 0;
};

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace uind
