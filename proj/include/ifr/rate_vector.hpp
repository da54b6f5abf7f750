#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ifr/user_set.hpp"

namespace ifr {

/// Per-user code rates in bits per channel use, indexed by user (1-based).
/// Rates are validated nonnegative at construction.
class RateVector {
public:
  RateVector() = default;

  explicit RateVector(std::vector<double> rates) : rates_(std::move(rates)) {
    for (double r : rates_)
      if (!(r >= 0.0))
        throw std::invalid_argument("RateVector: rates must be nonnegative");
  }

  static RateVector zeros(int m) { return RateVector(std::vector<double>(m, 0.0)); }

  int size() const { return static_cast<int>(rates_.size()); }

  double at(int user) const {
    if (user < 1 || user > size())
      throw std::invalid_argument("RateVector: user index out of range");
    return rates_[static_cast<std::size_t>(user - 1)];
  }

  /// R(U): sum of member rates, accumulated in ascending user order.
  double sum(UserSet u) const {
    double total = 0.0;
    for (std::uint64_t m = u.mask(); m; m &= m - 1)
      total += rates_[static_cast<std::size_t>(std::countr_zero(m))];
    return total;
  }

  RateVector with(int user, double rate) const {
    RateVector out = *this;
    if (user < 1 || user > size())
      throw std::invalid_argument("RateVector: user index out of range");
    if (!(rate >= 0.0))
      throw std::invalid_argument("RateVector: rates must be nonnegative");
    out.rates_[static_cast<std::size_t>(user - 1)] = rate;
    return out;
  }

  const std::vector<double>& values() const { return rates_; }

private:
  std::vector<double> rates_;
};

}  // namespace ifr
