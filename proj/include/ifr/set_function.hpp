#pragma once

#include <functional>
#include <utility>

#include "ifr/channel.hpp"
#include "ifr/rate_vector.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

/// Black-box set function over subsets of `ground`. evaluate must be pure;
/// same subset, same value.
struct SetFunctionOracle {
  UserSet ground;
  std::function<double(UserSet)> evaluate;
};

/// Oracle for decode_gap over subsets of `context` (the per-iteration
/// objective of the decodable-subset search).
inline SetFunctionOracle decode_gap_oracle(ReceiverView view, UserSet context,
                                           RateVector rates) {
  return SetFunctionOracle{
      context, [view = std::move(view), context, rates = std::move(rates)](UserSet v) {
        return decode_gap(view, context, rates, v);
      }};
}

}  // namespace ifr
