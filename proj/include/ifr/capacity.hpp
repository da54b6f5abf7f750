#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ifr/achievable.hpp"
#include "ifr/channel.hpp"
#include "ifr/rate_vector.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

/// One degradation level of the companion broadcast channel: the users placed
/// there and the noise power at which their rate sum is exactly tight.
struct LadderLevel {
  double noise = 0.0;
  UserSet users;
};

/// Degraded-broadcast placement of a set of codebooks. Levels carry strictly
/// increasing noise. Users with rate zero cannot anchor an equality level and
/// are folded in below level 1; their power counts as decoded everywhere.
struct BroadcastLadder {
  std::vector<LadderLevel> levels;
  UserSet preplaced;
  double preplaced_power = 0.0;
};

struct LadderInfeasibleError : std::runtime_error {
  LadderInfeasibleError(const std::string& what, UserSet binding_subset)
      : std::runtime_error(what), binding(binding_subset) {}
  UserSet binding;
};

inline constexpr int kLadderGroundLimit = 20;

/// Builds the ladder for the `members` users. powers are per-user received
/// powers (index = user - 1), strictly positive on members. The per-level
/// noise search scans all nonempty subsets of the remaining users, so the
/// member count is capped at kLadderGroundLimit.
BroadcastLadder build_ladder(const std::vector<double>& powers, const RateVector& rates,
                             UserSet members, double tol = 1e-9);

enum class CheckKind { kLessEqual, kStrictLess, kEqual };

struct ConstraintCheck {
  std::string id;
  CheckKind kind = CheckKind::kLessEqual;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double slack() const { return rhs - lhs; }
};

/// Machine-checkable converse certificate: the achievable decomposition's
/// noise set is laddered, the intended user joins the top level at unit
/// noise, and every ladder inequality is re-validated numerically.
struct CapacityCertificate {
  bool pass = false;
  DecodeDecomposition decomposition;
  BroadcastLadder ladder;
  std::vector<ConstraintCheck> checks;
};

CapacityCertificate verify_capacity(const GaussianReceiverView& view,
                                    const RateVector& rates,
                                    const SolveOptions& opts = {});

}  // namespace ifr
