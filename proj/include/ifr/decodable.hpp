#pragma once

#include "ifr/channel.hpp"
#include "ifr/rate_vector.hpp"
#include "ifr/sfm.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

/// Largest S inside `context` whose members are jointly decodable at their
/// rates, everything else treated as noise. Iteratively strips the minimal
/// minimizer of the decode gap until it is empty.
UserSet max_decodable_subset(const ReceiverView& view, UserSet context,
                             const RateVector& rates, const SolveOptions& opts = {});

/// True when no nonempty group inside `context` is decodable even jointly,
/// i.e. R(U) strictly exceeds rho(U) for every nonempty U.
bool is_fully_nondecodable(const ReceiverView& view, UserSet context,
                           const RateVector& rates, double tol = 1e-9);

/// Reference classifier: scans every candidate decodable set and returns the
/// unique one whose two inequality families hold. Points on a region boundary
/// land in the more-decodable region. Intended for small contexts.
UserSet classify_region_exhaustive(const ReceiverView& view, UserSet context,
                                   const RateVector& rates, double tol = 1e-9);

inline constexpr int kClassifyGroundLimit = 12;

}  // namespace ifr
