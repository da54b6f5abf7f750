#pragma once

#include <vector>

#include "ifr/channel.hpp"
#include "ifr/decodable.hpp"
#include "ifr/rate_vector.hpp"
#include "ifr/sfm.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

/// How the receiver treats each interferer when the intended user runs at the
/// maximum rate: `subtracted` decoded first and removed, `joint` decoded
/// together with the intended user, `noise` never decoded. The three sets
/// partition the interferers.
struct DecodeDecomposition {
  UserSet noise;
  UserSet joint;
  UserSet subtracted;
  int intended = 0;
  double rate = 0.0;
};

/// Minimum over U inside `decodable` of
///   I(X_user, X_U; Y | X_{decodable \ U}) - R(U),
/// clamped at zero. The minimal minimizer is the joint-decode set.
struct JointRate {
  double rate = 0.0;
  UserSet joint;
};
JointRate min_joint_rate(const ReceiverView& view, UserSet decodable,
                         const RateVector& rates, int user,
                         const SolveOptions& opts = {});

/// Maximum rate of the view's intended user given fixed interferer rates.
/// rates must span the full ground; the intended user's entry is ignored.
DecodeDecomposition achievable_rate(const ReceiverView& view, const RateVector& rates,
                                    const SolveOptions& opts = {});

/// Treat-all-as-noise floor and interference-free ceiling for the intended
/// user of a Gaussian view.
struct RateBounds {
  double lower = 0.0;
  double upper = 0.0;
};
RateBounds rate_bounds(const GaussianReceiverView& view);

struct GridRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

struct SurfacePoint {
  std::vector<double> interferer_rates;
  double rate = 0.0;
  UserSet decodable;  // S = joint + subtracted
  UserSet joint;      // U
};

/// Rate surface sampled over a rectangular grid of interferer rates. Points
/// are stored row-major with the last interferer's axis fastest. An affine
/// piece is identified by the (decodable, joint) pair.
struct RateSurface {
  std::vector<int> interferers;
  std::vector<SurfacePoint> points;
  int piece_count() const;
};

RateSurface sample_rate_surface(const ReceiverView& view,
                                const std::vector<GridRange>& grid,
                                const SolveOptions& opts = {}, int threads = 0);

}  // namespace ifr
