#pragma once

#include <optional>
#include <vector>

#include "ifr/channel.hpp"
#include "ifr/rate_vector.hpp"
#include "ifr/sfm.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

/// M transmitter/receiver pairs with cross gains: receiver i observes
/// sum_j h_ij x_j plus Gaussian noise of power N_i. Direct gains must be
/// nonzero; powers and noises strictly positive.
class InterferenceNetwork {
public:
  InterferenceNetwork(std::vector<std::vector<double>> gains, std::vector<double> powers,
                      std::vector<double> noises);

  int size() const { return m_; }
  double gain(int rx, int tx) const;
  double power(int tx) const;
  double noise(int rx) const;

  /// h_rx,tx^2 * P_tx / N_rx: received power of tx at rx in standard form.
  double effective_power(int rx, int tx) const;

  /// Standard-form single-receiver view at rx, intended user rx.
  GaussianReceiverView receiver_view(int rx) const;

  /// Transmitters with nonzero gain into rx (always includes rx).
  UserSet audible(int rx) const;

private:
  void check_receiver(int rx) const;
  int m_ = 0;
  std::vector<double> gains_;  // row-major
  std::vector<double> powers_;
  std::vector<double> noises_;
};

/// Decode set per receiver; receiver i must decode its own user.
struct Strategy {
  std::vector<UserSet> decode_sets;
};

struct ExtremePoint {
  RateVector rates;
  Strategy strategy;
  std::vector<int> ordering;
};

/// Greedily maximizes user rates in `ordering`: each user takes the largest
/// rate every receiver that hears it can still decode, given the decode sets
/// accumulated so far. Returns the rates, the final decode sets, and the
/// ordering used.
ExtremePoint successive_maximize(const InterferenceNetwork& net,
                                 const std::vector<int>& ordering,
                                 const SolveOptions& opts = {});

/// Relabeling under which the gain matrix is lower triangular (receiver i
/// hears only users at positions <= i), when one exists. order[k] is the user
/// placed at position k+1. `unique` reports whether the interference pattern
/// admits exactly one such order.
struct Relabeling {
  std::vector<int> order;
  bool unique = true;
};
std::optional<Relabeling> one_sided_relabeling(const InterferenceNetwork& net);

/// In the triangular relabeling, every column of noise-normalized squared
/// gains must be nondecreasing down the rows: later receivers hear each user
/// at least as strongly. Throws std::invalid_argument on non-one-sided nets.
bool is_strong_one_sided(const InterferenceNetwork& net);

struct MembershipResult {
  bool member = false;
  int receiver = 0;  // witness when !member
  UserSet subset;
};

/// For strong one-sided nets the capacity region is the intersection of the
/// per-receiver multiple-access regions over audible users. Returns the first
/// violated receiver/subset pair as witness.
MembershipResult strong_one_sided_membership(const InterferenceNetwork& net,
                                             const RateVector& rates, double tol = 1e-9);

/// Every receiver decodes everything it can hear.
Strategy all_decode_strategy(const InterferenceNetwork& net);

/// True when each receiver's decode set satisfies its multiple-access
/// inequalities at the given rates, non-decoded users treated as noise.
bool rates_achievable(const InterferenceNetwork& net, const RateVector& rates,
                      const Strategy& strategy, double tol = 1e-9);

}  // namespace ifr
