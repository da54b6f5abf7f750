#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ifr/rate_vector.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

/// 0.5 * log2(1 + snr). Throws std::domain_error for snr < 0.
double gaussian_capacity(double snr);

/// Inverse of gaussian_capacity: 2^(2*rate) - 1.
double gaussian_capacity_inverse(double rate);

/// One Gaussian receiver in standard form: unit noise, effective_powers[i-1]
/// is the received power of user i. A removed user has power zero.
struct GaussianReceiverView {
  std::vector<double> effective_powers;
  std::optional<int> intended_user;

  explicit GaussianReceiverView(std::vector<double> powers,
                                std::optional<int> intended = std::nullopt);

  int ground_size() const { return static_cast<int>(effective_powers.size()); }
  UserSet ground() const { return UserSet::all(ground_size()); }
  double power(UserSet u) const;
};

/// Noiseless binary adder: the receiver sees the XOR of the active users'
/// uniform binary inputs. `active` tracks which users still contribute.
struct BinaryAdderView {
  UserSet active;
  std::optional<int> intended_user;

  explicit BinaryAdderView(int ground_size, std::optional<int> intended = std::nullopt);

  int ground_size() const { return active.ground_size(); }
  UserSet ground() const { return UserSet::all(ground_size()); }
};

using ReceiverView = std::variant<GaussianReceiverView, BinaryAdderView>;

int ground_size(const ReceiverView& view);
std::optional<int> intended_user(const ReceiverView& view);

/// Copy of the view with `removed` users' signals subtracted out entirely
/// (decoded users): they are neither signal nor noise afterwards.
ReceiverView remove_users(const ReceiverView& view, UserSet removed);

/// sigma(V) = I(X_V; Y | X_{context \ V}) with users outside `context`
/// treated as noise. Requires V subset of context. Submodular and
/// nondecreasing in V for fixed context.
double sigma(const GaussianReceiverView& view, UserSet context, UserSet v);
double sigma(const BinaryAdderView& view, UserSet context, UserSet v);
double sigma(const ReceiverView& view, UserSet context, UserSet v);

/// rho(U) = I(X_U; Y) with users of context\U still transmitting (noise) and
/// users outside context as noise. Requires U subset of context. Supermodular
/// and nondecreasing in U.
double rho(const GaussianReceiverView& view, UserSet context, UserSet u);
double rho(const BinaryAdderView& view, UserSet context, UserSet u);
double rho(const ReceiverView& view, UserSet context, UserSet u);

/// decode_gap(V) = sigma(V) - R(V). A strictly negative minimum over V
/// certifies that some group inside the context is not jointly decodable.
double decode_gap(const ReceiverView& view, UserSet context, const RateVector& rates,
                  UserSet v);

}  // namespace ifr
