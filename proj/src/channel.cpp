#include "ifr/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifr {

double gaussian_capacity(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("gaussian_capacity: negative snr");
  return 0.5 * std::log1p(snr) / std::numbers::ln2;
}

double gaussian_capacity_inverse(double rate) {
  if (!(rate >= 0.0)) throw std::domain_error("gaussian_capacity_inverse: negative rate");
  return std::expm1(2.0 * rate * std::numbers::ln2);
}

GaussianReceiverView::GaussianReceiverView(std::vector<double> powers,
                                           std::optional<int> intended)
    : effective_powers(std::move(powers)), intended_user(intended) {
  if (ground_size() > UserSet::kMaxGround)
    throw std::invalid_argument("GaussianReceiverView: too many users");
  for (double p : effective_powers)
    if (!(p >= 0.0))
      throw std::invalid_argument("GaussianReceiverView: powers must be nonnegative");
  if (intended_user && (*intended_user < 1 || *intended_user > ground_size()))
    throw std::invalid_argument("GaussianReceiverView: intended user out of range");
}

double GaussianReceiverView::power(UserSet u) const {
  double total = 0.0;
  for (std::uint64_t m = u.mask(); m; m &= m - 1)
    total += effective_powers[static_cast<std::size_t>(std::countr_zero(m))];
  return total;
}

BinaryAdderView::BinaryAdderView(int ground_size, std::optional<int> intended)
    : active(UserSet::all(ground_size)), intended_user(intended) {
  if (intended_user && (*intended_user < 1 || *intended_user > ground_size))
    throw std::invalid_argument("BinaryAdderView: intended user out of range");
}

int ground_size(const ReceiverView& view) {
  return std::visit([](const auto& v) { return v.ground_size(); }, view);
}

std::optional<int> intended_user(const ReceiverView& view) {
  return std::visit([](const auto& v) { return v.intended_user; }, view);
}

ReceiverView remove_users(const ReceiverView& view, UserSet removed) {
  if (removed.ground_size() != ground_size(view))
    throw std::invalid_argument("remove_users: ground mismatch");
  ReceiverView out = view;
  if (auto* g = std::get_if<GaussianReceiverView>(&out)) {
    for (int u : removed.members())
      g->effective_powers[static_cast<std::size_t>(u - 1)] = 0.0;
  } else {
    auto& a = std::get<BinaryAdderView>(out);
    a.active = a.active - removed;
  }
  return out;
}

namespace {

void check_context(int ground, UserSet context, UserSet v, const char* fn) {
  if (context.ground_size() != ground || v.ground_size() != ground)
    throw std::invalid_argument(std::string(fn) + ": ground mismatch");
  if (!v.subset_of(context))
    throw std::invalid_argument(std::string(fn) + ": set must lie inside the context");
}

}  // namespace

double sigma(const GaussianReceiverView& view, UserSet context, UserSet v) {
  check_context(view.ground_size(), context, v, "sigma");
  const double noise = 1.0 + view.power(view.ground() - context);
  return gaussian_capacity(view.power(v) / noise);
}

double sigma(const BinaryAdderView& view, UserSet context, UserSet v) {
  check_context(view.ground_size(), context, v, "sigma");
  // Any active user left as noise flips the sum uniformly at random, wiping
  // out all information; otherwise one clean bit is carried per use.
  if ((v & view.active).empty()) return 0.0;
  const UserSet noise = view.active - context;
  return noise.empty() ? 1.0 : 0.0;
}

double sigma(const ReceiverView& view, UserSet context, UserSet v) {
  return std::visit([&](const auto& w) { return sigma(w, context, v); }, view);
}

double rho(const GaussianReceiverView& view, UserSet context, UserSet u) {
  check_context(view.ground_size(), context, u, "rho");
  const double noise =
      1.0 + view.power(context - u) + view.power(view.ground() - context);
  return gaussian_capacity(view.power(u) / noise);
}

double rho(const BinaryAdderView& view, UserSet context, UserSet u) {
  check_context(view.ground_size(), context, u, "rho");
  if ((u & view.active).empty()) return 0.0;
  const UserSet others = view.active - u;
  return others.empty() ? 1.0 : 0.0;
}

double rho(const ReceiverView& view, UserSet context, UserSet u) {
  return std::visit([&](const auto& w) { return rho(w, context, u); }, view);
}

double decode_gap(const ReceiverView& view, UserSet context, const RateVector& rates,
                  UserSet v) {
  if (rates.size() != ground_size(view))
    throw std::invalid_argument("decode_gap: rate vector size mismatch");
  if (v.empty()) return 0.0;
  return sigma(view, context, v) - rates.sum(v);
}

}  // namespace ifr
