#include "ifr/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ifr {

namespace {

double subset_power(const std::vector<double>& powers, UserSet u) {
  double total = 0.0;
  for (std::uint64_t m = u.mask(); m; m &= m - 1)
    total += powers[static_cast<std::size_t>(std::countr_zero(m))];
  return total;
}

}  // namespace

BroadcastLadder build_ladder(const std::vector<double>& powers, const RateVector& rates,
                             UserSet members, double tol) {
  const int m = members.ground_size();
  if (static_cast<int>(powers.size()) != m || rates.size() != m)
    throw std::invalid_argument("build_ladder: dimension mismatch");
  if (members.count() > kLadderGroundLimit)
    throw std::length_error("build_ladder: too many users");
  for (int u : members.members())
    if (!(powers[static_cast<std::size_t>(u - 1)] > 0.0))
      throw std::invalid_argument("build_ladder: member powers must be positive");

  BroadcastLadder ladder;
  ladder.preplaced = UserSet(m);
  UserSet remaining = members;
  for (int u : members.members())
    if (rates.at(u) == 0.0) ladder.preplaced = ladder.preplaced.with(u);
  remaining = remaining - ladder.preplaced;
  ladder.preplaced_power = subset_power(powers, ladder.preplaced);

  double decoded = ladder.preplaced_power;
  double prev_noise = 0.0;
  while (!remaining.empty()) {
    double best = std::numeric_limits<double>::infinity();
    for_each_subset(remaining, [&](UserSet t) {
      if (t.empty()) return;
      const double n =
          subset_power(powers, t) / gaussian_capacity_inverse(rates.sum(t)) - decoded;
      best = std::min(best, n);
    });

    const double eps = tol * std::max(1.0, std::abs(best));
    UserSet binding(m);
    for_each_subset(remaining, [&](UserSet t) {
      if (t.empty()) return;
      const double n =
          subset_power(powers, t) / gaussian_capacity_inverse(rates.sum(t)) - decoded;
      if (n <= best + eps) binding = binding | t;
    });

    if (!(best > 0.0))
      throw LadderInfeasibleError(
          "build_ladder: nonpositive noise level " + std::to_string(best) +
              " bound by " + binding.str() + "; rates infeasible at any noise",
          binding);
    if (!(best > prev_noise))
      throw std::logic_error("build_ladder: noise levels failed to increase");

    ladder.levels.push_back({best, binding});
    decoded += subset_power(powers, binding);
    remaining = remaining - binding;
    prev_noise = best;
  }
  return ladder;
}

namespace {

double check_scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

ConstraintCheck make_check(std::string id, CheckKind kind, double lhs, double rhs,
                           double tol) {
  ConstraintCheck c{std::move(id), kind, lhs, rhs, false};
  const double eps = tol * check_scale(lhs, rhs);
  switch (kind) {
    case CheckKind::kEqual:
      c.pass = std::abs(lhs - rhs) <= eps;
      break;
    case CheckKind::kLessEqual:
    case CheckKind::kStrictLess:
      c.pass = lhs <= rhs + eps;
      break;
  }
  return c;
}

}  // namespace

CapacityCertificate verify_capacity(const GaussianReceiverView& view,
                                    const RateVector& rates, const SolveOptions& opts) {
  if (!view.intended_user)
    throw std::invalid_argument("verify_capacity: view has no intended user");
  const int m = view.ground_size();
  const int t = *view.intended_user;

  CapacityCertificate cert;
  cert.decomposition = achievable_rate(ReceiverView(view), rates, opts);
  cert.ladder = build_ladder(view.effective_powers, rates, cert.decomposition.noise,
                             opts.tol);

  // The certificate carries the full witness channel: the intended user and
  // its joint set enter on top of the base ladder at unit noise.
  const std::size_t base_count = cert.ladder.levels.size();
  cert.ladder.levels.push_back({1.0, cert.decomposition.joint.with(t)});
  const std::vector<LadderLevel>& levels = cert.ladder.levels;

  auto rate_of = [&](UserSet u) {
    double total = u.contains(t) ? cert.decomposition.rate : 0.0;
    return total + rates.sum(u.without(t));
  };
  const double tol = opts.tol;

  if (base_count > 0)
    cert.checks.push_back(make_check("noise.ceiling", CheckKind::kStrictLess,
                                     levels[base_count - 1].noise, 1.0, tol));

  double below = cert.ladder.preplaced_power;
  double prev_noise = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string tag = "level" + std::to_string(i + 1);
    const LadderLevel& lv = levels[i];

    cert.checks.push_back(
        make_check("order." + tag, CheckKind::kStrictLess, prev_noise, lv.noise, tol));

    const double lv_power = view.power(lv.users);
    cert.checks.push_back(make_check(
        "tight." + tag, CheckKind::kEqual, rate_of(lv.users),
        gaussian_capacity(lv_power / (lv.noise + below)), tol));

    for_each_subset(lv.users, [&](UserSet sub) {
      if (sub.empty()) return;
      cert.checks.push_back(make_check(
          "within." + tag + "." + sub.str(), CheckKind::kLessEqual, rate_of(sub),
          gaussian_capacity(view.power(sub) / (lv.noise + below)), tol));
    });

    UserSet upper(m);
    for (std::size_t j = i + 1; j < levels.size(); ++j) upper = upper | levels[j].users;
    if (!upper.empty()) {
      const double shielded = below + lv_power;
      for_each_subset(upper, [&](UserSet sub) {
        if (sub.empty()) return;
        cert.checks.push_back(make_check(
            "above." + tag + "." + sub.str(), CheckKind::kStrictLess, rate_of(sub),
            gaussian_capacity(view.power(sub) / (lv.noise + shielded)), tol));
      });
    }

    below += lv_power;
    prev_noise = lv.noise;
  }

  cert.pass = std::all_of(cert.checks.begin(), cert.checks.end(),
                          [](const ConstraintCheck& c) { return c.pass; });
  return cert;
}

}  // namespace ifr
