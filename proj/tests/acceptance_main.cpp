// Acceptance gate: ten end-to-end checks, one verdict line each. Exits
// nonzero when any of them fails. Oracles here are written from scratch so
// they cannot share bugs with the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "ifr/achievable.hpp"
#include "ifr/capacity.hpp"
#include "ifr/channel.hpp"
#include "ifr/decodable.hpp"
#include "ifr/gic.hpp"
#include "ifr/rate_vector.hpp"
#include "ifr/sfm.hpp"
#include "ifr/user_set.hpp"
#include "test_util.hpp"

using namespace ifr;
using testutil::Rng;
using testutil::gamma_ref;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

template <typename F>
void criterion(int idx, const char* name, F&& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  if (!out.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%s)\n", out.pass ? "PASS" : "FAIL", idx, name,
              out.detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// 1. Two-user region atlas against the closed-form partition.

Outcome atlas() {
  const auto t0 = Clock::now();
  const double tol = 1e-9;
  const double g1 = gamma_ref(1.0), gh = gamma_ref(0.5), g2 = gamma_ref(2.0);
  ReceiverView view{GaussianReceiverView({1.0, 1.0})};
  const UserSet ground = UserSet::all(2);
  const UserSet both = ground, only1 = UserSet::of(2, {1}), only2 = UserSet::of(2, {2}),
                none = UserSet(2);

  const int n = 200;
  const double step = 1.2 / (n - 1);
  int checked = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r1 = i * step, r2 = j * step;
      const bool c12 = r1 <= g1 + tol && r2 <= g1 + tol && r1 + r2 <= g2 + tol;
      const bool c1 = r1 <= gh + tol && r2 > g1 + tol;
      const bool c2 = r2 <= gh + tol && r1 > g1 + tol;
      const bool c0 = r1 > gh + tol && r2 > gh + tol && r1 + r2 > g2 + tol;
      if (c12 + c1 + c2 + c0 != 1)
        return {false, fmt("closed form ambiguous at (%g, %g)", r1, r2)};
      const UserSet want = c12 ? both : (c1 ? only1 : (c2 ? only2 : none));

      RateVector rates({r1, r2});
      if (classify_region_exhaustive(view, ground, rates, tol) != want)
        return {false, fmt("classifier disagrees at (%g, %g)", r1, r2)};
      if (max_decodable_subset(view, ground, rates) != want)
        return {false, fmt("strip search disagrees at (%g, %g)", r1, r2)};
      ++checked;
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 10.0) return {false, fmt("too slow: %.2fs", dt)};
  return {true, fmt("%d points, %.2fs", checked, dt)};
}

// ---------------------------------------------------------------------------
// 2. Exhaustive scan and min-norm solver agree on random decode gaps.

Outcome solver_equivalence() {
  const auto t0 = Clock::now();
  Rng rng(20240001);
  double worst = 0.0;
  int total = 0;
  for (int m = 2; m <= 10; ++m) {
    for (int trial = 0; trial < 1000; ++trial) {
      auto f = decode_gap_oracle(ReceiverView{GaussianReceiverView(rng.powers(m))},
                                 UserSet::all(m), RateVector(rng.rates(m)));
      auto ex = minimize(f, SolveOptions{Solver::kExhaustive});
      auto mn = minimize(f, SolveOptions{Solver::kMinNorm});
      worst = std::max(worst, std::fabs(ex.min_value - mn.min_value));
      if (std::fabs(ex.min_value - mn.min_value) > 1e-9)
        return {false, fmt("m=%d trial=%d value gap %.3g", m, trial,
                           ex.min_value - mn.min_value)};
      if (ex.minimal_minimizer != mn.minimal_minimizer)
        return {false, fmt("m=%d trial=%d minimizers differ: %s vs %s", m, trial,
                           ex.minimal_minimizer.str().c_str(),
                           mn.minimal_minimizer.str().c_str())};
      ++total;
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 120.0) return {false, fmt("too slow: %.2fs", dt)};
  return {true, fmt("%d instances, worst value gap %.2e, %.2fs", total, worst, dt)};
}

// ---------------------------------------------------------------------------
// 3. Strip construction equals the reference classifier on random inputs.

Outcome strip_vs_classifier() {
  Rng rng(20240002);
  int total = 0;
  for (int m = 2; m <= 8; ++m) {
    for (int trial = 0; trial < 500; ++trial) {
      ReceiverView v{GaussianReceiverView(rng.powers(m))};
      RateVector rates(rng.rates(m));
      UserSet ground = UserSet::all(m);
      if (max_decodable_subset(v, ground, rates) !=
          classify_region_exhaustive(v, ground, rates))
        return {false, fmt("mismatch at m=%d trial=%d", m, trial)};
      ++total;
    }
  }
  return {true, fmt("%d instances", total)};
}

// ---------------------------------------------------------------------------
// 4. Binary adder rate equals the hinge formula exactly.

Outcome adder_hinge() {
  Rng rng(20240003);
  int total = 0;
  double worst = 0.0;
  for (int m = 2; m <= 8; ++m) {
    for (int trial = 0; trial < 1000; ++trial) {
      // Interferer sum spread across the hinge: scale a random simplex point.
      const double target = rng.uniform(0.0, 1.4);
      std::vector<double> w(static_cast<std::size_t>(m), 0.0);
      double wsum = 0.0;
      for (int i = 1; i < m; ++i) {
        w[static_cast<std::size_t>(i)] = -std::log(rng.uniform(1e-12, 1.0));
        wsum += w[static_cast<std::size_t>(i)];
      }
      std::vector<double> rates(static_cast<std::size_t>(m), 0.0);
      for (int i = 1; i < m; ++i)
        rates[static_cast<std::size_t>(i)] = target * w[static_cast<std::size_t>(i)] / wsum;

      double interferer_sum = 0.0;
      for (int i = 1; i < m; ++i) interferer_sum += rates[static_cast<std::size_t>(i)];
      const double want = std::max(0.0, 1.0 - interferer_sum);

      auto d = achievable_rate(ReceiverView{BinaryAdderView(m, 1)}, RateVector(rates));
      worst = std::max(worst, std::fabs(d.rate - want));
      if (std::fabs(d.rate - want) > 1e-12)
        return {false, fmt("m=%d trial=%d got %.17g want %.17g", m, trial, d.rate, want)};
      ++total;
    }
  }
  return {true, fmt("%d instances, worst gap %.2e", total, worst)};
}

// ---------------------------------------------------------------------------
// 5. Piece census and continuity of the sampled rate surface.

Outcome piece_census() {
  ReceiverView view{GaussianReceiverView({1.0, 2.0, 4.0}, 1)};
  const double step = 0.01;
  GridRange r{0.0, 1.6, step};
  auto surf = sample_rate_surface(view, {r, r});
  const std::size_t n = 161;
  if (surf.points.size() != n * n)
    return {false, fmt("expected %zu points, got %zu", n * n, surf.points.size())};

  const int pieces = surf.piece_count();
  if (pieces > 9) return {false, fmt("%d pieces, budget is 9", pieces)};
  if (pieces != 9) return {false, fmt("expected all 9 pieces on this channel, got %d", pieces)};

  double max_jump = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) {
      max_jump = std::max(max_jump, std::fabs(surf.points[i * n + j + 1].rate -
                                              surf.points[i * n + j].rate));
      max_jump = std::max(max_jump, std::fabs(surf.points[(j + 1) * n + i].rate -
                                              surf.points[j * n + i].rate));
    }
  if (max_jump > 1.5 * step)
    return {false, fmt("continuity broken: max neighbor jump %.4g", max_jump)};
  return {true, fmt("9 pieces, max neighbor jump %.4g", max_jump)};
}

// ---------------------------------------------------------------------------
// 6. Noise ladder: tightness, monotonicity and exhaustive strictness.

Outcome ladder_conditions() {
  Rng rng(20240006);
  int total = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = rng.uniform_int(1, 5);
    const auto powers = rng.powers(m, 0.2, 5.0);
    const RateVector rates(rng.rates(m, 0.05, 1.2));
    const UserSet members = UserSet::all(m);

    BroadcastLadder lad;
    try {
      lad = build_ladder(powers, rates, members);
    } catch (const std::exception& e) {
      return {false, fmt("trial=%d build failed: %s", trial, e.what())};
    }

    auto power_of = [&](UserSet s) {
      double p = 0.0;
      for (int u : s.members()) p += powers[static_cast<std::size_t>(u - 1)];
      return p;
    };

    UserSet placed = lad.preplaced;
    double below = lad.preplaced_power;
    double prev = 0.0;
    for (const auto& level : lad.levels) {
      if (!(level.noise > prev))
        return {false, fmt("trial=%d noise not increasing", trial)};
      const double pw = power_of(level.users);
      const double lhs = rates.sum(level.users);
      const double rhs = gamma_ref(pw / (level.noise + below));
      if (std::fabs(lhs - rhs) > 1e-9 * std::max(1.0, std::fabs(lhs)))
        return {false, fmt("trial=%d level not tight: %.12g vs %.12g", trial, lhs, rhs)};

      bool ok = true;
      for_each_subset(level.users, [&](UserSet t) {
        if (t.empty()) return;
        if (rates.sum(t) >
            gamma_ref(power_of(t) / (level.noise + below)) + 1e-9)
          ok = false;
      });
      if (!ok) return {false, fmt("trial=%d subset overshoots its level", trial)};

      const UserSet upper = members - placed - level.users;
      for_each_subset(upper, [&](UserSet t) {
        if (t.empty()) return;
        if (!(rates.sum(t) <
              gamma_ref(power_of(t) / (level.noise + below + pw))))
          ok = false;
      });
      if (!ok) return {false, fmt("trial=%d upper user not strictly peelable", trial)};

      placed = placed | level.users;
      below += pw;
      prev = level.noise;
    }
    if (placed != members) return {false, fmt("trial=%d users left unplaced", trial)};
    ++total;
  }
  return {true, fmt("%d ladders", total)};
}

// ---------------------------------------------------------------------------
// 7. Capacity certificates across mixed interference profiles.

Outcome certificates() {
  Rng rng(20240007);
  int noise_seen = 0, joint_seen = 0, subtracted_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = rng.uniform_int(2, 5);
    GaussianReceiverView view(rng.powers(m), 1);
    std::vector<double> rates(static_cast<std::size_t>(m), 0.0);
    for (int i = 1; i < m; ++i) {
      const double scale = gamma_ref(view.effective_powers[static_cast<std::size_t>(i)]);
      switch (rng.uniform_int(0, 2)) {
        case 0: rates[static_cast<std::size_t>(i)] = rng.uniform(0.0, 0.4) * scale; break;
        case 1: rates[static_cast<std::size_t>(i)] = rng.uniform(0.6, 0.95) * scale; break;
        default: rates[static_cast<std::size_t>(i)] = rng.uniform(1.05, 2.0) * scale; break;
      }
    }
    const auto cert = verify_capacity(view, RateVector(rates));
    if (!cert.pass) {
      for (const auto& c : cert.checks)
        if (!c.pass)
          return {false, fmt("trial=%d check %s: lhs=%.12g rhs=%.12g", trial,
                             c.id.c_str(), c.lhs, c.rhs)};
      return {false, fmt("trial=%d failed without a failing check", trial)};
    }
    noise_seen += !cert.decomposition.noise.empty();
    joint_seen += !cert.decomposition.joint.empty();
    subtracted_seen += !cert.decomposition.subtracted.empty();
  }
  if (noise_seen < 25 || joint_seen < 25 || subtracted_seen < 25)
    return {false, fmt("roles undersampled: noise=%d joint=%d subtracted=%d", noise_seen,
                       joint_seen, subtracted_seen)};
  return {true, fmt("500 certificates, roles noise=%d joint=%d subtracted=%d", noise_seen,
                    joint_seen, subtracted_seen)};
}

// ---------------------------------------------------------------------------
// 8. Symmetric pair with strong cross links lands on the equal-rate corner.

Outcome symmetric_pair() {
  InterferenceNetwork net({{1, 2}, {2, 1}}, {1, 1}, {1, 1});
  for (auto order : {std::vector<int>{1, 2}, std::vector<int>{2, 1}}) {
    const auto p = successive_maximize(net, order);
    if (std::fabs(p.rates.at(1) - 0.5) > 1e-9 || std::fabs(p.rates.at(2) - 0.5) > 1e-9)
      return {false, fmt("rates (%.12g, %.12g)", p.rates.at(1), p.rates.at(2))};
  }
  // The second user's single-user constraint at its own receiver is tight.
  const auto p = successive_maximize(net, {1, 2});
  const auto view = net.receiver_view(2);
  const double slack =
      sigma(ReceiverView{view}, UserSet::all(2), UserSet::of(2, {2})) - p.rates.at(2);
  if (!(std::fabs(slack) < 1e-9)) return {false, fmt("binding slack %.3g", slack)};
  return {true, fmt("both orders at (0.500000000, 0.500000000), slack %.1e", slack)};
}

// ---------------------------------------------------------------------------
// 9. Strong one-sided membership equals all-decode achievability.

InterferenceNetwork random_strong_one_sided(Rng& rng, int m) {
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<double> noises(static_cast<std::size_t>(m));
  for (auto& n : noises) n = rng.log_uniform(0.5, 2.0);
  std::vector<std::vector<double>> gains(
      static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (int c = 0; c < m; ++c) {
    double level = rng.log_uniform(0.05, 5.0);
    for (int r = c; r < m; ++r) {
      if (r > c) level *= 1.0 + rng.uniform(0.01, 1.0);
      const int rx = order[static_cast<std::size_t>(r)];
      const int tx = order[static_cast<std::size_t>(c)];
      const double h = std::sqrt(level * noises[static_cast<std::size_t>(rx - 1)]);
      gains[static_cast<std::size_t>(rx - 1)][static_cast<std::size_t>(tx - 1)] =
          rng.coin() ? h : -h;
    }
  }
  return InterferenceNetwork(gains, rng.powers(m, 0.2, 5.0), noises);
}

Outcome membership_equivalence() {
  Rng rng(20240009);
  int members = 0, outsiders = 0;
  for (int net_trial = 0; net_trial < 200; ++net_trial) {
    const int m = rng.uniform_int(2, 4);
    const auto net = random_strong_one_sided(rng, m);
    if (!is_strong_one_sided(net))
      return {false, fmt("generator produced a non-strong network at %d", net_trial)};
    const auto all = all_decode_strategy(net);
    for (int k = 0; k < 100; ++k) {
      std::vector<double> r(static_cast<std::size_t>(m));
      for (int i = 1; i <= m; ++i)
        r[static_cast<std::size_t>(i - 1)] =
            rng.uniform(0.3, 1.3) * gamma_ref(net.effective_power(i, i));
      const RateVector rates(r);
      const bool inside = strong_one_sided_membership(net, rates).member;
      const bool achievable = rates_achievable(net, rates, all);
      if (inside != achievable)
        return {false, fmt("net=%d draw=%d member=%d achievable=%d", net_trial, k,
                           inside, achievable)};
      inside ? ++members : ++outsiders;
    }
  }
  if (members == 0 || outsiders == 0)
    return {false, fmt("one-sided sampling: members=%d outsiders=%d", members, outsiders)};
  return {true, fmt("20000 draws, members=%d outsiders=%d", members, outsiders)};
}

// ---------------------------------------------------------------------------
// 10. No single rate of a successively maximized point can be raised under
// any decode-set strategy. This is guaranteed for two-user networks (the
// first user sits at its interference-free ceiling, which pins the foreign
// receiver) and for one-sided networks with growing cross links under their
// triangular ordering; it does not hold for arbitrary networks, where a
// binding foreign receiver with slack of its own can drop the user to noise.
// The sweep covers the two guaranteed families.

Outcome no_single_improvement() {
  Rng rng(20240010);
  auto bump_escape = [](const InterferenceNetwork& net, const ExtremePoint& p) {
    const int m = net.size();
    const int combos = 1 << (m * (m - 1));
    for (int user = 1; user <= m; ++user) {
      const RateVector bumped = p.rates.with(user, p.rates.at(user) + 1e-6);
      for (int code = 0; code < combos; ++code) {
        Strategy strat;
        int shift = 0;
        for (int rx = 1; rx <= m; ++rx) {
          UserSet d = UserSet::of(m, {rx});
          for (int tx = 1; tx <= m; ++tx) {
            if (tx == rx) continue;
            if ((code >> shift) & 1) d = d.with(tx);
            ++shift;
          }
          strat.decode_sets.push_back(d);
        }
        if (rates_achievable(net, bumped, strat)) return user;
      }
    }
    return 0;
  };

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> gains(2, std::vector<double>(2));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        if (r == c)
          gains[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
              rng.log_uniform(0.5, 2.0);
        else
          gains[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
              rng.coin(0.3) ? 0.0 : rng.uniform(0.1, 1.5) * (rng.coin() ? 1.0 : -1.0);
      }
    InterferenceNetwork net(gains, rng.powers(2, 0.2, 5.0), rng.powers(2, 0.5, 2.0));
    std::vector<int> order{1, 2};
    std::shuffle(order.begin(), order.end(), rng.engine());
    const auto p = successive_maximize(net, order);
    if (!rates_achievable(net, p.rates, p.strategy))
      return {false, fmt("pair trial=%d base point not achievable", trial)};
    if (int who = bump_escape(net, p))
      return {false, fmt("pair trial=%d user=%d improved", trial, who)};
  }

  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_strong_one_sided(rng, 3);
    const auto rel = one_sided_relabeling(net);
    if (!rel) return {false, fmt("triangular trial=%d lost its ordering", trial)};
    const auto p = successive_maximize(net, rel->order);
    if (!rates_achievable(net, p.rates, p.strategy))
      return {false, fmt("triangular trial=%d base point not achievable", trial)};
    if (int who = bump_escape(net, p))
      return {false, fmt("triangular trial=%d user=%d improved", trial, who)};
  }
  return {true, "100 networks (50 pairs, 50 triangular), all single-rate bumps rejected"};
}

}  // namespace

int main() {
  criterion(1, "two-user region atlas matches the closed form", atlas);
  criterion(2, "subset solvers agree on random instances", solver_equivalence);
  criterion(3, "strip search equals the reference classifier", strip_vs_classifier);
  criterion(4, "binary adder rate equals the hinge formula", adder_hinge);
  criterion(5, "rate surface piece census and continuity", piece_census);
  criterion(6, "noise ladder conditions hold", ladder_conditions);
  criterion(7, "capacity certificates all pass", certificates);
  criterion(8, "symmetric strong pair reaches the corner point", symmetric_pair);
  criterion(9, "membership equals all-decode achievability", membership_equivalence);
  criterion(10, "successive points admit no single-rate bump", no_single_improvement);

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
