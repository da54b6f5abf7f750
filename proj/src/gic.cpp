#include "ifr/gic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ifr/achievable.hpp"
#include "ifr/decodable.hpp"

namespace ifr {

InterferenceNetwork::InterferenceNetwork(std::vector<std::vector<double>> gains,
                                         std::vector<double> powers, std::vector<double> noises)
    : m_(static_cast<int>(powers.size())), powers_(std::move(powers)), noises_(std::move(noises)) {
  if (m_ < 1 || m_ > UserSet::kMaxGround)
    throw std::invalid_argument("InterferenceNetwork: unsupported user count");
  if (gains.size() != static_cast<size_t>(m_) || noises_.size() != static_cast<size_t>(m_))
    throw std::invalid_argument("InterferenceNetwork: dimension mismatch");
  gains_.reserve(static_cast<size_t>(m_) * m_);
  for (int i = 0; i < m_; ++i) {
    if (gains[i].size() != static_cast<size_t>(m_))
      throw std::invalid_argument("InterferenceNetwork: gain matrix must be square");
    gains_.insert(gains_.end(), gains[i].begin(), gains[i].end());
  }
  for (int i = 0; i < m_; ++i) {
    if (!(powers_[i] > 0.0)) throw std::invalid_argument("InterferenceNetwork: powers must be positive");
    if (!(noises_[i] > 0.0)) throw std::invalid_argument("InterferenceNetwork: noises must be positive");
    if (gains_[static_cast<size_t>(i) * m_ + i] == 0.0)
      throw std::invalid_argument("InterferenceNetwork: direct gains must be nonzero");
  }
}

void InterferenceNetwork::check_receiver(int rx) const {
  if (rx < 1 || rx > m_) throw std::out_of_range("InterferenceNetwork: index out of range");
}

double InterferenceNetwork::gain(int rx, int tx) const {
  check_receiver(rx);
  check_receiver(tx);
  return gains_[static_cast<size_t>(rx - 1) * m_ + (tx - 1)];
}

double InterferenceNetwork::power(int tx) const {
  check_receiver(tx);
  return powers_[tx - 1];
}

double InterferenceNetwork::noise(int rx) const {
  check_receiver(rx);
  return noises_[rx - 1];
}

double InterferenceNetwork::effective_power(int rx, int tx) const {
  const double h = gain(rx, tx);
  return h * h * powers_[tx - 1] / noises_[rx - 1];
}

GaussianReceiverView InterferenceNetwork::receiver_view(int rx) const {
  check_receiver(rx);
  std::vector<double> eff(static_cast<size_t>(m_));
  for (int tx = 1; tx <= m_; ++tx) eff[tx - 1] = effective_power(rx, tx);
  return GaussianReceiverView{std::move(eff), rx};
}

UserSet InterferenceNetwork::audible(int rx) const {
  check_receiver(rx);
  UserSet out = UserSet::of(m_, {});
  for (int tx = 1; tx <= m_; ++tx)
    if (gain(rx, tx) != 0.0) out = out.with(tx);
  return out;
}

namespace {

void check_ordering(const InterferenceNetwork& net, const std::vector<int>& ordering) {
  const int m = net.size();
  if (ordering.size() != static_cast<size_t>(m))
    throw std::invalid_argument("ordering must list every user exactly once");
  std::vector<bool> seen(static_cast<size_t>(m), false);
  for (int u : ordering) {
    if (u < 1 || u > m || seen[u - 1])
      throw std::invalid_argument("ordering must list every user exactly once");
    seen[u - 1] = true;
  }
}

}  // namespace

ExtremePoint successive_maximize(const InterferenceNetwork& net, const std::vector<int>& ordering,
                                 const SolveOptions& opts) {
  check_ordering(net, ordering);
  const int m = net.size();
  const UserSet ground = UserSet::all(m);

  RateVector rates = RateVector::zeros(m);
  std::vector<UserSet> decode(static_cast<size_t>(m), UserSet::of(m, {}));
  std::vector<GaussianReceiverView> views;
  views.reserve(static_cast<size_t>(m));
  for (int rx = 1; rx <= m; ++rx) views.push_back(net.receiver_view(rx));

  UserSet placed = UserSet::of(m, {});
  for (size_t k = 0; k < ordering.size(); ++k) {
    const int user = ordering[k];
    const UserSet pending = ground - placed;  // includes `user`

    // The user's own receiver first locks in what it can decode of the
    // earlier users, with the user itself still silent.
    decode[user - 1] =
        max_decodable_subset(remove_users(views[user - 1], pending), placed, rates, opts)
            .with(user);

    // Largest rate every receiver that hears this user can still absorb.
    const UserSet later = pending.without(user);
    double best = std::numeric_limits<double>::infinity();
    for (int rx = 1; rx <= m; ++rx) {
      if (!placed.contains(rx) && rx != user) continue;
      if (net.gain(rx, user) == 0.0) continue;
      const UserSet committed = decode[rx - 1].without(user);
      const JointRate jr =
          min_joint_rate(remove_users(views[rx - 1], later), committed, rates, user, opts);
      best = std::min(best, jr.rate);
    }
    rates = rates.with(user, best);

    for (int rx = 1; rx <= m; ++rx) {
      if (!placed.contains(rx)) continue;
      if (net.gain(rx, user) != 0.0) decode[rx - 1] = decode[rx - 1].with(user);
    }
    placed = placed.with(user);
  }

  return ExtremePoint{std::move(rates), Strategy{std::move(decode)}, ordering};
}

std::optional<Relabeling> one_sided_relabeling(const InterferenceNetwork& net) {
  const int m = net.size();
  // Receiver i hearing user j forces j to an earlier position, so a
  // triangular order is a topological order of those constraints.
  std::vector<int> indegree(static_cast<size_t>(m), 0);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      if (i != j && net.gain(i, j) != 0.0) ++indegree[i - 1];

  Relabeling out;
  out.order.reserve(static_cast<size_t>(m));
  std::vector<bool> done(static_cast<size_t>(m), false);
  for (int step = 0; step < m; ++step) {
    int pick = 0, candidates = 0;
    for (int v = 1; v <= m; ++v) {
      if (done[v - 1] || indegree[v - 1] != 0) continue;
      if (++candidates == 1) pick = v;
    }
    if (candidates == 0) return std::nullopt;
    if (candidates > 1) out.unique = false;
    done[pick - 1] = true;
    out.order.push_back(pick);
    for (int i = 1; i <= m; ++i)
      if (!done[i - 1] && net.gain(i, pick) != 0.0) --indegree[i - 1];
  }
  return out;
}

bool is_strong_one_sided(const InterferenceNetwork& net) {
  const auto labels = one_sided_relabeling(net);
  if (!labels) throw std::invalid_argument("network interference is not one-sided");
  const auto& order = labels->order;
  const int m = net.size();
  // Down each column, every later receiver must hear the user at least as
  // strongly as the user's own receiver, after noise normalization.
  for (int c = 0; c < m; ++c) {
    const int tx = order[c];
    double prev = 0.0;
    for (int r = c; r < m; ++r) {
      const int rx = order[r];
      const double h = net.gain(rx, tx);
      const double level = h * h / net.noise(rx);
      if (r > c && level < prev) return false;
      prev = level;
    }
  }
  return true;
}

MembershipResult strong_one_sided_membership(const InterferenceNetwork& net,
                                             const RateVector& rates, double tol) {
  if (!is_strong_one_sided(net))
    throw std::invalid_argument("membership test requires strong one-sided interference");
  if (rates.size() != net.size()) throw std::invalid_argument("rate vector size mismatch");
  const int m = net.size();
  for (int rx = 1; rx <= m; ++rx) {
    const UserSet heard = net.audible(rx);
    if (heard.count() > kExhaustiveGroundLimit)
      throw std::length_error("membership test: audible set too large");
    const GaussianReceiverView view = net.receiver_view(rx);
    MembershipResult bad;
    bool ok = true;
    for_each_subset(heard, [&](UserSet t) {
      if (!ok || t.empty()) return;
      if (rates.sum(t) > gaussian_capacity(view.power(t)) + tol) {
        ok = false;
        bad = MembershipResult{false, rx, t};
      }
    });
    if (!ok) return bad;
  }
  return MembershipResult{true, 0, UserSet::of(m, {})};
}

Strategy all_decode_strategy(const InterferenceNetwork& net) {
  Strategy s;
  s.decode_sets.reserve(static_cast<size_t>(net.size()));
  for (int rx = 1; rx <= net.size(); ++rx) s.decode_sets.push_back(net.audible(rx));
  return s;
}

bool rates_achievable(const InterferenceNetwork& net, const RateVector& rates,
                      const Strategy& strategy, double tol) {
  const int m = net.size();
  if (rates.size() != m || strategy.decode_sets.size() != static_cast<size_t>(m))
    throw std::invalid_argument("rates_achievable: size mismatch");
  for (int rx = 1; rx <= m; ++rx) {
    const UserSet d = strategy.decode_sets[rx - 1];
    if (!d.contains(rx)) throw std::invalid_argument("each receiver must decode its own user");
    if (d.count() > kExhaustiveGroundLimit)
      throw std::length_error("rates_achievable: decode set too large");
    const GaussianReceiverView view = net.receiver_view(rx);
    bool ok = true;
    for_each_subset(d, [&](UserSet t) {
      if (!ok || t.empty()) return;
      if (rates.sum(t) > sigma(view, d, t) + tol) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace ifr
