#include "ifr/achievable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ifr/set_function.hpp"

namespace ifr {

JointRate min_joint_rate(const ReceiverView& view, UserSet decodable,
                         const RateVector& rates, int user, const SolveOptions& opts) {
  const int m = ground_size(view);
  if (decodable.ground_size() != m || rates.size() != m)
    throw std::invalid_argument("min_joint_rate: dimension mismatch");
  if (user < 1 || user > m || decodable.contains(user))
    throw std::invalid_argument("min_joint_rate: user must lie outside the decodable set");

  const UserSet ctx = decodable.with(user);
  SetFunctionOracle oracle{decodable, [&, ctx](UserSet u) {
                             return sigma(view, ctx, u.with(user)) - rates.sum(u);
                           }};
  const SfmResult r = minimize(oracle, opts);
  return {std::max(0.0, r.min_value), r.minimal_minimizer};
}

DecodeDecomposition achievable_rate(const ReceiverView& view, const RateVector& rates,
                                    const SolveOptions& opts) {
  const int m = ground_size(view);
  const std::optional<int> t = intended_user(view);
  if (!t) throw std::invalid_argument("achievable_rate: view has no intended user");
  if (rates.size() != m)
    throw std::invalid_argument("achievable_rate: rate vector size mismatch");

  const UserSet interferers = UserSet::all(m).without(*t);
  const ReceiverView own_removed = remove_users(view, UserSet(m).with(*t));
  const UserSet s = max_decodable_subset(own_removed, interferers, rates, opts);
  const JointRate jr = min_joint_rate(view, s, rates, *t, opts);

  DecodeDecomposition d;
  d.noise = interferers - s;
  d.joint = jr.joint;
  d.subtracted = s - jr.joint;
  d.intended = *t;
  d.rate = jr.rate;
  return d;
}

RateBounds rate_bounds(const GaussianReceiverView& view) {
  if (!view.intended_user)
    throw std::invalid_argument("rate_bounds: view has no intended user");
  const int t = *view.intended_user;
  const double own = view.effective_powers[static_cast<std::size_t>(t - 1)];
  const double rest = view.power(view.ground().without(t));
  return {gaussian_capacity(own / (1.0 + rest)), gaussian_capacity(own)};
}

int RateSurface::piece_count() const {
  std::set<std::pair<std::uint64_t, std::uint64_t>> ids;
  for (const SurfacePoint& p : points) ids.emplace(p.decodable.mask(), p.joint.mask());
  return static_cast<int>(ids.size());
}

namespace {

std::vector<double> axis_points(const GridRange& r) {
  if (!(r.step > 0.0) || !(r.stop >= r.start))
    throw std::invalid_argument("sample_rate_surface: empty or inverted grid range");
  const double fuzz = 1e-12 * std::max({1.0, std::abs(r.start), std::abs(r.stop)});
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double v = r.start + k * r.step;
    if (v > r.stop + fuzz) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace

RateSurface sample_rate_surface(const ReceiverView& view,
                                const std::vector<GridRange>& grid,
                                const SolveOptions& opts, int threads) {
  const int m = ground_size(view);
  const std::optional<int> t = intended_user(view);
  if (!t) throw std::invalid_argument("sample_rate_surface: view has no intended user");

  RateSurface surface;
  surface.interferers = UserSet::all(m).without(*t).members();
  const std::size_t axes = surface.interferers.size();
  if (grid.size() != axes)
    throw std::invalid_argument("sample_rate_surface: need one grid range per interferer");

  std::vector<std::vector<double>> axis(axes);
  std::size_t total = axes == 0 ? 0 : 1;
  for (std::size_t a = 0; a < axes; ++a) {
    axis[a] = axis_points(grid[a]);
    total *= axis[a].size();
    if (total > (std::size_t{1} << 22))
      throw std::invalid_argument("sample_rate_surface: grid too large");
  }
  if (total == 0) throw std::invalid_argument("sample_rate_surface: empty grid");

  surface.points.resize(total);

  auto fill = [&](std::size_t begin, std::size_t end) {
    std::vector<double> rates(static_cast<std::size_t>(m), 0.0);
    std::vector<double> coords(axes);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rem = idx;
      for (std::size_t a = axes; a-- > 0;) {
        coords[a] = axis[a][rem % axis[a].size()];
        rem /= axis[a].size();
      }
      for (std::size_t a = 0; a < axes; ++a)
        rates[static_cast<std::size_t>(surface.interferers[a] - 1)] = coords[a];
      const DecodeDecomposition d = achievable_rate(view, RateVector(rates), opts);
      surface.points[idx] = {coords, d.rate, d.joint | d.subtracted, d.joint};
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));

  if (workers == 1) {
    fill(0, total);
    return surface;
  }

  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  const std::size_t chunk = (total + workers - 1) / static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fill(begin, end);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return surface;
}

}  // namespace ifr
