#include "ifr/sfm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

namespace ifr {

namespace {

constexpr double kTieBand = 1e-12;
constexpr double kDropEps = 1e-12;

double tie_eps(double v) { return kTieBand * std::max(1.0, std::abs(v)); }

struct Extraction {
  double min_value;
  UserSet minimal;
  UserSet maximal;
};

/// Applies the near-zero convention: a minimum indistinguishable from
/// f(empty) is reported as attained at the empty set.
Extraction settle_near_zero(Extraction e, double f0, double tol, int ground) {
  if (e.min_value - f0 >= -tol) {
    e.min_value = f0;
    e.minimal = UserSet(ground);
  }
  return e;
}

}  // namespace

SfmResult minimize_exhaustive(const SetFunctionOracle& f, double tol) {
  const int ground = f.ground.ground_size();
  if (f.ground.count() > kExhaustiveGroundLimit)
    throw std::length_error("minimize_exhaustive: ground set larger than " +
                            std::to_string(kExhaustiveGroundLimit) + " users");
  const double f0 = f.evaluate(UserSet(ground));

  double best = std::numeric_limits<double>::infinity();
  for_each_subset(f.ground, [&](UserSet s) { best = std::min(best, f.evaluate(s)); });

  const double eps = tie_eps(best);
  std::uint64_t inter = f.ground.mask();
  std::uint64_t uni = 0;
  for_each_subset(f.ground, [&](UserSet s) {
    if (f.evaluate(s) <= best + eps) {
      inter &= s.mask();
      uni |= s.mask();
    }
  });

  Extraction e{best, UserSet::from_mask(ground, inter), UserSet::from_mask(ground, uni)};
  e = settle_near_zero(e, f0, tol, ground);
  return {e.min_value, e.minimal, e.maximal, SfmMethod::kExhaustive};
}

namespace {

/// Minimum-norm point of the affine hull of the corral columns.
/// Solves min ||V.lambda|| s.t. sum(lambda) = 1 via the KKT system.
void affine_minimizer(const std::vector<std::vector<double>>& corral, int n,
                      std::vector<double>& alpha, std::vector<double>& y) {
  const int k = static_cast<int>(corral.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double dot = 0.0;
      for (int c = 0; c < n; ++c) dot += corral[i][c] * corral[j][c];
      kkt(i, j) = kkt(j, i) = dot;
    }
    kkt(i, k) = kkt(k, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);

  alpha.assign(k, 0.0);
  y.assign(n, 0.0);
  for (int i = 0; i < k; ++i) {
    alpha[i] = sol(i);
    for (int c = 0; c < n; ++c) y[c] += sol(i) * corral[i][c];
  }
}

}  // namespace

SfmResult minimize_min_norm(const SetFunctionOracle& f, double tol, MinNormTrace* trace) {
  const int ground = f.ground.ground_size();
  const std::vector<int> users = f.ground.members();
  const int n = static_cast<int>(users.size());
  const UserSet empty(ground);
  const double f0 = f.evaluate(empty);

  if (n == 0) return {f0, empty, empty, SfmMethod::kMinNorm};

  // Edmonds greedy vertex for the linear order given by compact indices.
  auto greedy_vertex = [&](const std::vector<int>& order) {
    std::vector<double> q(n);
    UserSet s(ground);
    double prev = 0.0;
    for (int idx : order) {
      s = s.with(users[static_cast<std::size_t>(idx)]);
      const double cur = f.evaluate(s) - f0;
      q[static_cast<std::size_t>(idx)] = cur - prev;
      prev = cur;
    }
    return q;
  };

  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) d += a[i] * b[i];
    return d;
  };

  // Sorts compact indices by component value, index as tie-break.
  auto order_by = [&](const std::vector<double>& x) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return x[a] < x[b]; });
    return order;
  };

  // Evaluates f along the ascending-component prefix chain of x and keeps the
  // lattice extremes of the prefixes attaining the minimum. Coincides with
  // thresholding the converged min-norm point at zero.
  auto extract = [&](const std::vector<double>& x) {
    const std::vector<int> order = order_by(x);
    double vmin = f0;
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    vals[0] = f0;
    UserSet s(ground);
    for (int k = 0; k < n; ++k) {
      s = s.with(users[static_cast<std::size_t>(order[k])]);
      vals[static_cast<std::size_t>(k) + 1] = f.evaluate(s);
      vmin = std::min(vmin, vals[static_cast<std::size_t>(k) + 1]);
    }
    const double eps = tie_eps(vmin);
    int kmin = 0, kmax = 0;
    for (int k = 0; k <= n; ++k)
      if (vals[static_cast<std::size_t>(k)] <= vmin + eps) kmax = k;
    for (int k = n; k >= 0; --k)
      if (vals[static_cast<std::size_t>(k)] <= vmin + eps) kmin = k;
    UserSet minimal(ground), maximal(ground);
    for (int k = 0; k < kmax; ++k) {
      maximal = maximal.with(users[static_cast<std::size_t>(order[k])]);
      if (k < kmin) minimal = minimal.with(users[static_cast<std::size_t>(order[k])]);
    }
    return settle_near_zero({vals[static_cast<std::size_t>(kmin)], minimal, maximal},
                            f0, tol, ground);
  };

  std::vector<int> id_order(n);
  std::iota(id_order.begin(), id_order.end(), 0);
  std::vector<double> x = greedy_vertex(id_order);

  std::vector<std::vector<double>> corral{x};
  std::vector<double> lambda{1.0};

  bool settled = false;
  for (int major = 0; major < kMinNormMajorCycleLimit; ++major) {
    const double xx = dot(x, x);
    if (trace) trace->major_norms_sq.push_back(xx);
    const double scale = std::max(1.0, xx);
    const std::vector<double> q = greedy_vertex(order_by(x));
    const double xq = dot(x, q);

    if (xq > xx + 1e-9 * scale)
      throw std::invalid_argument(
          "minimize_min_norm: greedy vertex outside the base polytope; "
          "function is not submodular");
    if (xq >= xx - 1e-12 * scale) {
      settled = true;
      break;
    }

    bool duplicate = false;
    for (const auto& v : corral) {
      double diff = 0.0;
      for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(v[i] - q[i]));
      if (diff <= 1e-12) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {  // numerically stalled; current x is as good as it gets
      settled = true;
      break;
    }

    corral.push_back(q);
    lambda.push_back(0.0);

    // Minor cycles: shrink the corral until the affine minimizer is a convex
    // combination. Each pass drops at least one vertex, so this terminates.
    while (true) {
      std::vector<double> alpha, y;
      affine_minimizer(corral, n, alpha, y);
      const double amin = *std::min_element(alpha.begin(), alpha.end());
      if (amin >= -kDropEps) {
        for (double& a : alpha) a = std::max(a, 0.0);
        lambda = alpha;
        x = y;
        break;
      }
      double theta = 1.0;
      std::size_t drop = corral.size();
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (alpha[i] < 0.0 && lambda[i] - alpha[i] > 0.0) {
          const double t = lambda[i] / (lambda[i] - alpha[i]);
          if (t < theta) {
            theta = t;
            drop = i;
          }
        }
      }
      if (drop == corral.size()) {  // no blocking vertex; accept y as-is
        lambda = alpha;
        x = y;
        break;
      }
      for (std::size_t i = 0; i < corral.size(); ++i)
        lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
      lambda[drop] = 0.0;
      for (std::size_t i = corral.size(); i-- > 0;) {
        if (lambda[i] <= kDropEps) {
          corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
          lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
        }
      }
      x.assign(static_cast<std::size_t>(n), 0.0);
      for (std::size_t i = 0; i < corral.size(); ++i)
        for (int c = 0; c < n; ++c) x[static_cast<std::size_t>(c)] += lambda[i] * corral[i][c];
    }
  }

  const Extraction e = extract(x);
  SfmResult result{e.min_value, e.minimal, e.maximal, SfmMethod::kMinNorm};
  if (!settled)
    throw SfmConvergenceError("minimize_min_norm: major cycle budget exhausted", result);
  return result;
}

SfmResult minimize(const SetFunctionOracle& f, const SolveOptions& opts) {
  switch (opts.solver) {
    case Solver::kExhaustive:
      return minimize_exhaustive(f, opts.tol);
    case Solver::kMinNorm:
      return minimize_min_norm(f, opts.tol);
    case Solver::kAuto:
    default:
      if (f.ground.count() <= kAutoExhaustiveLimit)
        return minimize_exhaustive(f, opts.tol);
      return minimize_min_norm(f, opts.tol);
  }
}

}  // namespace ifr
