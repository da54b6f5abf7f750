#pragma once

#include <stdexcept>
#include <vector>

#include "ifr/set_function.hpp"
#include "ifr/user_set.hpp"

namespace ifr {

enum class SfmMethod { kExhaustive, kMinNorm };
enum class Solver { kAuto, kExhaustive, kMinNorm };

struct SolveOptions {
  Solver solver = Solver::kAuto;
  double tol = 1e-9;
};

/// Result of minimizing a submodular function. minimal/maximal minimizer are
/// the lattice extremes of the argmin family; both evaluate to min_value.
struct SfmResult {
  double min_value = 0.0;
  UserSet minimal_minimizer;
  UserSet maximal_minimizer;
  SfmMethod method = SfmMethod::kExhaustive;
};

struct SfmConvergenceError : std::runtime_error {
  SfmConvergenceError(const std::string& what, SfmResult best_so_far)
      : std::runtime_error(what), best(best_so_far) {}
  SfmResult best;
};

/// Squared norms of the candidate point after each major cycle of the
/// min-norm solver; exposed for convergence diagnostics.
struct MinNormTrace {
  std::vector<double> major_norms_sq;
};

inline constexpr int kExhaustiveGroundLimit = 24;
inline constexpr int kAutoExhaustiveLimit = 16;
inline constexpr int kMinNormMajorCycleLimit = 10000;

/// Full 2^n scan. Ties within a hair of the minimum are resolved to the
/// lattice intersection (minimal) and union (maximal) of the minimizers.
/// Ground sets above kExhaustiveGroundLimit are rejected.
SfmResult minimize_exhaustive(const SetFunctionOracle& f, double tol = 1e-9);

/// Fujishige-Wolfe minimum-norm point over the base polytope of
/// f - f(empty). Requires submodularity; a greedy vertex that ends up
/// strictly outside the polytope raises std::invalid_argument.
SfmResult minimize_min_norm(const SetFunctionOracle& f, double tol = 1e-9,
                            MinNormTrace* trace = nullptr);

/// Dispatch per options: kAuto picks the exhaustive scan for grounds of at
/// most kAutoExhaustiveLimit users and min-norm beyond.
SfmResult minimize(const SetFunctionOracle& f, const SolveOptions& opts = {});

}  // namespace ifr
