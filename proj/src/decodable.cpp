#include "ifr/decodable.hpp"

#include <stdexcept>
#include <vector>

#include "ifr/set_function.hpp"

namespace ifr {

UserSet max_decodable_subset(const ReceiverView& view, UserSet context,
                             const RateVector& rates, const SolveOptions& opts) {
  if (context.ground_size() != ground_size(view) || rates.size() != ground_size(view))
    throw std::invalid_argument("max_decodable_subset: dimension mismatch");

  UserSet s = context;
  while (!s.empty()) {
    const SfmResult r = minimize(decode_gap_oracle(view, s, rates), opts);
    if (r.minimal_minimizer.empty()) break;
    s = s - r.minimal_minimizer;
  }
  return s;
}

bool is_fully_nondecodable(const ReceiverView& view, UserSet context,
                           const RateVector& rates, double tol) {
  if (context.ground_size() != ground_size(view) || rates.size() != ground_size(view))
    throw std::invalid_argument("is_fully_nondecodable: dimension mismatch");
  if (context.count() > kExhaustiveGroundLimit)
    throw std::length_error("is_fully_nondecodable: context too large to scan");

  bool all_above = true;
  for_each_subset(context, [&](UserSet u) {
    if (u.empty() || !all_above) return;
    if (!(rates.sum(u) > rho(view, context, u) + tol)) all_above = false;
  });
  return all_above;
}

UserSet classify_region_exhaustive(const ReceiverView& view, UserSet context,
                                   const RateVector& rates, double tol) {
  if (context.ground_size() != ground_size(view) || rates.size() != ground_size(view))
    throw std::invalid_argument("classify_region_exhaustive: dimension mismatch");
  if (context.count() > kClassifyGroundLimit)
    throw std::length_error("classify_region_exhaustive: context too large");

  std::vector<UserSet> matches;
  for_each_subset(context, [&](UserSet s) {
    bool ok = true;
    for_each_subset(s, [&](UserSet v) {
      if (v.empty() || !ok) return;
      if (!(rates.sum(v) <= sigma(view, s, v) + tol)) ok = false;
    });
    if (!ok) return;

    // Outside S nothing may be decodable once S has been subtracted.
    const ReceiverView rest = remove_users(view, s);
    const UserSet others = context - s;
    for_each_subset(others, [&](UserSet u) {
      if (u.empty() || !ok) return;
      if (!(rates.sum(u) > rho(rest, others, u) + tol)) ok = false;
    });
    if (ok) matches.push_back(s);
  });

  if (matches.size() != 1)
    throw std::logic_error("classify_region_exhaustive: expected a unique region, found " +
                           std::to_string(matches.size()));
  return matches.front();
}

}  // namespace ifr
