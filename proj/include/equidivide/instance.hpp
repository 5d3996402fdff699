#pragma once

#include <vector>

#include "equidivide/setfn.hpp"

namespace equidivide {

// n agents with valuations over the same m items.
struct Instance {
  int m = 0;
  std::vector<SetFunction> valuations;
  bool identical = false;  // every agent uses valuations[0]

  static Instance make(std::vector<SetFunction> valuations);
  static Instance make_identical(const SetFunction& v, int n);

  int agents() const { return static_cast<int>(valuations.size()); }
  const SetFunction& valuation(int agent) const { return valuations[agent]; }
  // Max marginal bound over agents (not clamped).
  double marginal_bound() const;
};

// Bundles A_0..A_{n-1} partitioning the items, with values[i] = v_i(A_i).
struct Allocation {
  std::vector<SubsetId> bundles;
  std::vector<double> values;

  static Allocation make(const Instance& inst, std::vector<SubsetId> bundles);

  int agents() const { return static_cast<int>(bundles.size()); }
  bool all_nonempty() const;
  double gap() const;  // max_i values[i] - min_j values[j]
};

// Pairwise disjoint and covering {0..m-1}.
bool is_partition(const std::vector<SubsetId>& bundles, int m);

}  // namespace equidivide
