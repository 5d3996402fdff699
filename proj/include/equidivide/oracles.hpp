#pragma once

#include <cstdint>
#include <optional>

#include "equidivide/cake_model.hpp"
#include "equidivide/instance.hpp"
#include "equidivide/interval_select.hpp"

namespace equidivide {

inline constexpr std::uint64_t kMaxAssignments = 10'000'000;
inline constexpr std::uint64_t kMaxCombinations = 1'000'000;

struct BruteResult {
  Allocation allocation;
  double gap = 0.0;
};

// Minimum pairwise gap over all n^m assignments (first minimizer in
// lexicographic order of the assignment strings, item 1 most significant).
BruteResult brute_min_inequity(const Instance& inst, bool require_nonempty, int threads = 1);

// Assignments with every bundle nonempty and max gap <= bound.
std::uint64_t count_nearly_equitable(const Instance& inst, double bound, int threads = 1);

// max{C(m,n)/(m-n+1), n!}
double counting_lower_bound(int m, int n);

// Tries every combination of one interval per family.
std::optional<CakeDivision> brute_interval_select(const IntervalFamilySet& families);

}  // namespace equidivide
