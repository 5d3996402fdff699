#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "equidivide/cake_model.hpp"

namespace equidivide {

// One candidate family per agent, all on the grid with denominator den.
// Duplicates are removed when added.
class IntervalFamilySet {
 public:
  IntervalFamilySet(int agents, std::int64_t den);

  void add(int agent, std::int64_t lo, std::int64_t hi);
  int agents() const { return static_cast<int>(families_.size()); }
  std::int64_t den() const { return den_; }
  const std::vector<GridInterval>& family(int agent) const { return families_[agent]; }

 private:
  std::int64_t den_;
  std::vector<std::vector<GridInterval>> families_;
};

// Ordered exact partition with piece i taken from family i, or nothing.
// Among several, the smallest left endpoint is chosen at every step of the
// right-to-left reconstruction.
std::optional<CakeDivision> interval_select(const IntervalFamilySet& families);

namespace detail {

// Reachability DP over grid point indices 0..points-1, generic over how
// memberships are answered. Families must provide
//   std::size_t probe(int agent, std::size_t a, std::size_t b)
//     0 when [a,b] is in the agent's family, otherwise a number s >= 1
//     such that no b' in (b, b+s) is a member for this agent and a;
//   std::vector<std::size_t> prefix_members(int agent)   // b with [0,b] a member
//   std::vector<std::size_t> suffix_members(int agent)   // a with [a,last] a member
// both ascending. Returns the n+1 cut indices.
template <typename Families>
std::optional<std::vector<std::size_t>> select_ordered(std::size_t points, int n, Families& fam) {
  if (n <= 0 || points == 0) return std::nullopt;
  const std::size_t last = points - 1;
  std::vector<std::size_t> targets = fam.suffix_members(n - 1);
  if (targets.empty()) return std::nullopt;
  if (n == 1) {
    if (targets.front() != 0) return std::nullopt;
    return std::vector<std::size_t>{0, last};
  }

  // reach[i]: ascending indices q such that [0, q] splits among agents 0..i-1.
  std::vector<std::vector<std::size_t>> reach(n);
  reach[1] = fam.prefix_members(0);
  std::vector<char> marked(n > 2 ? points : 0);
  for (int i = 2; i < n; ++i) {
    if (reach[i - 1].empty()) return std::nullopt;
    auto& next = reach[i];
    for (std::size_t p : reach[i - 1]) {
      std::size_t q = p;
      while (q < points) {
        if (marked[q]) {
          ++q;
          continue;
        }
        std::size_t s = fam.probe(i - 1, p, q);
        if (s == 0) {
          marked[q] = 1;
          next.push_back(q);
          ++q;
        } else {
          q += s;
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (std::size_t q : next) marked[q] = 0;
  }
  if (reach[n - 1].empty()) return std::nullopt;

  // Smallest p in reach[i] with p <= q and [p, q] in agent i's family.
  auto smallest_start = [&](int i, std::size_t q) -> std::optional<std::size_t> {
    const auto& r = reach[i];
    auto it = r.begin();
    while (it != r.end() && *it <= q) {
      if (fam.probe(i, *it, q) == 0) return *it;
      ++it;
    }
    return std::nullopt;
  };

  std::vector<std::size_t> cuts(n + 1);
  cuts[0] = 0;
  cuts[n] = last;
  // Both lists are sorted; the first common element is the smallest start
  // for the last agent.
  auto a = reach[n - 1].begin();
  auto b = targets.begin();
  bool found = false;
  while (a != reach[n - 1].end() && b != targets.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      cuts[n - 1] = *a;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;
  for (int i = n - 2; i >= 1; --i) {
    auto p = smallest_start(i, cuts[i + 1]);
    if (!p) return std::nullopt;  // unreachable: cuts[i+1] is in reach[i+1]
    cuts[i] = *p;
  }
  return cuts;
}

}  // namespace detail
}  // namespace equidivide
