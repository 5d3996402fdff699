#include "equidivide/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "equidivide/errors.hpp"
#include "equidivide/parallel.hpp"

namespace equidivide {

namespace {

std::uint64_t assignment_count(int m, int n) {
  std::uint64_t total = 1;
  for (int k = 0; k < m; ++k) {
    total *= static_cast<std::uint64_t>(n);
    if (total > kMaxAssignments) throw PreconditionError("n^m exceeds the enumeration limit");
  }
  return total;
}

// Bundles of the assignment with index t; item 0 is the most significant digit.
void decode(std::uint64_t t, int m, int n, std::vector<SubsetId>& bundles) {
  std::fill(bundles.begin(), bundles.end(), SubsetId());
  for (int k = m - 1; k >= 0; --k) {
    bundles[t % n] = bundles[t % n].with(k);
    t /= n;
  }
}

bool any_empty(const std::vector<SubsetId>& bundles) {
  return std::any_of(bundles.begin(), bundles.end(), [](SubsetId b) { return b.is_empty(); });
}

double gap_of(const Instance& inst, const std::vector<SubsetId>& bundles) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < inst.agents(); ++i) {
    double v = inst.valuation(i).eval(bundles[i]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

// Contiguous ranges of assignment indices handed to workers.
std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks(std::uint64_t total, int threads) {
  const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 4 * std::max(threads, 1)));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 0; p < parts; ++p) out.emplace_back(total * p / parts, total * (p + 1) / parts);
  return out;
}

}  // namespace

BruteResult brute_min_inequity(const Instance& inst, bool require_nonempty, int threads) {
  const int m = inst.m;
  const int n = inst.agents();
  const std::uint64_t total = assignment_count(m, n);
  if (require_nonempty && n > m) throw PreconditionError("more agents than items");
  auto ranges = chunks(total, threads);
  std::vector<std::pair<double, std::uint64_t>> best(ranges.size(), {std::numeric_limits<double>::infinity(), 0});
  parallel_for(0, ranges.size(), threads, [&](std::size_t c) {
    std::vector<SubsetId> bundles(n);
    for (std::uint64_t t = ranges[c].first; t < ranges[c].second; ++t) {
      decode(t, m, n, bundles);
      if (require_nonempty && any_empty(bundles)) continue;
      double g = gap_of(inst, bundles);
      if (g < best[c].first) best[c] = {g, t};
    }
  });
  auto winner = best.front();
  for (const auto& b : best) {
    if (b.first < winner.first) winner = b;  // chunks are in index order, so ties keep the earlier one
  }
  std::vector<SubsetId> bundles(n);
  decode(winner.second, m, n, bundles);
  return BruteResult{Allocation::make(inst, std::move(bundles)), winner.first};
}

std::uint64_t count_nearly_equitable(const Instance& inst, double bound, int threads) {
  const int m = inst.m;
  const int n = inst.agents();
  const std::uint64_t total = assignment_count(m, n);
  auto ranges = chunks(total, threads);
  std::vector<std::uint64_t> counts(ranges.size(), 0);
  parallel_for(0, ranges.size(), threads, [&](std::size_t c) {
    std::vector<SubsetId> bundles(n);
    for (std::uint64_t t = ranges[c].first; t < ranges[c].second; ++t) {
      decode(t, m, n, bundles);
      if (any_empty(bundles)) continue;
      if (gap_of(inst, bundles) <= bound) ++counts[c];
    }
  });
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

double counting_lower_bound(int m, int n) {
  if (n < 1 || m < n) return 0.0;
  double binom = 1.0;
  for (int k = 1; k <= n; ++k) binom = binom * (m - n + k) / k;
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return std::max(binom / (m - n + 1), factorial);
}

std::optional<CakeDivision> brute_interval_select(const IntervalFamilySet& families) {
  const int n = families.agents();
  double combos = 1.0;
  for (int i = 0; i < n; ++i) {
    if (families.family(i).empty()) return std::nullopt;
    combos *= static_cast<double>(families.family(i).size());
  }
  if (combos > static_cast<double>(kMaxCombinations)) throw PreconditionError("too many interval combinations");
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    bool ok = families.family(0)[pick[0]].lo == 0 && families.family(n - 1)[pick[n - 1]].hi == families.den();
    for (int i = 0; ok && i + 1 < n; ++i) ok = families.family(i)[pick[i]].hi == families.family(i + 1)[pick[i + 1]].lo;
    if (ok) {
      std::vector<std::int64_t> cuts{0};
      for (int i = 0; i < n; ++i) cuts.push_back(families.family(i)[pick[i]].hi);
      return CakeDivision(families.den(), std::move(cuts));
    }
    int i = n - 1;
    while (i >= 0 && ++pick[i] == families.family(i).size()) pick[i--] = 0;
    if (i < 0) return std::nullopt;
  }
}

}  // namespace equidivide
