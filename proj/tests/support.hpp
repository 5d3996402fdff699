#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "equidivide/cake_model.hpp"
#include "equidivide/graph.hpp"
#include "equidivide/instance.hpp"
#include "equidivide/setfn.hpp"

namespace testing {

using namespace equidivide;

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Nonnegative table with marginals at most 1.5: |sum of signed weights| plus noise.
inline SetFunction random_nonneg_table(int m, std::mt19937_64& rng) {
  std::vector<double> w(m);
  for (double& x : w) x = uniform(rng, -1.0, 1.0);
  std::vector<double> t(std::size_t{1} << m, 0.0);
  for (std::size_t s = 1; s < t.size(); ++s) {
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      if (s >> k & 1u) sum += w[k];
    }
    t[s] = std::abs(sum) + 0.5 * uniform(rng);
  }
  return SetFunction::table(m, std::move(t));
}

// Integer-valued nonnegative table, so distinct values differ by at least 1.
inline SetFunction random_integer_table(int m, std::mt19937_64& rng, int top = 4) {
  std::vector<double> w(m);
  for (double& x : w) x = uniform_int(rng, 0, top);
  std::vector<double> t(std::size_t{1} << m, 0.0);
  for (std::size_t s = 1; s < t.size(); ++s) {
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      if (s >> k & 1u) sum += w[k];
    }
    t[s] = sum + uniform_int(rng, 0, 1);
  }
  return SetFunction::table(m, std::move(t));
}

// Weighted coverage: monotone submodular, hence subadditive on disjoint sets.
inline SetFunction random_coverage_table(int m, std::mt19937_64& rng) {
  const int universe = 6;
  std::vector<double> weight(universe);
  for (double& x : weight) x = uniform(rng);
  std::vector<std::uint32_t> covers(m);
  for (auto& c : covers) c = static_cast<std::uint32_t>(uniform_int(rng, 0, (1 << universe) - 1));
  std::vector<double> t(std::size_t{1} << m, 0.0);
  for (std::size_t s = 1; s < t.size(); ++s) {
    std::uint32_t u = 0;
    for (int k = 0; k < m; ++k) {
      if (s >> k & 1u) u |= covers[k];
    }
    for (int e = 0; e < universe; ++e) {
      if (u >> e & 1u) t[s] += weight[e];
    }
  }
  return SetFunction::table(m, std::move(t));
}

inline CakeValuation random_density(std::mt19937_64& rng, double max_density, int pieces = 0) {
  if (pieces <= 0) pieces = uniform_int(rng, 1, 5);
  std::vector<double> cuts;
  for (int k = 1; k < pieces; ++k) cuts.push_back(uniform(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> breaks{0.0};
  breaks.insert(breaks.end(), cuts.begin(), cuts.end());
  breaks.push_back(1.0);
  std::vector<double> dens(pieces);
  for (double& d : dens) d = uniform(rng, 0.0, max_density);
  return CakeValuation::density(std::move(breaks), std::move(dens));
}

inline std::shared_ptr<const Graph> petersen() {
  std::vector<std::pair<int, int>> e;
  for (int k = 0; k < 5; ++k) {
    e.emplace_back(k, (k + 1) % 5);
    e.emplace_back(5 + k, 5 + (k + 2) % 5);
    e.emplace_back(k, 5 + k);
  }
  return std::make_shared<const Graph>(10, std::move(e));
}

inline std::shared_ptr<const Graph> cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int k = 0; k < n; ++k) e.emplace_back(k, (k + 1) % n);
  return std::make_shared<const Graph>(n, std::move(e));
}

// Independent evaluator: exhaustive expectation over all subsets.
inline double expectation_oracle(const SetFunction& f, const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  double total = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    double p = 1.0;
    for (int k = 0; k < m; ++k) p *= (s >> k & 1u) ? x[k] : 1.0 - x[k];
    if (p != 0.0) total += p * f.eval(SubsetId(s));
  }
  return total;
}

// Coverage fractions by direct overlap with each item's cell.
inline std::vector<double> overlap_oracle(int m, double lo, double hi) {
  std::vector<double> b(m);
  for (int k = 0; k < m; ++k) {
    const double a = std::max(lo, static_cast<double>(k) / m);
    const double c = std::min(hi, static_cast<double>(k + 1) / m);
    b[k] = std::max(0.0, c - a) * m;
  }
  return b;
}

inline double pairwise_gap(const std::vector<double>& v) {
  double g = 0.0;
  for (double a : v) {
    for (double b : v) g = std::max(g, a - b);
  }
  return g;
}

}  // namespace testing
