#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equidivide/cake_eq.hpp"
#include "equidivide/instance.hpp"

namespace equidivide {

enum class AllocPath {
  kTrivial,   // one agent or one item
  kFallback,  // round-robin into bundles of at most five items
  kPadded,    // padded cake, nonempty bundles
  kUnpadded,  // plain cake, bundles may be empty
};

const char* path_name(AllocPath path);

struct AllocOptions {
  bool require_nonempty = true;
  std::optional<double> epsilon;  // replaces 1/(8 m Lambda)
  int threads = 1;
#ifdef NDEBUG
  bool check_certificates = false;
#else
  bool check_certificates = true;
#endif
  std::uint64_t seed = 1;  // nonnegativity sampling when m > 20
};

// Quantities along the cake pipeline, recorded on every cake-based run.
struct AllocCertificates {
  double cake_gap = 0.0;        // gap of the solved (padded or plain) cake
  double cake_bound = 0.0;      // epsilon
  double unpadded_gap = 0.0;    // gap of the plain cake on the same division
  double unpadded_bound = 0.0;  // 2 Lambda + 1 when padded, epsilon otherwise
  double min_length = 0.0;
  double length_bound = 0.0;    // 0 when no length guarantee applies
};

struct AllocResult {
  Allocation allocation;
  double lambda = 1.0;  // clamped to >= 1
  double epsilon = 0.0;
  double bound = 0.0;
  AllocPath path = AllocPath::kTrivial;
  bool certified = true;  // false when an epsilon override voids the guarantee
  std::optional<CakeDivision> division;
  std::optional<AllocCertificates> certificates;
  std::vector<std::string> warnings;
};

// Item allocation with pairwise value gap at most 5 Lambda + 1 and nonempty
// bundles, or 3 Lambda + 1 with require_nonempty off. Valuations must be
// nonnegative.
AllocResult alloc_apx_eq(const Instance& inst, const AllocOptions& options = {});

// One shared subadditive valuation with v(all items) >= 0; values may be
// negative. Nonempty bundles with gap at most 5 Lambda + 1.
AllocResult alloc_apx_eq_identical(const SetFunction& v, int n, const AllocOptions& options = {});

// 2/m + 1/(2 lambda m^2)
double length_threshold(int m, double lambda);
bool check_interval_lengths(const CakeDivision& division, int m, double lambda);

// Item k goes to agent k mod n.
std::vector<SubsetId> round_robin(int m, int n);

}  // namespace equidivide
