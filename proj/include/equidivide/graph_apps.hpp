#pragma once

#include <memory>
#include <vector>

#include "equidivide/alloc_eq.hpp"
#include "equidivide/graph.hpp"

namespace equidivide {

struct GraphPartition {
  std::vector<SubsetId> parts;
  std::vector<double> values;
  double gap = 0.0;
  double bound = 0.0;
  bool nonempty = true;
  AllocPath path = AllocPath::kTrivial;
};

// k nonempty parts whose cut values differ pairwise by at most 5 Delta + 1
// (Delta clamped to >= 1).
GraphPartition equitable_cut_partition(std::shared_ptr<const Graph> g, int k, const AllocOptions& options = {});

struct DensityPartition {
  GraphPartition nonempty;       // bound 6, every part nonempty
  GraphPartition empty_allowed;  // bound 4, parts may be empty
};

// Partitions by density |E(S)|/|S| under both pipeline variants.
DensityPartition density_partition(std::shared_ptr<const Graph> g, int k, const AllocOptions& options = {});

}  // namespace equidivide
