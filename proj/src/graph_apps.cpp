#include "equidivide/graph_apps.hpp"

#include <algorithm>

#include "equidivide/errors.hpp"

namespace equidivide {

namespace {

// Re-checks a result from scratch with the given value function.
template <typename Value>
GraphPartition verify(const Graph& g, const AllocResult& r, Value value, bool require_nonempty) {
  GraphPartition p;
  p.parts = r.allocation.bundles;
  p.bound = r.bound;
  p.path = r.path;
  if (!is_partition(p.parts, g.vertex_count())) throw GuaranteeError("parts do not partition the vertices");
  for (SubsetId s : p.parts) p.values.push_back(value(g, s));
  auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
  p.gap = *hi - *lo;
  p.nonempty = std::none_of(p.parts.begin(), p.parts.end(), [](SubsetId s) { return s.is_empty(); });
  if (require_nonempty && !p.nonempty) throw GuaranteeError("a part is empty");
  if (r.certified && p.gap > p.bound + 1e-9) throw GuaranteeError("partition gap exceeds its bound");
  return p;
}

void check_k(const Graph& g, int k) {
  if (k < 1) throw PreconditionError("k must be positive");
  if (k > g.vertex_count()) throw PreconditionError("k exceeds the number of vertices");
}

}  // namespace

GraphPartition equitable_cut_partition(std::shared_ptr<const Graph> g, int k, const AllocOptions& options) {
  if (!g) throw PreconditionError("null graph");
  check_k(*g, k);
  AllocOptions opts = options;
  opts.require_nonempty = true;
  AllocResult r = alloc_apx_eq_identical(SetFunction::cut(g), k, opts);
  return verify(*g, r, cut_value, true);
}

DensityPartition density_partition(std::shared_ptr<const Graph> g, int k, const AllocOptions& options) {
  if (!g) throw PreconditionError("null graph");
  check_k(*g, k);
  Instance inst = Instance::make_identical(SetFunction::density(g), k);
  DensityPartition out;
  AllocOptions opts = options;
  opts.require_nonempty = true;
  out.nonempty = verify(*g, alloc_apx_eq(inst, opts), density_value, true);
  opts.require_nonempty = false;
  out.empty_allowed = verify(*g, alloc_apx_eq(inst, opts), density_value, false);
  return out;
}

}  // namespace equidivide
