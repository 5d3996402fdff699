#include "equidivide/instance.hpp"

#include <algorithm>

#include "equidivide/errors.hpp"

namespace equidivide {

Instance Instance::make(std::vector<SetFunction> valuations) {
  if (valuations.empty()) throw PreconditionError("instance needs at least one agent");
  Instance inst;
  inst.m = valuations.front().items();
  for (const auto& v : valuations) {
    if (v.items() != inst.m) throw PreconditionError("all valuations must share the item count");
  }
  inst.valuations = std::move(valuations);
  return inst;
}

Instance Instance::make_identical(const SetFunction& v, int n) {
  if (n < 1) throw PreconditionError("instance needs at least one agent");
  Instance inst = make(std::vector<SetFunction>(n, v));
  inst.identical = true;
  return inst;
}

double Instance::marginal_bound() const {
  double lambda = 0.0;
  for (const auto& v : valuations) lambda = std::max(lambda, v.marginal_bound());
  return lambda;
}

bool is_partition(const std::vector<SubsetId>& bundles, int m) {
  SubsetId seen;
  for (SubsetId b : bundles) {
    if (!b.fits(m) || !(seen & b).is_empty()) return false;
    seen = seen | b;
  }
  return seen == SubsetId::full(m);
}

Allocation Allocation::make(const Instance& inst, std::vector<SubsetId> bundles) {
  if (static_cast<int>(bundles.size()) != inst.agents()) throw PreconditionError("one bundle per agent");
  if (!is_partition(bundles, inst.m)) throw PreconditionError("bundles do not partition the items");
  Allocation a;
  a.values.resize(bundles.size());
  for (int i = 0; i < inst.agents(); ++i) a.values[i] = inst.valuation(i).eval(bundles[i]);
  a.bundles = std::move(bundles);
  return a;
}

bool Allocation::all_nonempty() const {
  return std::none_of(bundles.begin(), bundles.end(), [](SubsetId b) { return b.is_empty(); });
}

double Allocation::gap() const {
  if (values.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

}  // namespace equidivide
