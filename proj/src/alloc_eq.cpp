#include "equidivide/alloc_eq.hpp"

#include <algorithm>
#include <cmath>

#include "equidivide/errors.hpp"
#include "equidivide/rounding.hpp"

namespace equidivide {

namespace {

constexpr double kTol = 1e-9;

// Shared tail of both entry points once the trivial cases are out of the way.
AllocResult run_cake_pipeline(const Instance& inst, double lambda, const AllocOptions& options,
                              bool identical_subadditive) {
  const int m = inst.m;
  const int n = inst.agents();
  const bool padded = options.require_nonempty;
  const double default_eps = 1.0 / (8.0 * m * lambda);

  AllocResult r;
  r.lambda = lambda;
  r.epsilon = options.epsilon.value_or(default_eps);
  r.bound = padded ? 5.0 * lambda + 1.0 : 3.0 * lambda + 1.0;
  r.path = padded ? AllocPath::kPadded : AllocPath::kUnpadded;
  r.certified = r.epsilon <= default_eps * (1.0 + 1e-12);
  if (!r.certified) r.warnings.push_back("epsilon override exceeds 1/(8 m Lambda); bound not guaranteed");

  std::vector<CakeValuation> plain = cake_construct(inst.valuations);
  std::vector<CakeValuation> solved;
  double gamma = m * lambda;
  if (padded) {
    for (const auto& f : plain) solved.push_back(CakeValuation::padded(f, m, lambda));
    gamma = 2.0 * m * lambda;
  } else {
    solved = plain;
  }
  EqParams params = EqParams::make(r.epsilon, gamma);
  CakeEqResult cake = identical_subadditive ? cake_apx_eq_identical(solved.front(), n, params, options.threads)
                                     : cake_apx_eq(solved, params, options.threads);
  for (auto& w : cake.warnings) r.warnings.push_back(w);

  AllocCertificates c;
  c.cake_gap = cake.gap;
  c.cake_bound = r.epsilon;
  c.unpadded_gap = max_gap(division_values(plain, cake.division));
  c.unpadded_bound = padded ? 2.0 * lambda + 1.0 : r.epsilon;
  c.min_length = 1.0;
  for (int k = 0; k < n; ++k) c.min_length = std::min(c.min_length, cake.division.piece(k).length());
  c.length_bound = padded ? length_threshold(m, lambda) : 0.0;

  if (options.check_certificates && r.certified) {
    if (c.cake_gap > c.cake_bound + kTol) throw GuaranteeError("cake gap exceeds epsilon");
    if (c.unpadded_gap > c.unpadded_bound + kTol) throw GuaranteeError("unpadded cake gap exceeds its bound");
    if (padded && !check_interval_lengths(cake.division, m, lambda)) {
      throw GuaranteeError("a padded interval is shorter than 2/m + 1/(2 Lambda m^2)");
    }
  }

  r.allocation = cake_rounding(inst, cake.division);
  r.division = std::move(cake.division);
  r.certificates = c;
  return r;
}

void check_final(const AllocResult& r, bool require_nonempty) {
  if (!r.certified) return;
  if (require_nonempty && !r.allocation.all_nonempty()) {
    throw GuaranteeError("an agent received an empty bundle");
  }
  if (r.allocation.gap() > r.bound + kTol) {
    throw GuaranteeError("allocation gap " + std::to_string(r.allocation.gap()) + " exceeds bound " +
                         std::to_string(r.bound));
  }
}

// Handles m = 1, n = 1, and n > m. Returns nothing when the general path applies.
std::optional<AllocResult> trivial_case(const Instance& inst, double lambda, const AllocOptions& options) {
  const int m = inst.m;
  const int n = inst.agents();
  if (m < 1) throw PreconditionError("need at least one item");
  if (options.require_nonempty && n > m) {
    throw PreconditionError("cannot give " + std::to_string(n) + " agents nonempty bundles of " +
                            std::to_string(m) + " items");
  }
  if (n > 1 && m > 1) return std::nullopt;
  std::vector<SubsetId> bundles(n);
  bundles[0] = SubsetId::full(m);
  AllocResult r;
  r.lambda = lambda;
  r.bound = options.require_nonempty ? 5.0 * lambda + 1.0 : 3.0 * lambda + 1.0;
  r.path = AllocPath::kTrivial;
  r.allocation = Allocation::make(inst, std::move(bundles));
  return r;
}

AllocResult fallback(const Instance& inst, double lambda) {
  AllocResult r;
  r.lambda = lambda;
  r.bound = 5.0 * lambda + 1.0;
  r.path = AllocPath::kFallback;
  r.allocation = Allocation::make(inst, round_robin(inst.m, inst.agents()));
  return r;
}

}  // namespace

const char* path_name(AllocPath path) {
  switch (path) {
    case AllocPath::kTrivial: return "trivial";
    case AllocPath::kFallback: return "fallback";
    case AllocPath::kPadded: return "padded";
    case AllocPath::kUnpadded: return "unpadded";
  }
  return "?";
}

double length_threshold(int m, double lambda) {
  return 2.0 / m + 1.0 / (2.0 * lambda * m * static_cast<double>(m));
}

bool check_interval_lengths(const CakeDivision& division, int m, double lambda) {
  const double threshold = length_threshold(m, lambda);
  for (int k = 0; k < division.agents(); ++k) {
    if (division.piece(k).length() < threshold * (1.0 - 1e-12)) return false;
  }
  return true;
}

std::vector<SubsetId> round_robin(int m, int n) {
  std::vector<SubsetId> bundles(n);
  for (int k = 0; k < m; ++k) bundles[k % n] = bundles[k % n].with(k);
  return bundles;
}

AllocResult alloc_apx_eq(const Instance& inst, const AllocOptions& options) {
  for (int i = 0; i < inst.agents(); ++i) {
    if (inst.identical && i > 0) break;
    if (!is_nonnegative(inst.valuation(i), options.seed)) {
      throw PreconditionError("valuation of agent " + std::to_string(i + 1) + " takes negative values");
    }
  }
  const double lambda = std::max(inst.marginal_bound(), 1.0);
  if (auto r = trivial_case(inst, lambda, options)) return *r;
  AllocResult r = options.require_nonempty && 5 * inst.agents() > inst.m
                      ? fallback(inst, lambda)
                      : run_cake_pipeline(inst, lambda, options, false);
  check_final(r, options.require_nonempty);
  return r;
}

AllocResult alloc_apx_eq_identical(const SetFunction& v, int n, const AllocOptions& options) {
  Instance inst = Instance::make_identical(v, n);
  if (v.eval(SubsetId::full(inst.m)) < 0.0) throw PreconditionError("value of all items must be nonnegative");
  if (inst.m <= 14 && !is_sigma_subadditive(v)) throw PreconditionError("valuation is not subadditive");
  const double lambda = std::max(v.marginal_bound(), 1.0);
  if (auto r = trivial_case(inst, lambda, options)) return *r;
  if (!(options.require_nonempty && 5 * n > inst.m)) {
    AllocResult r = run_cake_pipeline(inst, lambda, options, true);
    check_final(r, options.require_nonempty);
    return r;
  }
  // Too few items per agent for the padded argument. Small bundles are
  // enough when v is nonnegative; otherwise try the padded cake as well
  // and keep whichever meets the bound.
  AllocResult rr = fallback(inst, lambda);
  if (is_nonnegative(v, options.seed)) {
    check_final(rr, true);
    return rr;
  }
  AllocOptions padded = options;
  padded.check_certificates = false;
  AllocResult cake = run_cake_pipeline(inst, lambda, padded, true);
  cake.path = AllocPath::kPadded;
  for (AllocResult* cand : {&cake, &rr}) {
    if (cand->allocation.all_nonempty() && cand->allocation.gap() <= cand->bound + kTol) return *cand;
  }
  throw GuaranteeError("no construction met the bound for this instance with more than m/5 agents");
}

}  // namespace equidivide
