#include "equidivide/rounding.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "equidivide/errors.hpp"

namespace equidivide {

Allocation cake_rounding(const Instance& inst, const CakeDivision& division, RoundingTrace* trace) {
  const int n = inst.agents();
  const int m = inst.m;
  if (division.agents() != n) throw PreconditionError("division and instance disagree on the agent count");
  if (trace) {
    trace->coverage.assign(n, Coverage{});
    trace->best.assign(n, SubsetId());
  }
  SubsetId unassigned = SubsetId::full(m);
  std::vector<SubsetId> bundles(n);
  for (int k = 0; k < n; ++k) {
    const int agent = division.owner(k);
    const SetFunction& v = inst.valuation(agent);
    Coverage cov = b_map(m, division.piece(k));
    const SubsetId b = cov.fully;

    // Candidates in fixed order B, B+l, B+r, B+l+r; the first maximizer wins.
    std::array<std::optional<SubsetId>, 4> cand;
    cand[0] = b;
    if (cov.left) cand[1] = b.with(cov.left->item);
    if (cov.right) cand[2] = b.with(cov.right->item);
    if (cov.left && cov.right) cand[3] = b.with(cov.left->item).with(cov.right->item);
    SubsetId best = b;
    double best_value = -std::numeric_limits<double>::infinity();
    for (const auto& c : cand) {
      if (!c) continue;
      double value = v.eval(*c);
      if (value > best_value) {
        best_value = value;
        best = *c;
      }
    }

    // l goes in exactly when still unassigned; r follows the maximizer.
    SubsetId bundle = b;
    if (cov.left && unassigned.contains(cov.left->item)) bundle = bundle.with(cov.left->item);
    if (cov.right && best.contains(cov.right->item)) bundle = bundle.with(cov.right->item);
    if (!bundle.minus(unassigned).is_empty()) {
      throw GuaranteeError("rounding assigned an item twice");
    }
    unassigned = unassigned.minus(bundle);
    bundles[agent] = bundle;
    if (trace) {
      trace->coverage[agent] = cov;
      trace->best[agent] = best;
    }
  }
  if (!unassigned.is_empty()) throw GuaranteeError("rounding left items " + unassigned.to_string() + " unassigned");
  return Allocation::make(inst, std::move(bundles));
}

namespace {

// Calls fn(set) for every subset of {0..m-1} at symmetric distance exactly d from base.
template <typename Fn>
void for_each_at_distance(SubsetId base, int m, int d, Fn&& fn) {
  std::array<int, 8> idx{};
  auto rec = [&](auto&& self, int depth, int from) -> void {
    if (depth == d) {
      SubsetId s = base;
      for (int t = 0; t < d; ++t) s = s ^ SubsetId::singleton(idx[t]);
      fn(s);
      return;
    }
    for (int k = from; k <= m - (d - depth); ++k) {
      idx[depth] = k;
      self(self, depth + 1, k + 1);
    }
  };
  rec(rec, 0, 0);
}

struct Extreme {
  double value;
  SubsetId set;
};

std::optional<RoundingWitness> search(const SetFunction& vi, const SetFunction& vx, const Allocation& a,
                                      int i, int j, const WitnessBudget& budget, double alpha) {
  const int m = vi.items();
  if (i < 0 || j < 0 || i >= a.agents() || j >= a.agents()) throw PreconditionError("agent out of range");
  if (budget.total < 0 || budget.total > 4 || budget.max_i < 0 || budget.max_j < 0) {
    throw PreconditionError("witness budget must be between 0 and 4");
  }
  if (m > 20) throw PreconditionError("witness search needs m <= 20");
  const int di_max = std::min({budget.total, budget.max_i, m});
  const int dj_max = std::min({budget.total, budget.max_j, m});

  // Best A'_i (max v_i) and best A'_j (min of the compared valuation) at each exact distance.
  std::vector<Extreme> best_i(di_max + 1), best_j(dj_max + 1);
  for (int d = 0; d <= di_max; ++d) {
    Extreme e{-std::numeric_limits<double>::infinity(), a.bundles[i]};
    for_each_at_distance(a.bundles[i], m, d, [&](SubsetId s) {
      double value = vi.eval(s);
      if (value > e.value) e = {value, s};
    });
    best_i[d] = e;
  }
  for (int d = 0; d <= dj_max; ++d) {
    Extreme e{std::numeric_limits<double>::infinity(), a.bundles[j]};
    for_each_at_distance(a.bundles[j], m, d, [&](SubsetId s) {
      double value = vx.eval(s);
      if (value < e.value) e = {value, s};
    });
    best_j[d] = e;
  }
  for (int t = 0; t <= budget.total; ++t) {
    for (int di = 0; di <= std::min(t, di_max); ++di) {
      int dj = t - di;
      if (dj > dj_max) continue;
      if (best_i[di].value + alpha >= best_j[dj].value - kWitnessTolerance) {
        return RoundingWitness{i, j, best_i[di].set, best_j[dj].set, di, dj};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RoundingWitness> find_efk_witness(const SetFunction& vi, const Allocation& a, int i, int j,
                                                int k, double alpha) {
  return search(vi, vi, a, i, j, WitnessBudget{k, k, k}, alpha);
}

std::optional<RoundingWitness> find_efk_witness(const SetFunction& vi, const Allocation& a, int i, int j,
                                                const WitnessBudget& budget, double alpha) {
  return search(vi, vi, a, i, j, budget, alpha);
}

std::optional<RoundingWitness> find_eqk_witness(const SetFunction& vi, const SetFunction& vj,
                                                const Allocation& a, int i, int j, int k, double alpha) {
  return search(vi, vj, a, i, j, WitnessBudget{k, k, k}, alpha);
}

std::optional<RoundingWitness> find_eqk_witness(const SetFunction& vi, const SetFunction& vj,
                                                const Allocation& a, int i, int j,
                                                const WitnessBudget& budget, double alpha) {
  return search(vi, vj, a, i, j, budget, alpha);
}

}  // namespace equidivide
