#include "equidivide/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "equidivide/errors.hpp"

namespace equidivide {

struct SetFunction::Rep {
  SetFunctionKind kind;
  int m = 0;
  std::vector<double> values;   // table
  std::vector<double> weights;  // additive weights, quasilinear costs
  std::shared_ptr<const Graph> graph;
  std::optional<SetFunction> reward;
  std::optional<double> lambda;

  double eval(SubsetId s) const {
    switch (kind) {
      case SetFunctionKind::kTable:
        return values[s.bits()];
      case SetFunctionKind::kAdditive: {
        double sum = 0.0;
        for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) sum += weights[std::countr_zero(b)];
        return sum;
      }
      case SetFunctionKind::kCut:
        return cut_value(*graph, s);
      case SetFunctionKind::kDensity:
        return density_value(*graph, s);
      case SetFunctionKind::kQuasilinear: {
        double sum = reward->eval(s);
        for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) sum -= weights[std::countr_zero(b)];
        return sum;
      }
    }
    return 0.0;
  }
};

namespace {

double max_abs(const std::vector<double>& w) {
  double best = 0.0;
  for (double x : w) best = std::max(best, std::abs(x));
  return best;
}

double enumerate_marginal_bound(const std::vector<double>& values, int m) {
  double best = 0.0;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t s = 0; s < count; ++s) {
    for (int g = 0; g < m; ++g) {
      std::uint64_t bit = std::uint64_t{1} << g;
      if (s & bit) continue;
      best = std::max(best, std::abs(values[s | bit] - values[s]));
    }
  }
  return best;
}

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw PreconditionError(std::string(what) + " must be finite");
  }
}

}  // namespace

const char* kind_name(SetFunctionKind kind) {
  switch (kind) {
    case SetFunctionKind::kTable: return "table";
    case SetFunctionKind::kAdditive: return "additive";
    case SetFunctionKind::kCut: return "cut";
    case SetFunctionKind::kDensity: return "density";
    case SetFunctionKind::kQuasilinear: return "quasilinear";
  }
  return "?";
}

SetFunction SetFunction::table(int m, std::vector<double> values) {
  if (m < 0 || m > kMaxTableItems) {
    throw PreconditionError("table functions support 0 <= m <= " + std::to_string(kMaxTableItems));
  }
  if (values.size() != (std::size_t{1} << m)) throw PreconditionError("table needs 2^m values");
  if (values[0] != 0.0) throw PreconditionError("table value of the empty set must be 0");
  check_finite(values, "table values");
  auto rep = std::make_shared<Rep>();
  rep->kind = SetFunctionKind::kTable;
  rep->m = m;
  rep->values = std::move(values);
  if (m <= kMaxEnumeratedBound) rep->lambda = enumerate_marginal_bound(rep->values, m);
  return SetFunction(std::move(rep));
}

SetFunction SetFunction::additive(std::vector<double> weights) {
  if (weights.size() > static_cast<std::size_t>(SubsetId::kMaxItems)) {
    throw PreconditionError("at most 64 items");
  }
  check_finite(weights, "weights");
  auto rep = std::make_shared<Rep>();
  rep->kind = SetFunctionKind::kAdditive;
  rep->m = static_cast<int>(weights.size());
  rep->lambda = max_abs(weights);
  rep->weights = std::move(weights);
  return SetFunction(std::move(rep));
}

SetFunction SetFunction::cut(std::shared_ptr<const Graph> g) {
  if (!g) throw PreconditionError("null graph");
  auto rep = std::make_shared<Rep>();
  rep->kind = SetFunctionKind::kCut;
  rep->m = g->vertex_count();
  rep->lambda = g->max_degree();
  rep->graph = std::move(g);
  return SetFunction(std::move(rep));
}

SetFunction SetFunction::density(std::shared_ptr<const Graph> g) {
  if (!g) throw PreconditionError("null graph");
  auto rep = std::make_shared<Rep>();
  rep->kind = SetFunctionKind::kDensity;
  rep->m = g->vertex_count();
  rep->lambda = 1.0;
  rep->graph = std::move(g);
  return SetFunction(std::move(rep));
}

SetFunction SetFunction::quasilinear(SetFunction reward, std::vector<double> costs) {
  if (static_cast<int>(costs.size()) != reward.items()) {
    throw PreconditionError("quasilinear costs must have one entry per item");
  }
  check_finite(costs, "costs");
  auto rep = std::make_shared<Rep>();
  rep->kind = SetFunctionKind::kQuasilinear;
  rep->m = reward.items();
  if (reward.rep_->lambda) rep->lambda = *reward.rep_->lambda + max_abs(costs);
  rep->weights = std::move(costs);
  rep->reward = std::move(reward);
  return SetFunction(std::move(rep));
}

int SetFunction::items() const { return rep_->m; }
SetFunctionKind SetFunction::kind() const { return rep_->kind; }

double SetFunction::eval(SubsetId s) const {
  if (!s.fits(rep_->m)) {
    throw std::domain_error("subset " + s.to_string() + " mentions an item beyond m = " +
                            std::to_string(rep_->m));
  }
  return rep_->eval(s);
}

double SetFunction::marginal_bound() const {
  if (!rep_->lambda) {
    throw PreconditionError("marginal bound of a table with m > 20 must be supplied explicitly");
  }
  return *rep_->lambda;
}

SetFunction SetFunction::with_marginal_bound(double lambda) const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw PreconditionError("invalid marginal bound");
  auto rep = std::make_shared<Rep>(*rep_);
  rep->lambda = lambda;
  return SetFunction(std::move(rep));
}

const std::vector<double>& SetFunction::table_values() const { return rep_->values; }
const std::vector<double>& SetFunction::weights() const { return rep_->weights; }
std::shared_ptr<const Graph> SetFunction::graph() const { return rep_->graph; }
const SetFunction* SetFunction::reward() const {
  return rep_->reward ? &*rep_->reward : nullptr;
}

bool is_sigma_subadditive(const SetFunction& f, double tol) {
  const int m = f.items();
  if (m > 14) throw PreconditionError("subadditivity check needs m <= 14");
  const std::uint64_t full = SubsetId::full(m).bits();
  std::vector<double> v(std::size_t{1} << m);
  for (std::uint64_t s = 0; s <= full; ++s) v[s] = f.eval(SubsetId(s));
  for (std::uint64_t s = 1; s <= full; ++s) {
    // Submasks come out in decreasing order; t > s visits each unordered pair once.
    const std::uint64_t rest = full & ~s;
    for (std::uint64_t t = rest; t > s; t = (t - 1) & rest) {
      if (v[s | t] > v[s] + v[t] + tol) return false;
    }
  }
  return true;
}

bool is_nonnegative(const SetFunction& f, std::uint64_t seed, int samples) {
  const int m = f.items();
  if (m <= SetFunction::kMaxEnumeratedBound) {
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t s = 0; s < count; ++s) {
      if (f.eval(SubsetId(s)) < 0.0) return false;
    }
    return true;
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = SubsetId::full(m).bits();
  if (f.eval(SubsetId(mask)) < 0.0) return false;
  for (int t = 0; t < samples; ++t) {
    if (f.eval(SubsetId(rng() & mask)) < 0.0) return false;
  }
  return true;
}

double multilinear_full(const SetFunction& f, std::span<const double> x) {
  const int m = f.items();
  if (m > 20) throw PreconditionError("full multilinear evaluation needs m <= 20");
  if (static_cast<int>(x.size()) != m) throw std::domain_error("point dimension differs from m");
  for (double xi : x) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("coordinate outside [0,1]");
  }
  // Depth-first over items, skipping branches of probability zero.
  double total = 0.0;
  auto rec = [&](auto&& self, int k, std::uint64_t s, double p) -> void {
    if (k == m) {
      total += p * f.eval(SubsetId(s));
      return;
    }
    if (x[k] > 0.0) self(self, k + 1, s | (std::uint64_t{1} << k), p * x[k]);
    if (x[k] < 1.0) self(self, k + 1, s, p * (1.0 - x[k]));
  };
  rec(rec, 0, 0, 1.0);
  return total;
}

double multilinear_sparse(const SetFunction& f, const FractionalPoint& p, int cap) {
  const int t = static_cast<int>(p.fracs.size());
  if (t > cap) throw PreconditionError("too many fractional coordinates");
  SubsetId seen = p.base;
  for (auto [k, x] : p.fracs) {
    if (k < 0 || k >= f.items()) throw std::domain_error("fractional item out of range");
    if (seen.contains(k)) throw std::domain_error("fractional item repeated or in base");
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("fractional value outside (0,1)");
    seen = seen.with(k);
  }
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    double prob = 1.0;
    SubsetId s = p.base;
    for (int j = 0; j < t; ++j) {
      if (mask >> j & 1u) {
        prob *= p.fracs[j].second;
        s = s.with(p.fracs[j].first);
      } else {
        prob *= 1.0 - p.fracs[j].second;
      }
    }
    total += prob * f.eval(s);
  }
  return total;
}

}  // namespace equidivide
