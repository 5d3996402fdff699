#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "equidivide/graph.hpp"
#include "equidivide/subset.hpp"

namespace equidivide {

enum class SetFunctionKind { kTable, kAdditive, kCut, kDensity, kQuasilinear };

const char* kind_name(SetFunctionKind kind);

// Point of [0,1]^m with coordinates in `base` at 1, the listed fractional
// coordinates strictly inside (0,1), everything else at 0.
struct FractionalPoint {
  SubsetId base;
  std::vector<std::pair<int, double>> fracs;
};

// Normalized value oracle over subsets of m items. Immutable; copies share
// state, so passing by value is cheap and concurrent reads are safe.
class SetFunction {
 public:
  static constexpr int kMaxTableItems = 24;
  static constexpr int kMaxEnumeratedBound = 20;

  // values[mask] = v(mask); values.size() == 2^m and values[0] == 0.
  static SetFunction table(int m, std::vector<double> values);
  static SetFunction additive(std::vector<double> weights);
  static SetFunction cut(std::shared_ptr<const Graph> g);
  static SetFunction density(std::shared_ptr<const Graph> g);
  // u(S) = r(S) - sum of costs over S.
  static SetFunction quasilinear(SetFunction reward, std::vector<double> costs);

  int items() const;
  SetFunctionKind kind() const;

  // Throws std::domain_error when s mentions an item >= m.
  double eval(SubsetId s) const;
  double operator()(SubsetId s) const { return eval(s); }

  // Max |v(S + g) - v(S)|. Table functions with m > 20 need an explicit
  // bound from with_marginal_bound, otherwise this throws.
  double marginal_bound() const;
  SetFunction with_marginal_bound(double lambda) const;

  // Kind-specific accessors (empty / null for other kinds).
  const std::vector<double>& table_values() const;
  const std::vector<double>& weights() const;   // additive weights or quasilinear costs
  std::shared_ptr<const Graph> graph() const;
  const SetFunction* reward() const;

  struct Rep;

 private:
  explicit SetFunction(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// v(S u T) <= v(S) + v(T) + tol for all disjoint S, T. Requires m <= 14.
bool is_sigma_subadditive(const SetFunction& f, double tol = 1e-12);

// Exhaustive for m <= 20, otherwise checks `samples` random subsets.
bool is_nonnegative(const SetFunction& f, std::uint64_t seed = 1, int samples = 20000);

// Multilinear extension by summing over all 2^m subsets. m <= 20.
double multilinear_full(const SetFunction& f, std::span<const double> x);

// Multilinear extension at a point with few fractional coordinates.
double multilinear_sparse(const SetFunction& f, const FractionalPoint& p, int cap = 8);

}  // namespace equidivide
