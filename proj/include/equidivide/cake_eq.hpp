#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equidivide/cake_model.hpp"

namespace equidivide {

// Accuracy target and Lipschitz constant for the grid search. The grid has
// N = ceil(8 gamma / epsilon) steps and tau runs over k * epsilon / 2 for
// k = 0 .. ceil(2 gamma / epsilon).
struct EqParams {
  static constexpr std::int64_t kMaxGrid = 20'000'000;

  double epsilon = 0.0;
  double gamma = 0.0;

  static EqParams make(double epsilon, double gamma);

  std::int64_t grid() const;
  std::int64_t tau_steps() const;  // index of the last tau
  double tau(std::int64_t k) const { return k * (epsilon / 2); }
  // Half-width of the value window around tau; the slack absorbs roundoff in
  // interval values that sit exactly on a window edge.
  double window() const { return epsilon / 2 + 1e-12 * std::max(1.0, gamma); }
  // epsilon above 1/(4 gamma) is accepted but outside the proven range.
  bool within_guarantee() const;
};

struct CakeEqResult {
  CakeDivision division;
  std::vector<double> values;  // values[i] = f_i(I_i)
  double gap = 0.0;
  double tau = 0.0;
  std::int64_t tau_index = 0;
  std::vector<std::string> warnings;
};

// f_{owner(k)}(piece k), indexed by agent.
std::vector<double> division_values(std::span<const CakeValuation> fs, const CakeDivision& d);
double max_gap(std::span<const double> values);

// Ordered division (agent i gets the i-th piece) whose values pairwise
// differ by at most epsilon. Every f_i must be nonnegative. Throws
// GuaranteeError when no tau succeeds.
CakeEqResult cake_apx_eq(std::span<const CakeValuation> fs, const EqParams& params, int threads = 1);

// Same search for n copies of one valuation that is subadditive on
// adjacent intervals and has f([0,1]) >= 0; negative parts allowed.
CakeEqResult cake_apx_eq_identical(const CakeValuation& f, int n, const EqParams& params,
                                   int threads = 1);

// All grid intervals with value in [tau - epsilon/2, tau + epsilon/2].
std::vector<GridInterval> build_family(const CakeValuation& f, double tau, const EqParams& params);

struct FixedPointOptions {
  double tol = 1e-6;
  int max_iter = 10000;
  double damping = 0.5;
  std::vector<double> start;  // piece lengths; uniform when empty
  std::int64_t den = std::int64_t{1} << 30;
};

struct FixedPointResult {
  CakeDivision division;
  std::vector<double> lengths;
  std::vector<double> values;
  double gap = 0.0;
  int iterations = 0;
};

// Damped iteration x <- x + damping (g(x) - x) with
// g_i(x) = x_i + (mean_j f_j(I_j) - f_i(I_i)) / gamma, projected back onto
// the simplex. Returns nothing when it has not converged after max_iter.
std::optional<FixedPointResult> fixed_point_eq(std::span<const CakeValuation> fs, double gamma,
                                               const FixedPointOptions& options = {});

}  // namespace equidivide
