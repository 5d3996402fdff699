#include "equidivide/cake_eq.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "equidivide/errors.hpp"
#include "equidivide/interval_select.hpp"
#include "equidivide/parallel.hpp"

namespace equidivide {

EqParams EqParams::make(double epsilon, double gamma) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("epsilon must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw PreconditionError("gamma must be positive");
  EqParams p{epsilon, gamma};
  if (8.0 * gamma / epsilon > static_cast<double>(kMaxGrid)) {
    throw PreconditionError("grid of " + std::to_string(8.0 * gamma / epsilon) +
                            " points exceeds the supported size");
  }
  return p;
}

std::int64_t EqParams::grid() const {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(8.0 * gamma / epsilon)));
}

std::int64_t EqParams::tau_steps() const {
  return static_cast<std::int64_t>(std::ceil(2.0 * gamma / epsilon));
}

bool EqParams::within_guarantee() const { return epsilon * 4.0 * gamma <= 1.0 + 1e-12; }

std::vector<double> division_values(std::span<const CakeValuation> fs, const CakeDivision& d) {
  if (static_cast<int>(fs.size()) != d.agents()) throw PreconditionError("one valuation per agent");
  std::vector<double> v(fs.size());
  for (int i = 0; i < d.agents(); ++i) v[i] = fs[i].eval(d.interval_of(i));
  return v;
}

double max_gap(std::span<const double> values) {
  if (values.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

namespace {

// Prefix and suffix values on the grid for every agent, bucketed by the
// tau windows that contain them.
class GridTables {
 public:
  GridTables(std::span<const CakeValuation> fs, const EqParams& p)
      : fs_(fs), n_(static_cast<int>(fs.size())), grid_(p.grid()), taus_(p.tau_steps()),
        half_(p.epsilon / 2), window_(p.window()), gamma_(p.gamma), epsilon_(p.epsilon) {
    prefix_.resize(n_);
    suffix_.resize(n_);
    prefix_buckets_.resize(n_);
    suffix_buckets_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      prefix_[i].resize(grid_ + 1);
      suffix_[i].resize(grid_ + 1);
      for (std::int64_t q = 0; q <= grid_; ++q) {
        prefix_[i][q] = fs_[i].eval(GridInterval{0, q, grid_});
        suffix_[i][q] = fs_[i].eval(GridInterval{q, grid_, grid_});
      }
      prefix_buckets_[i] = bucket(prefix_[i]);
      suffix_buckets_[i] = bucket(suffix_[i]);
    }
  }

  std::int64_t grid() const { return grid_; }
  std::int64_t taus() const { return taus_; }

  bool in_window(double v, std::int64_t k) const {
    double tau = k * (epsilon_ / 2);
    return v >= tau - window_ && v <= tau + window_;
  }

  double value(int agent, std::size_t a, std::size_t b) const {
    if (a == 0) return prefix_[agent][b];
    if (static_cast<std::int64_t>(b) == grid_) return suffix_[agent][a];
    return fs_[agent].eval(GridInterval{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), grid_});
  }

  // Grid steps b can move before the value can re-enter the window.
  std::size_t skip(double v, std::int64_t k) const {
    double tau = k * (epsilon_ / 2);
    double miss = std::max((tau - window_) - v, v - (tau + window_));
    double steps = std::floor(miss * static_cast<double>(grid_) / gamma_ * (1.0 - 1e-9));
    if (!(steps >= 1.0)) return 1;
    return steps > 1e15 ? static_cast<std::size_t>(1e15) : static_cast<std::size_t>(steps);
  }

  std::vector<std::size_t> prefix_members(int agent, std::int64_t k) const {
    return prefix_buckets_[agent].get(k);
  }
  std::vector<std::size_t> suffix_members(int agent, std::int64_t k) const {
    return suffix_buckets_[agent].get(k);
  }

 private:
  // Compressed lists: for tau index k, the grid points whose value lies in window k.
  struct Buckets {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> points;
    std::vector<std::size_t> get(std::int64_t k) const {
      return {points.begin() + offsets[k], points.begin() + offsets[k + 1]};
    }
  };

  template <typename Fn>
  void windows_of(double v, Fn&& fn) const {
    std::int64_t k0 = static_cast<std::int64_t>(std::floor(v / half_)) - 2;
    for (std::int64_t k = std::max<std::int64_t>(k0, 0); k <= std::min(k0 + 4, taus_); ++k) {
      if (in_window(v, k)) fn(k);
    }
  }

  Buckets bucket(const std::vector<double>& values) const {
    Buckets b;
    b.offsets.assign(taus_ + 2, 0);
    for (double v : values) {
      if (!std::isfinite(v / half_) || v < -half_ || v > (taus_ + 1) * half_) continue;
      windows_of(v, [&](std::int64_t k) { ++b.offsets[k + 1]; });
    }
    for (std::int64_t k = 0; k <= taus_; ++k) b.offsets[k + 1] += b.offsets[k];
    b.points.resize(b.offsets.back());
    std::vector<std::size_t> fill(b.offsets.begin(), b.offsets.end() - 1);
    for (std::size_t q = 0; q < values.size(); ++q) {
      double v = values[q];
      if (!std::isfinite(v / half_) || v < -half_ || v > (taus_ + 1) * half_) continue;
      windows_of(v, [&](std::int64_t k) { b.points[fill[k]++] = q; });
    }
    return b;
  }

  std::span<const CakeValuation> fs_;
  int n_;
  std::int64_t grid_;
  std::int64_t taus_;
  double half_;
  double window_;
  double gamma_;
  double epsilon_;
  std::vector<std::vector<double>> prefix_, suffix_;
  std::vector<Buckets> prefix_buckets_, suffix_buckets_;
};

// Implicit families F_i^tau for one tau index.
class GridFamilies {
 public:
  GridFamilies(const GridTables& t, std::int64_t k) : t_(t), k_(k) {}

  std::size_t probe(int agent, std::size_t a, std::size_t b) const {
    double v = t_.value(agent, a, b);
    return t_.in_window(v, k_) ? 0 : t_.skip(v, k_);
  }
  std::vector<std::size_t> prefix_members(int agent) const { return t_.prefix_members(agent, k_); }
  std::vector<std::size_t> suffix_members(int agent) const { return t_.suffix_members(agent, k_); }

 private:
  const GridTables& t_;
  std::int64_t k_;
};

CakeEqResult solve(std::span<const CakeValuation> fs, const EqParams& p, int threads) {
  const int n = static_cast<int>(fs.size());
  CakeEqResult result{CakeDivision(1, {0, 1}), {}, 0.0, 0.0, 0, {}};
  if (!p.within_guarantee()) {
    result.warnings.push_back("epsilon exceeds 1/(4 gamma); the accuracy guarantee does not apply");
  }
  if (n == 1) {
    result.values = division_values(fs, result.division);
    return result;
  }
  GridTables tables(fs, p);
  const std::int64_t taus = tables.taus();
  // Batches keep the lowest successful tau the winner regardless of thread count.
  const std::int64_t batch = threads <= 1 ? 1 : 4 * static_cast<std::int64_t>(threads);
  for (std::int64_t start = 0; start <= taus; start += batch) {
    const std::int64_t end = std::min(start + batch, taus + 1);
    std::vector<std::optional<std::vector<std::size_t>>> found(end - start);
    parallel_for(start, end, threads, [&](std::size_t k) {
      GridFamilies fam(tables, static_cast<std::int64_t>(k));
      found[k - start] = detail::select_ordered(tables.grid() + 1, n, fam);
    });
    for (std::int64_t k = start; k < end; ++k) {
      const auto& cuts = found[k - start];
      if (!cuts) continue;
      std::vector<std::int64_t> grid(cuts->begin(), cuts->end());
      result.division = CakeDivision(tables.grid(), std::move(grid));
      result.values = division_values(fs, result.division);
      result.gap = max_gap(result.values);
      result.tau = p.tau(k);
      result.tau_index = k;
      return result;
    }
  }
  throw GuaranteeError("no tau level admits an ordered division; check nonnegativity and gamma");
}

}  // namespace

CakeEqResult cake_apx_eq(std::span<const CakeValuation> fs, const EqParams& params, int threads) {
  if (fs.empty()) throw PreconditionError("need at least one valuation");
  for (const auto& f : fs) {
    if (!f.is_nonnegative()) {
      throw PreconditionError("valuations must be nonnegative (use the identical-valuation entry point "
                              "for burnt cakes)");
    }
  }
  return solve(fs, params, threads);
}

CakeEqResult cake_apx_eq_identical(const CakeValuation& f, int n, const EqParams& params, int threads) {
  if (n < 1) throw PreconditionError("need at least one agent");
  if (f.eval(0.0, 1.0) < 0.0) throw PreconditionError("whole cake must have nonnegative value");
  if (const SetFunction* v = f.set_function(); v != nullptr && v->items() <= 14) {
    if (!is_sigma_subadditive(*v)) throw PreconditionError("valuation is not subadditive");
  }
  std::vector<CakeValuation> fs(n, f);
  return solve(fs, params, threads);
}

std::vector<GridInterval> build_family(const CakeValuation& f, double tau, const EqParams& params) {
  const std::int64_t grid = params.grid();
  const double half = params.window();
  std::vector<GridInterval> out;
  for (std::int64_t a = 0; a <= grid; ++a) {
    for (std::int64_t b = a; b <= grid; ++b) {
      GridInterval in{a, b, grid};
      double v = f.eval(in);
      if (v >= tau - half && v <= tau + half) out.push_back(in);
    }
  }
  return out;
}

std::optional<FixedPointResult> fixed_point_eq(std::span<const CakeValuation> fs, double gamma,
                                               const FixedPointOptions& options) {
  const int n = static_cast<int>(fs.size());
  if (n < 1) throw PreconditionError("need at least one valuation");
  if (!(gamma > 0.0)) throw PreconditionError("gamma must be positive");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) throw PreconditionError("damping must be in (0,1]");

  // Sampled check of 0 <= f_i([a,b]) <= gamma (b - a).
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& f : fs) {
    for (int s = 0; s < 200; ++s) {
      double a = unit(rng), b = unit(rng);
      if (a > b) std::swap(a, b);
      double v = f.eval(a, b);
      if (v < -1e-12 || v > gamma * (b - a) + 1e-9) {
        throw PreconditionError("valuation is negative or exceeds gamma * length on a sampled interval");
      }
    }
  }

  std::vector<double> x = options.start;
  if (x.empty()) x.assign(n, 1.0 / n);
  if (static_cast<int>(x.size()) != n) throw PreconditionError("start point needs one length per agent");

  auto normalize = [&] {
    double sum = 0.0;
    for (double& xi : x) {
      xi = std::max(xi, 0.0);
      sum += xi;
    }
    if (!(sum > 0.0)) throw PreconditionError("start point must have positive mass");
    for (double& xi : x) xi /= sum;
  };
  auto cuts_of = [&] {
    std::vector<double> cuts(n + 1, 0.0);
    for (int i = 0; i < n; ++i) cuts[i + 1] = cuts[i] + x[i];
    cuts[n] = 1.0;
    return cuts;
  };
  normalize();

  std::vector<double> values(n);
  for (int iter = 0; iter <= options.max_iter; ++iter) {
    auto cuts = cuts_of();
    for (int i = 0; i < n; ++i) values[i] = fs[i].eval(cuts[i], std::max(cuts[i], cuts[i + 1]));
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double worst = 0.0;
    for (double v : values) worst = std::max(worst, std::abs(v - mean));
    if (worst <= options.tol) {
      // Confirm on the exact grid the division is reported on.
      CakeDivision d = CakeDivision::from_real_cuts(cuts, options.den);
      auto exact = division_values(fs, d);
      double exact_mean = 0.0;
      for (double v : exact) exact_mean += v;
      exact_mean /= n;
      double exact_worst = 0.0;
      for (double v : exact) exact_worst = std::max(exact_worst, std::abs(v - exact_mean));
      if (exact_worst <= options.tol) {
        return FixedPointResult{std::move(d), x, exact, max_gap(exact), iter};
      }
    }
    if (iter == options.max_iter) break;
    for (int i = 0; i < n; ++i) x[i] += options.damping * (mean - values[i]) / gamma;
    normalize();
  }
  return std::nullopt;
}

}  // namespace equidivide
