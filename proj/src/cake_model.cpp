#include "equidivide/cake_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "equidivide/errors.hpp"

namespace equidivide {

std::string rational_string(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

bool GridInterval::operator==(const GridInterval& o) const {
  using I = __int128;
  return I(lo) * o.den == I(o.lo) * den && I(hi) * o.den == I(o.hi) * den;
}

CakeDivision::CakeDivision(std::int64_t den, std::vector<std::int64_t> cuts, std::vector<int> owners)
    : den_(den), cuts_(std::move(cuts)), owners_(std::move(owners)) {
  if (den_ <= 0) throw PreconditionError("division denominator must be positive");
  if (cuts_.size() < 2) throw PreconditionError("division needs at least one piece");
  if (cuts_.front() != 0 || cuts_.back() != den_) {
    throw PreconditionError("division must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < cuts_.size(); ++k) {
    if (cuts_[k] < cuts_[k - 1]) throw PreconditionError("division cuts must be nondecreasing");
  }
  const int n = static_cast<int>(cuts_.size()) - 1;
  if (owners_.empty()) {
    owners_.resize(n);
    std::iota(owners_.begin(), owners_.end(), 0);
  }
  if (static_cast<int>(owners_.size()) != n) throw PreconditionError("one owner per piece");
  pieces_.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    int a = owners_[k];
    if (a < 0 || a >= n || pieces_[a] != -1) throw PreconditionError("owners must be a permutation");
    pieces_[a] = k;
  }
}

CakeDivision CakeDivision::from_real_cuts(std::span<const double> cuts, std::int64_t den,
                                          std::vector<int> owners) {
  std::vector<std::int64_t> grid(cuts.size());
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    double c = std::clamp(cuts[k], 0.0, 1.0);
    grid[k] = std::llround(c * static_cast<double>(den));
  }
  if (!grid.empty()) {
    grid.front() = 0;
    grid.back() = den;
  }
  for (std::size_t k = 1; k < grid.size(); ++k) grid[k] = std::max(grid[k], grid[k - 1]);
  return CakeDivision(den, std::move(grid), std::move(owners));
}

bool CakeDivision::is_ordered() const {
  for (int k = 0; k < agents(); ++k) {
    if (owners_[k] != k) return false;
  }
  return true;
}

std::vector<std::string> CakeDivision::cut_strings() const {
  std::vector<std::string> out;
  out.reserve(cuts_.size());
  for (auto c : cuts_) out.push_back(rational_string(c, den_));
  return out;
}

FractionalPoint Coverage::point() const {
  FractionalPoint p{fully, {}};
  if (left) p.fracs.emplace_back(left->item, left->fraction);
  if (right) p.fracs.emplace_back(right->item, right->fraction);
  return p;
}

std::vector<double> Coverage::dense(int m) const {
  std::vector<double> x(m, 0.0);
  for (int k : fully.items()) x[k] = 1.0;
  if (left) x[left->item] = left->fraction;
  if (right) x[right->item] = right->fraction;
  return x;
}

namespace {

// Shared shape of both b_map overloads. The interval is [a, b] measured in
// cells of size `unit` (item k occupies [k*unit, (k+1)*unit]).
template <typename T>
Coverage cover_cells(int m, T a, T b, T unit) {
  Coverage c;
  if (!(b > a)) return c;
  auto floor_div = [&](T x) -> int {
    if constexpr (std::is_integral_v<T>) {
      return static_cast<int>(x / unit);
    } else {
      return static_cast<int>(std::floor(x / unit));
    }
  };
  int first = std::clamp(floor_div(a), 0, m - 1);
  int last = std::clamp(floor_div(b), 0, m);
  if (last * unit >= b) --last;  // b on a cell boundary belongs to the left cell
  last = std::min(last, m - 1);
  std::optional<FracItem> first_frac, last_frac;
  for (int k = first; k <= last; ++k) {
    T lo = std::max(a, static_cast<T>(k * unit));
    T hi = std::min(b, static_cast<T>((k + 1) * unit));
    T overlap = hi - lo;
    if (!(overlap > 0)) continue;
    if (overlap >= unit) {
      c.fully = c.fully.with(k);
      continue;
    }
    FracItem f{k, static_cast<double>(overlap) / static_cast<double>(unit)};
    if (k == first) {
      first_frac = f;
    } else {
      last_frac = f;
    }
  }
  if (first_frac && !last_frac && first == last) {
    // Only one partially covered item. It sits at the right end when the
    // interval starts on a cell boundary.
    bool starts_on_boundary = (a == static_cast<T>(first * unit));
    if (starts_on_boundary) {
      c.right = first_frac;
    } else {
      c.left = first_frac;
    }
  } else {
    c.left = first_frac;
    c.right = last_frac;
  }
  return c;
}

}  // namespace

Coverage b_map(int m, const GridInterval& interval) {
  if (interval.lo < 0 || interval.hi < interval.lo || interval.hi > interval.den) {
    throw PreconditionError("interval outside [0,1]");
  }
  if (m <= 0) return {};
  // Scale by m so cell k is [k*den, (k+1)*den].
  return cover_cells<std::int64_t>(m, interval.lo * m, interval.hi * m, interval.den);
}

Coverage b_map(int m, double lo, double hi) {
  if (!(lo >= 0.0 && hi >= lo && hi <= 1.0)) throw PreconditionError("interval outside [0,1]");
  if (m <= 0) return {};
  return cover_cells<double>(m, lo * m, hi * m, 1.0);
}

double beta_padding(double length, int m, double lambda) {
  return std::min(m * lambda * length, 4.0 * lambda + 1.0);
}

struct CakeValuation::Rep {
  CakeKind kind;
  double gamma = 0.0;
  std::optional<SetFunction> items;
  std::vector<double> breakpoints;
  std::vector<double> densities;
  std::vector<double> prefix;  // integral of the density up to each breakpoint
  std::shared_ptr<const Rep> inner;
  int m = 0;
  double lambda = 0.0;

  double density_integral(double x) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    std::size_t k = it == breakpoints.begin() ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    if (k >= densities.size()) return prefix.back();
    return prefix[k] + densities[k] * (x - breakpoints[k]);
  }

  double eval_grid(const GridInterval& in) const {
    switch (kind) {
      case CakeKind::kFromItems:
        return multilinear_sparse(*items, b_map(items->items(), in).point());
      case CakeKind::kDensity:
        if (in.lo == in.hi) return 0.0;
        return density_integral(in.hi_real()) - density_integral(in.lo_real());
      case CakeKind::kPadded:
        return inner->eval_grid(in) + beta_padding(in.length(), m, lambda);
    }
    return 0.0;
  }

  double eval_real(double lo, double hi) const {
    switch (kind) {
      case CakeKind::kFromItems:
        return multilinear_sparse(*items, b_map(items->items(), lo, hi).point());
      case CakeKind::kDensity:
        if (lo == hi) return 0.0;
        return density_integral(hi) - density_integral(lo);
      case CakeKind::kPadded:
        return inner->eval_real(lo, hi) + beta_padding(hi - lo, m, lambda);
    }
    return 0.0;
  }
};

CakeValuation CakeValuation::from_items(const SetFunction& v) {
  auto rep = std::make_shared<Rep>();
  rep->kind = CakeKind::kFromItems;
  rep->items = v;
  rep->gamma = v.items() * v.marginal_bound();
  return CakeValuation(std::move(rep));
}

CakeValuation CakeValuation::density(std::vector<double> breakpoints, std::vector<double> densities) {
  if (densities.empty() || breakpoints.size() != densities.size() + 1) {
    throw PreconditionError("density needs k pieces and k+1 breakpoints");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw PreconditionError("density breakpoints must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k] > breakpoints[k - 1])) {
      throw PreconditionError("density breakpoints must be strictly increasing");
    }
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = CakeKind::kDensity;
  rep->prefix.assign(1, 0.0);
  for (std::size_t k = 0; k < densities.size(); ++k) {
    if (!std::isfinite(densities[k])) throw PreconditionError("density values must be finite");
    rep->prefix.push_back(rep->prefix.back() + densities[k] * (breakpoints[k + 1] - breakpoints[k]));
    rep->gamma = std::max(rep->gamma, std::abs(densities[k]));
  }
  rep->breakpoints = std::move(breakpoints);
  rep->densities = std::move(densities);
  return CakeValuation(std::move(rep));
}

CakeValuation CakeValuation::length() { return density({0.0, 1.0}, {1.0}); }

CakeValuation CakeValuation::padded(const CakeValuation& inner, int m, double lambda) {
  if (lambda < 1.0) throw PreconditionError("padding expects lambda >= 1");
  if (m < 1) throw PreconditionError("padding expects m >= 1");
  auto rep = std::make_shared<Rep>();
  rep->kind = CakeKind::kPadded;
  rep->inner = inner.rep_;
  rep->m = m;
  rep->lambda = lambda;
  rep->gamma = 2.0 * m * lambda;
  return CakeValuation(std::move(rep));
}

CakeKind CakeValuation::kind() const { return rep_->kind; }
double CakeValuation::gamma() const { return rep_->gamma; }

double CakeValuation::eval(const GridInterval& interval) const {
  if (interval.lo < 0 || interval.hi < interval.lo || interval.hi > interval.den) {
    throw PreconditionError("interval outside [0,1]");
  }
  return rep_->eval_grid(interval);
}

double CakeValuation::eval(double lo, double hi) const {
  if (!(lo >= 0.0 && hi >= lo && hi <= 1.0)) throw PreconditionError("interval outside [0,1]");
  return rep_->eval_real(lo, hi);
}

const SetFunction* CakeValuation::set_function() const {
  return rep_->items ? &*rep_->items : nullptr;
}

bool CakeValuation::is_nonnegative() const {
  const Rep* r = rep_.get();
  while (r->kind == CakeKind::kPadded) r = r->inner.get();
  if (r->kind == CakeKind::kDensity) {
    return std::all_of(r->densities.begin(), r->densities.end(), [](double d) { return d >= 0.0; });
  }
  return equidivide::is_nonnegative(*r->items);
}

std::vector<CakeValuation> cake_construct(std::span<const SetFunction> valuations) {
  std::vector<CakeValuation> out;
  out.reserve(valuations.size());
  for (const auto& v : valuations) {
    if (v.items() != valuations.front().items()) {
      throw PreconditionError("all valuations must share the item count");
    }
    out.push_back(CakeValuation::from_items(v));
  }
  return out;
}

}  // namespace equidivide
