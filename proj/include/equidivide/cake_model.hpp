#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equidivide/setfn.hpp"

namespace equidivide {

// "num/den" in lowest terms.
std::string rational_string(std::int64_t num, std::int64_t den);

// [lo/den, hi/den] with integer endpoints.
struct GridInterval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t den = 1;

  double lo_real() const { return static_cast<double>(lo) / den; }
  double hi_real() const { return static_cast<double>(hi) / den; }
  double length() const { return static_cast<double>(hi - lo) / den; }
  bool is_degenerate() const { return lo == hi; }

  // Exact rational comparison; denominators may differ.
  bool operator==(const GridInterval& o) const;
};

// Contiguous division of [0,1]. Piece k (left to right) is
// [cuts[k], cuts[k+1]] / den and belongs to agent owners[k]. An ordered
// division has owners[k] == k.
class CakeDivision {
 public:
  CakeDivision(std::int64_t den, std::vector<std::int64_t> cuts, std::vector<int> owners = {});

  // Rounds each real cut to the nearest multiple of 1/den.
  static CakeDivision from_real_cuts(std::span<const double> cuts, std::int64_t den,
                                     std::vector<int> owners = {});

  int agents() const { return static_cast<int>(owners_.size()); }
  std::int64_t den() const { return den_; }
  const std::vector<std::int64_t>& cuts() const { return cuts_; }
  const std::vector<int>& owners() const { return owners_; }
  bool is_ordered() const;

  GridInterval piece(int k) const { return {cuts_[k], cuts_[k + 1], den_}; }
  int owner(int k) const { return owners_[k]; }
  int piece_of(int agent) const { return pieces_[agent]; }
  GridInterval interval_of(int agent) const { return piece(pieces_[agent]); }

  std::vector<std::string> cut_strings() const;

 private:
  std::int64_t den_;
  std::vector<std::int64_t> cuts_;
  std::vector<int> owners_;
  std::vector<int> pieces_;
};

struct FracItem {
  int item = 0;
  double fraction = 0.0;
};

// Items touched by an interval: those fully inside, and at most two
// partially covered ones at the ends. When a single item is partially
// covered and the interval lies strictly inside its cell, it is stored as
// `left` only.
struct Coverage {
  SubsetId fully;
  std::optional<FracItem> left;
  std::optional<FracItem> right;

  FractionalPoint point() const;
  std::vector<double> dense(int m) const;
};

Coverage b_map(int m, const GridInterval& interval);
Coverage b_map(int m, double lo, double hi);

// min{m * lambda * x, 4 * lambda + 1}
double beta_padding(double length, int m, double lambda);

enum class CakeKind { kFromItems, kDensity, kPadded };

// Value of subintervals of [0,1]. Immutable and cheap to copy.
class CakeValuation {
 public:
  // f = V o b for a set function over m items; gamma = m * Lambda.
  static CakeValuation from_items(const SetFunction& v);
  // breakpoints 0 = x_0 < ... < x_k = 1 and k densities (any sign).
  static CakeValuation density(std::vector<double> breakpoints, std::vector<double> densities);
  static CakeValuation length();
  // f + beta(len); gamma = 2 m lambda.
  static CakeValuation padded(const CakeValuation& inner, int m, double lambda);

  CakeKind kind() const;
  double gamma() const;
  double eval(const GridInterval& interval) const;
  double eval(double lo, double hi) const;

  // Null unless kind() == kFromItems.
  const SetFunction* set_function() const;
  // Best effort: exact for densities, exhaustive for item cakes with m <= 20.
  bool is_nonnegative() const;

  struct Rep;

 private:
  explicit CakeValuation(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

std::vector<CakeValuation> cake_construct(std::span<const SetFunction> valuations);

}  // namespace equidivide
