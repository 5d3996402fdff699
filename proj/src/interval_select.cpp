#include "equidivide/interval_select.hpp"

#include <unordered_set>

#include "equidivide/errors.hpp"

namespace equidivide {

IntervalFamilySet::IntervalFamilySet(int agents, std::int64_t den) : den_(den), families_(agents) {
  if (agents < 1) throw PreconditionError("need at least one family");
  if (den < 1) throw PreconditionError("grid denominator must be positive");
}

void IntervalFamilySet::add(int agent, std::int64_t lo, std::int64_t hi) {
  if (agent < 0 || agent >= agents()) throw PreconditionError("family index out of range");
  if (lo < 0 || hi < lo || hi > den_) throw PreconditionError("interval outside [0,1]");
  auto& fam = families_[agent];
  GridInterval in{lo, hi, den_};
  if (std::find(fam.begin(), fam.end(), in) == fam.end()) fam.push_back(in);
}

namespace {

class ExplicitFamilies {
 public:
  explicit ExplicitFamilies(const IntervalFamilySet& set) {
    points_ = {0, set.den()};
    for (int i = 0; i < set.agents(); ++i) {
      for (const auto& in : set.family(i)) {
        points_.push_back(in.lo);
        points_.push_back(in.hi);
      }
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    const std::size_t last = points_.size() - 1;
    members_.resize(set.agents());
    prefix_.resize(set.agents());
    suffix_.resize(set.agents());
    for (int i = 0; i < set.agents(); ++i) {
      for (const auto& in : set.family(i)) {
        std::size_t a = index(in.lo), b = index(in.hi);
        members_[i].insert(key(a, b));
        if (a == 0) prefix_[i].push_back(b);
        if (b == last) suffix_[i].push_back(a);
      }
      for (auto* list : {&prefix_[i], &suffix_[i]}) {
        std::sort(list->begin(), list->end());
        list->erase(std::unique(list->begin(), list->end()), list->end());
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  std::int64_t point(std::size_t k) const { return points_[k]; }

  std::size_t probe(int agent, std::size_t a, std::size_t b) const {
    return members_[agent].count(key(a, b)) ? 0 : 1;
  }
  std::vector<std::size_t> prefix_members(int agent) const { return prefix_[agent]; }
  std::vector<std::size_t> suffix_members(int agent) const { return suffix_[agent]; }

 private:
  std::size_t index(std::int64_t x) const {
    return static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), x) - points_.begin());
  }
  std::uint64_t key(std::size_t a, std::size_t b) const { return a * points_.size() + b; }

  std::vector<std::int64_t> points_;
  std::vector<std::unordered_set<std::uint64_t>> members_;
  std::vector<std::vector<std::size_t>> prefix_, suffix_;
};

}  // namespace

std::optional<CakeDivision> interval_select(const IntervalFamilySet& families) {
  ExplicitFamilies fam(families);
  auto cuts = detail::select_ordered(fam.size(), families.agents(), fam);
  if (!cuts) return std::nullopt;
  std::vector<std::int64_t> grid;
  grid.reserve(cuts->size());
  for (std::size_t k : *cuts) grid.push_back(fam.point(k));
  return CakeDivision(families.den(), std::move(grid));
}

}  // namespace equidivide
