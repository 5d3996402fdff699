#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace equidivide {

// Subset of items {0, ..., m-1}; bit k stands for item k (item k+1 in
// one-based notation). At most 64 items.
class SubsetId {
 public:
  static constexpr int kMaxItems = 64;

  constexpr SubsetId() = default;
  constexpr explicit SubsetId(std::uint64_t bits) : bits_(bits) {}

  static constexpr SubsetId empty() { return SubsetId(); }
  static constexpr SubsetId singleton(int k) { return SubsetId(std::uint64_t{1} << k); }
  static constexpr SubsetId full(int m) {
    return m >= 64 ? SubsetId(~std::uint64_t{0}) : SubsetId((std::uint64_t{1} << m) - 1);
  }
  static SubsetId from_items(const std::vector<int>& items);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr bool contains(int k) const { return (bits_ >> k) & 1u; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr SubsetId with(int k) const { return SubsetId(bits_ | (std::uint64_t{1} << k)); }
  constexpr SubsetId without(int k) const { return SubsetId(bits_ & ~(std::uint64_t{1} << k)); }
  constexpr bool fits(int m) const { return m >= 64 || (bits_ >> m) == 0; }

  // Highest item index plus one, 0 for the empty set.
  constexpr int span() const { return 64 - std::countl_zero(bits_); }

  std::vector<int> items() const;
  std::string to_string() const;  // "{1,3}" with one-based items

  constexpr SubsetId operator|(SubsetId o) const { return SubsetId(bits_ | o.bits_); }
  constexpr SubsetId operator&(SubsetId o) const { return SubsetId(bits_ & o.bits_); }
  constexpr SubsetId operator^(SubsetId o) const { return SubsetId(bits_ ^ o.bits_); }
  constexpr SubsetId minus(SubsetId o) const { return SubsetId(bits_ & ~o.bits_); }
  constexpr bool operator==(const SubsetId&) const = default;
  constexpr auto operator<=>(const SubsetId&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace equidivide
