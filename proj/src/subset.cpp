#include "equidivide/subset.hpp"

#include <stdexcept>

namespace equidivide {

SubsetId SubsetId::from_items(const std::vector<int>& items) {
  std::uint64_t bits = 0;
  for (int k : items) {
    if (k < 0 || k >= kMaxItems) throw std::domain_error("item index out of range");
    bits |= std::uint64_t{1} << k;
  }
  return SubsetId(bits);
}

std::vector<int> SubsetId::items() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string SubsetId::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int k : items()) {
    if (!first) s += ",";
    s += std::to_string(k + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace equidivide
