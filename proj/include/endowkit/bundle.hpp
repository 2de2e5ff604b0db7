#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace endowkit {

inline constexpr int kMaxItems = 24;

// A bundle of items as a bitmask over item indices 0..m-1.
struct Bundle {
  std::uint32_t bits = 0;

  constexpr Bundle() = default;
  constexpr explicit Bundle(std::uint32_t b) : bits(b) {}

  static constexpr Bundle empty() { return Bundle(0); }

  static Bundle full(int item_count) {
    if (item_count < 0 || item_count > kMaxItems)
      throw std::length_error("bundle: item count out of range");
    return Bundle((std::uint32_t{1} << item_count) - 1);
  }

  static Bundle single(int item) {
    if (item < 0 || item >= kMaxItems) throw std::domain_error("bundle: item index out of range");
    return Bundle(std::uint32_t{1} << item);
  }

  static Bundle from_items(const std::vector<int>& items) {
    Bundle b;
    for (int j : items) b = b.with(j);
    return b;
  }

  constexpr bool contains(int item) const { return (bits >> item) & 1u; }
  constexpr bool is_empty() const { return bits == 0; }
  int size() const { return std::popcount(bits); }

  Bundle with(int item) const { return Bundle(bits | single(item).bits); }
  Bundle without(int item) const { return Bundle(bits & ~single(item).bits); }
  constexpr bool subset_of(Bundle other) const { return (bits & ~other.bits) == 0; }

  std::vector<int> items() const {
    std::vector<int> out;
    for (std::uint32_t rest = bits; rest != 0; rest &= rest - 1)
      out.push_back(std::countr_zero(rest));
    return out;
  }

  friend constexpr Bundle operator|(Bundle a, Bundle b) { return Bundle(a.bits | b.bits); }
  friend constexpr Bundle operator&(Bundle a, Bundle b) { return Bundle(a.bits & b.bits); }
  // set difference
  friend constexpr Bundle operator-(Bundle a, Bundle b) { return Bundle(a.bits & ~b.bits); }

  auto operator<=>(const Bundle&) const = default;
};

}  // namespace endowkit
