#pragma once

#include <compare>
#include <stdexcept>
#include <utility>
#include <vector>

#include "endowkit/bundle.hpp"
#include "endowkit/instance.hpp"
#include "endowkit/rational.hpp"

namespace endowkit {

inline constexpr int kUnallocated = -1;

// Assignment of each item to a player or to "unallocated".  The per-item
// representation forces the induced bundles to be pairwise disjoint.
class Allocation {
 public:
  explicit Allocation(std::vector<int> owners) : owners_(std::move(owners)) {
    if (owners_.empty() || owners_.size() > static_cast<std::size_t>(kMaxItems))
      throw std::length_error("allocation: item count must be between 1 and 24");
    for (int owner : owners_)
      if (owner < kUnallocated)
        throw std::invalid_argument("allocation: owner must be a player index or -1");
  }

  static Allocation none(int item_count) {
    return Allocation(std::vector<int>(item_count, kUnallocated));
  }

  static Allocation from_bundles(int item_count, const std::vector<Bundle>& bundles) {
    std::vector<int> owners(item_count, kUnallocated);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      for (int j : bundles[i].items()) {
        if (j >= item_count) throw std::domain_error("allocation: item index out of range");
        if (owners[j] != kUnallocated)
          throw std::invalid_argument("allocation: bundles must be pairwise disjoint");
        owners[j] = static_cast<int>(i);
      }
    }
    return Allocation(std::move(owners));
  }

  int item_count() const { return static_cast<int>(owners_.size()); }
  int owner(int item) const { return owners_.at(item); }
  const std::vector<int>& owners() const { return owners_; }

  void assign(int item, int new_owner) {
    if (new_owner < kUnallocated) throw std::invalid_argument("allocation: bad owner");
    owners_.at(item) = new_owner;
  }

  Bundle bundle_of(int player) const {
    Bundle b;
    for (int j = 0; j < item_count(); ++j)
      if (owners_[j] == player) b = b.with(j);
    return b;
  }

  Bundle allocated_items() const {
    Bundle b;
    for (int j = 0; j < item_count(); ++j)
      if (owners_[j] != kUnallocated) b = b.with(j);
    return b;
  }

  bool full() const { return allocated_items() == Bundle::full(item_count()); }

  auto operator<=>(const Allocation&) const = default;

 private:
  std::vector<int> owners_;
};

inline void check_allocation(const Instance& inst, const Allocation& a) {
  if (a.item_count() != inst.item_count())
    throw std::invalid_argument("allocation: item count does not match the instance");
  for (int owner : a.owners())
    if (owner >= inst.player_count())
      throw std::invalid_argument("allocation: owner index exceeds the player count");
}

inline Rational welfare(const Instance& inst, const Allocation& a) {
  check_allocation(inst, a);
  Rational total = 0;
  for (int i = 0; i < inst.player_count(); ++i) total += inst.valuation(i).value(a.bundle_of(i));
  return total;
}

// Nonnegative per-item prices.
class PriceVector {
 public:
  explicit PriceVector(std::vector<Rational> prices) : prices_(std::move(prices)) {
    if (prices_.empty() || prices_.size() > static_cast<std::size_t>(kMaxItems))
      throw std::length_error("prices: item count must be between 1 and 24");
    for (const auto& p : prices_)
      if (p < 0) throw std::invalid_argument("prices: item prices must be nonnegative");
  }

  static PriceVector zeros(int item_count) {
    return PriceVector(std::vector<Rational>(item_count, Rational(0)));
  }

  int item_count() const { return static_cast<int>(prices_.size()); }
  const Rational& price(int item) const { return prices_.at(item); }
  const std::vector<Rational>& prices() const { return prices_; }

  Rational total(Bundle t) const {
    Rational sum = 0;
    for (int j : t.items()) sum += prices_.at(j);
    return sum;
  }

 private:
  std::vector<Rational> prices_;
};

}  // namespace endowkit
