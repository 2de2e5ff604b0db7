#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "endowkit/properties.hpp"
#include "endowkit/valuation.hpp"

namespace endowkit {

// An auction instance: m items and one valuation per player.
class Instance {
 public:
  Instance(int item_count, std::vector<Valuation> valuations, std::string label = "")
      : item_count_(item_count), valuations_(std::move(valuations)), label_(std::move(label)) {
    if (item_count_ < 1 || item_count_ > kMaxItems)
      throw std::length_error("instance: item count must be between 1 and 24");
    if (valuations_.empty()) throw std::invalid_argument("instance: needs at least one player");
    for (const auto& v : valuations_)
      if (v.item_count() != item_count_)
        throw std::invalid_argument("instance: all valuations must share the item count");
  }

  int item_count() const { return item_count_; }
  int player_count() const { return static_cast<int>(valuations_.size()); }
  const Valuation& valuation(int player) const { return valuations_.at(player); }
  const std::vector<Valuation>& valuations() const { return valuations_; }
  const std::string& label() const { return label_; }

 private:
  int item_count_;
  std::vector<Valuation> valuations_;
  std::string label_;
};

// Every player must be normalized and monotone.  Monotonicity is checked
// exhaustively when the item count permits.
inline void validate_instance(const Instance& inst) {
  for (int i = 0; i < inst.player_count(); ++i) {
    const auto& v = inst.valuation(i);
    if (!is_normalized(v))
      throw std::invalid_argument("instance: player " + std::to_string(i) + " is not normalized");
    if (inst.item_count() <= kMaxCheckItems && !is_monotone(v))
      throw std::invalid_argument("instance: player " + std::to_string(i) + " is not monotone");
  }
}

}  // namespace endowkit
