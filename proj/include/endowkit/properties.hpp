#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "endowkit/bundle.hpp"
#include "endowkit/rational.hpp"
#include "endowkit/valuation.hpp"

namespace endowkit {

// Exhaustive structural checks enumerate 2^m (or 3^m) bundles.
inline constexpr int kMaxCheckItems = 16;

// On failure, (a, b) are bundles violating the defining inequality:
//   normalized:  a = b = empty,       v(empty) != 0
//   monotone:    a ⊆ b,               v(a) > v(b)
//   submodular:  v(a) + v(b) < v(a ∪ b) + v(a ∩ b)
//   subadditive: v(a) + v(b) < v(a ∪ b)
struct PropertyResult {
  bool holds = true;
  Bundle a{};
  Bundle b{};
  explicit operator bool() const { return holds; }
};

namespace detail {

inline void check_property_size(const Valuation& v) {
  if (v.item_count() > kMaxCheckItems)
    throw std::length_error("property check: item count exceeds the exhaustive-check cap of 16");
}

inline std::vector<Rational> value_table(const Valuation& v) {
  const std::uint32_t n = std::uint32_t{1} << v.item_count();
  std::vector<Rational> table;
  table.reserve(n);
  for (std::uint32_t t = 0; t < n; ++t) table.push_back(v.value(Bundle(t)));
  return table;
}

}  // namespace detail

inline PropertyResult is_normalized(const Valuation& v) {
  if (v.value(Bundle::empty()) != 0) return {false, Bundle::empty(), Bundle::empty()};
  return {};
}

inline PropertyResult is_monotone(const Valuation& v) {
  detail::check_property_size(v);
  const auto table = detail::value_table(v);
  const int m = v.item_count();
  for (std::uint32_t t = 0; t < table.size(); ++t) {
    for (int j = 0; j < m; ++j) {
      if ((t >> j) & 1u) continue;
      const std::uint32_t bigger = t | (std::uint32_t{1} << j);
      if (table[t] > table[bigger]) return {false, Bundle(t), Bundle(bigger)};
    }
  }
  return {};
}

// Diminishing-returns form: v(j|S) >= v(j|S ∪ {k}) for all S and j, k ∉ S.
// Failure is reported as the equivalent lattice violation on (S∪{j}, S∪{k}).
inline PropertyResult is_submodular(const Valuation& v) {
  detail::check_property_size(v);
  const auto table = detail::value_table(v);
  const int m = v.item_count();
  for (std::uint32_t s = 0; s < table.size(); ++s) {
    for (int j = 0; j < m; ++j) {
      if ((s >> j) & 1u) continue;
      const std::uint32_t sj = s | (std::uint32_t{1} << j);
      for (int k = j + 1; k < m; ++k) {
        if ((s >> k) & 1u) continue;
        const std::uint32_t sk = s | (std::uint32_t{1} << k);
        if (table[sj] + table[sk] < table[sj | sk] + table[s])
          return {false, Bundle(sj), Bundle(sk)};
      }
    }
  }
  return {};
}

// Enumerates disjoint pairs only; for monotone valuations that is equivalent
// to the defining inequality over all pairs.
inline PropertyResult is_subadditive(const Valuation& v) {
  detail::check_property_size(v);
  const auto table = detail::value_table(v);
  const std::uint32_t universe = static_cast<std::uint32_t>(table.size()) - 1;
  for (std::uint32_t a = 1; a <= universe; ++a) {
    const std::uint32_t rest = universe & ~a;
    for (std::uint32_t b = rest; b != 0; b = (b - 1) & rest) {
      if (b < a) break;  // unordered pairs once
      if (table[a] + table[b] < table[a | b]) return {false, Bundle(a), Bundle(b)};
    }
  }
  return {};
}

}  // namespace endowkit
