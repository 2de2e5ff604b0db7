#pragma once

// Test-only LP oracle: enumerates all basic solutions of the standard-form
// system by Gaussian elimination and keeps the feasible ones.  Independent of
// the simplex implementation it is used to check.

#include <optional>
#include <vector>

#include "endowkit/rational.hpp"
#include "endowkit/simplex.hpp"

namespace endowkit::testing {

struct BasicSolutions {
  std::vector<std::vector<Rational>> vertices;  // structural variables only
  std::vector<Rational> objectives;
};

inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline BasicSolutions enumerate_basic_feasible_solutions(const LinearProgram& lp) {
  const int n = lp.variable_count;
  // standard form: append one slack per inequality row
  int slack = 0;
  for (const auto& row : lp.constraints)
    if (row.relation != Relation::Equal) ++slack;
  const int cols = n + slack;
  const std::size_t rows = lp.constraints.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols, Rational(0)));
  std::vector<Rational> b(rows);
  int next_slack = n;
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& [var, coeff] : lp.constraints[r].terms) a[r][var] += coeff;
    b[r] = lp.constraints[r].rhs;
    if (lp.constraints[r].relation == Relation::LessEq)
      a[r][next_slack++] = 1;
    else if (lp.constraints[r].relation == Relation::GreaterEq)
      a[r][next_slack++] = -1;
  }

  BasicSolutions out;
  std::vector<int> pick(rows);
  // all column subsets of size = rows
  auto recurse = [&](auto&& self, std::size_t depth, int start) -> void {
    if (depth == rows) {
      std::vector<std::vector<Rational>> basis(rows, std::vector<Rational>(rows));
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < rows; ++c) basis[r][c] = a[r][pick[c]];
      const auto solved = solve_square(std::move(basis), b);
      if (!solved) return;
      for (const auto& value : *solved)
        if (value < 0) return;
      std::vector<Rational> x(cols, Rational(0));
      for (std::size_t c = 0; c < rows; ++c) x[pick[c]] = (*solved)[c];
      Rational objective = 0;
      std::vector<Rational> structural(x.begin(), x.begin() + n);
      for (int j = 0; j < n; ++j) objective += lp.objective[j] * structural[j];
      out.vertices.push_back(std::move(structural));
      out.objectives.push_back(std::move(objective));
      return;
    }
    for (int c = start; c < cols; ++c) {
      pick[depth] = c;
      self(self, depth + 1, c + 1);
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

inline std::optional<Rational> oracle_lp_max(const LinearProgram& lp) {
  const auto all = enumerate_basic_feasible_solutions(lp);
  if (all.objectives.empty()) return std::nullopt;
  Rational best = all.objectives.front();
  for (const auto& value : all.objectives)
    if (value > best) best = value;
  return best;
}

}  // namespace endowkit::testing
