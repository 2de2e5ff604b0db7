#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "endowkit/rational.hpp"

namespace endowkit {

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class Relation { LessEq, GreaterEq, Equal };

struct LpConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable index, coefficient)
  Relation relation = Relation::LessEq;
  Rational rhs;
};

// max c.x subject to the constraints and x >= 0.
struct LinearProgram {
  int variable_count = 0;
  std::vector<Rational> objective;
  std::vector<LpConstraint> constraints;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> solution;  // size variable_count when Optimal
};

namespace detail {

// Dense two-phase primal simplex over exact rationals.  Entering and leaving
// variables follow Bland's rule (lowest index, ties on the smallest basic
// variable), which guarantees termination on the degenerate polytopes that
// show up throughout this problem family.
class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram& lp) { build(lp); }

  LpResult solve(const LinearProgram& lp) {
    LpResult result;
    if (first_artificial_ < total_cols_) {
      phase_one_objective();
      if (run_phase(/*allow_artificial=*/true) != LpStatus::Optimal)
        throw std::logic_error("simplex: phase one cannot be unbounded");
      Rational infeasibility = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (basis_[r] >= first_artificial_) infeasibility += rhs_[r];
      if (infeasibility != 0) {
        result.status = LpStatus::Infeasible;
        return result;
      }
      drive_out_artificials();
    }
    phase_two_objective(lp);
    const LpStatus status = run_phase(/*allow_artificial=*/false);
    result.status = status;
    if (status != LpStatus::Optimal) return result;
    result.solution.assign(lp.variable_count, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (basis_[r] < lp.variable_count) result.solution[basis_[r]] = rhs_[r];
    result.objective = 0;
    for (int j = 0; j < lp.variable_count; ++j)
      if (result.solution[j] != 0) result.objective += lp.objective[j] * result.solution[j];
    return result;
  }

 private:
  void build(const LinearProgram& lp) {
    const int n = lp.variable_count;
    if (static_cast<int>(lp.objective.size()) != n)
      throw std::invalid_argument("simplex: objective size must equal the variable count");

    struct Prepared {
      std::vector<Rational> coeffs;
      Relation relation;
      Rational rhs;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(lp.constraints.size());
    int slack_count = 0;
    int artificial_count = 0;
    for (const auto& row : lp.constraints) {
      Prepared p{std::vector<Rational>(n, Rational(0)), row.relation, row.rhs};
      for (const auto& [var, coeff] : row.terms) {
        if (var < 0 || var >= n) throw std::invalid_argument("simplex: variable out of range");
        p.coeffs[var] += coeff;
      }
      if (p.rhs < 0) {
        for (auto& c : p.coeffs) c = -c;
        p.rhs = -p.rhs;
        if (p.relation == Relation::LessEq)
          p.relation = Relation::GreaterEq;
        else if (p.relation == Relation::GreaterEq)
          p.relation = Relation::LessEq;
      }
      if (p.relation != Relation::Equal) ++slack_count;
      if (p.relation != Relation::LessEq) ++artificial_count;
      prepared.push_back(std::move(p));
    }

    first_artificial_ = n + slack_count;
    total_cols_ = first_artificial_ + artificial_count;

    int next_slack = n;
    int next_artificial = first_artificial_;
    for (auto& p : prepared) {
      std::vector<Rational> row(total_cols_, Rational(0));
      for (int j = 0; j < n; ++j) row[j] = std::move(p.coeffs[j]);
      int basic = -1;
      if (p.relation == Relation::LessEq) {
        row[next_slack] = 1;
        basic = next_slack++;
      } else if (p.relation == Relation::GreaterEq) {
        row[next_slack] = -1;
        ++next_slack;
        row[next_artificial] = 1;
        basic = next_artificial++;
      } else {
        row[next_artificial] = 1;
        basic = next_artificial++;
      }
      rows_.push_back(std::move(row));
      rhs_.push_back(std::move(p.rhs));
      basis_.push_back(basic);
    }
    reduced_.assign(total_cols_, Rational(0));
  }

  // maximize -(sum of artificials); price out the artificial basis.
  void phase_one_objective() {
    for (auto& c : reduced_) c = 0;
    for (int j = first_artificial_; j < total_cols_; ++j) reduced_[j] = -1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (basis_[r] >= first_artificial_) add_row_to_reduced(r, Rational(1));
  }

  void phase_two_objective(const LinearProgram& lp) {
    for (int j = 0; j < total_cols_; ++j)
      reduced_[j] = (j < lp.variable_count) ? lp.objective[j] : Rational(0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational factor = reduced_[basis_[r]];
      if (factor != 0) add_row_to_reduced(r, -factor);
    }
  }

  void add_row_to_reduced(std::size_t r, const Rational& factor) {
    const auto& row = rows_[r];
    for (int j = 0; j < total_cols_; ++j)
      if (row[j] != 0) reduced_[j] += factor * row[j];
  }

  LpStatus run_phase(bool allow_artificial) {
    const int limit = allow_artificial ? total_cols_ : first_artificial_;
    while (true) {
      int entering = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced_[j] > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      int leaving = -1;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][entering] <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = static_cast<int>(r);
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) return LpStatus::Unbounded;
      pivot(static_cast<std::size_t>(leaving), entering);
    }
  }

  void pivot(std::size_t r, int entering) {
    auto& prow = rows_[r];
    const Rational inv = Rational(1) / prow[entering];
    if (inv != 1) {
      for (auto& c : prow)
        if (c != 0) c *= inv;
      rhs_[r] *= inv;
    }
    for (std::size_t other = 0; other < rows_.size(); ++other) {
      if (other == r) continue;
      const Rational factor = rows_[other][entering];
      if (factor == 0) continue;
      auto& row = rows_[other];
      for (int j = 0; j < total_cols_; ++j)
        if (prow[j] != 0) row[j] -= factor * prow[j];
      rhs_[other] -= factor * rhs_[r];
    }
    const Rational factor = reduced_[entering];
    if (factor != 0) add_row_to_reduced(r, -factor);
    basis_[r] = entering;
  }

  // A basic artificial at level zero is pivoted onto any structural or slack
  // column; rows with no such column are redundant and dropped.
  void drive_out_artificials() {
    std::vector<std::size_t> redundant;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < first_artificial_) continue;
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (rows_[r][j] != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0)
        pivot(r, col);
      else
        redundant.push_back(r);
    }
    for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) {
      rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(*it));
      rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(*it));
      basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(*it));
    }
  }

  int first_artificial_ = 0;
  int total_cols_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;  // c_j - z_j for the current phase
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
  detail::SimplexTableau tableau(lp);
  return tableau.solve(lp);
}

}  // namespace endowkit
