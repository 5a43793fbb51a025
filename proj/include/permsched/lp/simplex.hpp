#pragma once

// Dense two-phase primal simplex with Bland's rule and bounded columns.
//
// The program is rewritten over columns 0 <= x_c <= u_c (shifted, mirrored or
// split variables) and rows are sign-normalized so that every right-hand side
// is nonnegative. A column that reaches its upper bound is complemented
// (x_c -> u_c - x_c), so nonbasic columns always sit at zero. Phase one
// minimizes the sum of artificial variables; phase two optimizes the real
// objective over the remaining basis.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "permsched/lp/linear_program.hpp"

namespace permsched {

struct SolveOptions {
  double feasibility_tol = 1e-9;
  double comparison_tol = 1e-6;
  std::size_t iteration_limit = 50'000;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0), obj_(cols + 1, 0.0),
        basis_(rows, 0), upper_(cols, kInfinity), flipped_(cols, false) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  double& obj(std::size_t c) { return obj_[c]; }
  double objective_value() const { return obj_[cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  double& upper(std::size_t c) { return upper_[c]; }
  double upper(std::size_t c) const { return upper_[c]; }
  bool flipped(std::size_t c) const { return flipped_[c]; }

  /// Rebuilds the objective row as c_B B^-1 A - c for cost vector `cost`,
  /// given over uncomplemented columns.
  void price(const std::vector<double>& cost) {
    oriented_.assign(cols_, 0.0);
    double constant = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
      oriented_[c] = flipped_[c] ? -cost[c] : cost[c];
      if (flipped_[c]) constant += cost[c] * upper_[c];
    }
    for (std::size_t c = 0; c <= cols_; ++c) obj_[c] = c < cols_ ? -oriented_[c] : constant;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = oriented_[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &data_[r * (cols_ + 1)];
      for (std::size_t c = 0; c <= cols_; ++c) obj_[c] += cb * row[c];
    }
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    double* pr = &data_[prow * (cols_ + 1)];
    const double inv = 1.0 / pr[pcol];
    nonzero_.clear();
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (pr[c] != 0.0) {
        pr[c] *= inv;
        nonzero_.push_back(c);
      }
    }
    pr[pcol] = 1.0;
    auto eliminate = [&](double* row) {
      const double f = row[pcol];
      if (f == 0.0) return;
      for (std::size_t c : nonzero_) {
        double v = row[c] - f * pr[c];
        row[c] = std::abs(v) < kDropTol ? 0.0 : v;
      }
      row[pcol] = 0.0;
    };
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != prow) eliminate(&data_[r * (cols_ + 1)]);
    }
    eliminate(obj_.data());
    basis_[prow] = pcol;
  }

  /// Complements nonbasic column c, moving it to its other bound.
  void flip_column(std::size_t c) {
    const double u = upper_[c];
    for (std::size_t r = 0; r < rows_; ++r) {
      double& a = at(r, c);
      if (a == 0.0) continue;
      rhs(r) -= a * u;
      a = -a;
    }
    if (obj_[c] != 0.0) {
      obj_[cols_] -= obj_[c] * u;
      obj_[c] = -obj_[c];
    }
    flipped_[c] = !flipped_[c];
  }

  /// Complements the basic variable of row r. The objective row is expressed
  /// over nonbasic columns only and needs no change.
  void flip_basic(std::size_t r) {
    const std::size_t b = basis_[r];
    double* row = &data_[r * (cols_ + 1)];
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c != b && row[c] != 0.0) row[c] = -row[c];
    }
    row[cols_] = upper_[b] - row[cols_];
    flipped_[b] = !flipped_[b];
  }

  void erase_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  static constexpr double kDropTol = 1e-13;

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  std::vector<double> upper_;
  std::vector<bool> flipped_;
  std::vector<double> oriented_;
  std::vector<std::size_t> nonzero_;
};

enum class PhaseResult { Optimal, Unbounded, IterationLimit };

/// Maximizes the priced objective with Bland's rule over columns with `allowed[c]`.
inline PhaseResult run_phase(Tableau& t, const std::vector<bool>& allowed,
                             const SolveOptions& opts, std::size_t& iterations) {
  constexpr double kReducedCostTol = 1e-9;
  constexpr double kPivotTol = 1e-7;
  for (;;) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (allowed[c] && t.obj(c) < -kReducedCostTol) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) return PhaseResult::Optimal;
    if (iterations >= opts.iteration_limit) return PhaseResult::IterationLimit;

    // The step is limited by a basic variable falling to zero, a basic
    // variable rising to its upper bound, or the entering column reaching its
    // own bound. Ties go to the smallest variable index.
    enum class Limit { None, Lower, Upper, Own };
    Limit kind = Limit::None;
    std::size_t leave = t.rows();
    std::size_t leave_var = 0;
    double step = std::numeric_limits<double>::infinity();
    auto consider = [&](double ratio, Limit k, std::size_t row, std::size_t var) {
      const double slack = 1e-12 * std::max(1.0, std::abs(step));
      if (kind == Limit::None || ratio < step - slack ||
          (ratio <= step + slack && var < leave_var)) {
        step = kind == Limit::None ? ratio : std::min(step, ratio);
        kind = k;
        leave = row;
        leave_var = var;
      }
    };
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      const std::size_t b = t.basis()[r];
      if (a > kPivotTol) {
        consider(std::max(0.0, t.rhs(r)) / a, Limit::Lower, r, b);
      } else if (a < -kPivotTol && std::isfinite(t.upper(b))) {
        consider(std::max(0.0, t.upper(b) - t.rhs(r)) / -a, Limit::Upper, r, b);
      }
    }
    if (std::isfinite(t.upper(enter))) consider(t.upper(enter), Limit::Own, t.rows(), enter);
    if (kind == Limit::None) return PhaseResult::Unbounded;
    if (kind == Limit::Own) {
      t.flip_column(enter);
    } else {
      if (kind == Limit::Upper) t.flip_basic(leave);
      t.pivot(leave, enter);
    }
    ++iterations;
  }
}

/// How an original variable is expressed in bounded nonnegative columns.
struct ColumnMap {
  enum class Kind { Fixed, Shifted, Mirrored, Split } kind = Kind::Shifted;
  double offset = 0.0;  // lower bound (Shifted), upper bound (Mirrored), value (Fixed)
  std::size_t column = 0;
  std::size_t negative_column = 0;  // Split only
};

}  // namespace detail

/// Solves `lp` to optimality or reports infeasible / unbounded / iteration limit.
inline LpSolution solve(const LinearProgram& lp, const SolveOptions& opts = {}) {
  using detail::ColumnMap;
  const std::size_t n = lp.variable_count();
  std::vector<VariableBounds> bounds = lp.all_bounds();
  LpSolution result;

  auto tighten = [&](std::size_t k, double lo, double hi) {
    bounds[k].lower = std::max(bounds[k].lower, lo);
    bounds[k].upper = std::min(bounds[k].upper, hi);
  };

  // Presolve: empty rows are checked directly, singleton rows become bounds.
  std::vector<const LinearConstraint*> rows;
  for (const auto& c : lp.constraints()) {
    const auto& terms = c.terms();
    if (terms.empty()) {
      if (c.violation(std::vector<double>{}) > opts.feasibility_tol) return result;
      continue;
    }
    if (terms.size() == 1) {
      const auto [v, a] = terms.front();
      const double b = c.rhs() / a;
      const bool flip = a < 0.0;
      switch (c.relation()) {
        case Relation::Equal: tighten(v.index, b, b); break;
        case Relation::LessEqual:
          flip ? tighten(v.index, b, kInfinity) : tighten(v.index, -kInfinity, b);
          break;
        case Relation::GreaterEqual:
          flip ? tighten(v.index, -kInfinity, b) : tighten(v.index, b, kInfinity);
          break;
      }
      continue;
    }
    rows.push_back(&c);
  }

  std::vector<ColumnMap> map(n);
  std::vector<double> column_upper;
  for (std::size_t k = 0; k < n; ++k) {
    auto& b = bounds[k];
    if (b.lower > b.upper) {
      if (b.lower - b.upper > opts.feasibility_tol * std::max(1.0, std::abs(b.lower))) {
        return result;
      }
      b.upper = b.lower;
    }
    auto& cm = map[k];
    if (b.lower == b.upper) {
      cm.kind = ColumnMap::Kind::Fixed;
      cm.offset = b.lower;
    } else if (std::isfinite(b.lower)) {
      cm.kind = ColumnMap::Kind::Shifted;
      cm.offset = b.lower;
      cm.column = column_upper.size();
      column_upper.push_back(b.upper - b.lower);
    } else if (std::isfinite(b.upper)) {
      cm.kind = ColumnMap::Kind::Mirrored;
      cm.offset = b.upper;
      cm.column = column_upper.size();
      column_upper.push_back(kInfinity);
    } else {
      cm.kind = ColumnMap::Kind::Split;
      cm.column = column_upper.size();
      cm.negative_column = cm.column + 1;
      column_upper.push_back(kInfinity);
      column_upper.push_back(kInfinity);
    }
  }
  const std::size_t structural = column_upper.size();

  // Assemble rows over structural columns: sum a_c col_c  rel  rhs.
  struct Row {
    std::vector<std::pair<std::size_t, double>> coefs;
    Relation rel;
    double rhs;
  };
  std::vector<Row> built;
  built.reserve(rows.size());
  for (const auto* c : rows) {
    Row row{{}, c->relation(), c->rhs()};
    for (const auto& [v, a] : c->terms()) {
      const auto& cm = map[v.index];
      switch (cm.kind) {
        case ColumnMap::Kind::Fixed: row.rhs -= a * cm.offset; break;
        case ColumnMap::Kind::Shifted:
          row.rhs -= a * cm.offset;
          row.coefs.emplace_back(cm.column, a);
          break;
        case ColumnMap::Kind::Mirrored:
          row.rhs -= a * cm.offset;
          row.coefs.emplace_back(cm.column, -a);
          break;
        case ColumnMap::Kind::Split:
          row.coefs.emplace_back(cm.column, a);
          row.coefs.emplace_back(cm.negative_column, -a);
          break;
      }
    }
    if (row.coefs.empty()) {
      const double lhs = 0.0;
      const double viol = row.rel == Relation::LessEqual  ? lhs - row.rhs
                          : row.rel == Relation::Equal ? std::abs(lhs - row.rhs)
                                                       : row.rhs - lhs;
      if (viol > opts.feasibility_tol * std::max(1.0, std::abs(row.rhs))) return result;
      continue;
    }
    built.push_back(std::move(row));
  }

  // Normalize to nonnegative rhs, then count slacks and artificials.
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  double rhs_scale = 1.0;
  for (auto& row : built) {
    if (row.rhs < 0.0) {
      row.rhs = -row.rhs;
      for (auto& [c, a] : row.coefs) a = -a;
      if (row.rel == Relation::LessEqual) {
        row.rel = Relation::GreaterEqual;
      } else if (row.rel == Relation::GreaterEqual) {
        row.rel = Relation::LessEqual;
      }
    }
    rhs_scale = std::max(rhs_scale, row.rhs);
    if (row.rel != Relation::Equal) ++slacks;
    if (row.rel != Relation::LessEqual) ++artificials;
  }

  const std::size_t m = built.size();
  const std::size_t first_slack = structural;
  const std::size_t first_art = structural + slacks;
  const std::size_t cols = first_art + artificials;
  detail::Tableau t(m, cols);
  for (std::size_t c = 0; c < structural; ++c) t.upper(c) = column_upper[c];
  {
    std::size_t next_slack = first_slack;
    std::size_t next_art = first_art;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& row = built[r];
      for (const auto& [c, a] : row.coefs) t.at(r, c) += a;
      t.rhs(r) = row.rhs;
      switch (row.rel) {
        case Relation::LessEqual:
          t.at(r, next_slack) = 1.0;
          t.basis()[r] = next_slack++;
          break;
        case Relation::GreaterEqual:
          t.at(r, next_slack++) = -1.0;
          t.at(r, next_art) = 1.0;
          t.basis()[r] = next_art++;
          break;
        case Relation::Equal:
          t.at(r, next_art) = 1.0;
          t.basis()[r] = next_art++;
          break;
      }
    }
  }

  std::vector<bool> allowed(cols, true);
  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = first_art; c < cols; ++c) phase1[c] = -1.0;
    t.price(phase1);
    const auto r1 = detail::run_phase(t, allowed, opts, result.iterations);
    if (r1 == detail::PhaseResult::IterationLimit) {
      result.status = LpStatus::IterationLimit;
      return result;
    }
    if (-t.objective_value() > opts.feasibility_tol * rhs_scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining artificials out of the basis; rows that cannot be
    // pivoted on a real column are redundant.
    for (std::size_t r = t.rows(); r-- > 0;) {
      if (t.basis()[r] < first_art) continue;
      std::size_t pcol = cols;
      for (std::size_t c = 0; c < first_art; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          pcol = c;
          break;
        }
      }
      if (pcol == cols) {
        t.erase_row(r);
      } else {
        t.pivot(r, pcol);
      }
    }
    for (std::size_t c = first_art; c < cols; ++c) allowed[c] = false;
  }

  std::vector<double> cost(cols, 0.0);
  const double sign = lp.sense() == Sense::Maximize ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double c = sign * lp.objective()[k];
    const auto& cm = map[k];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: break;
      case ColumnMap::Kind::Shifted: cost[cm.column] = c; break;
      case ColumnMap::Kind::Mirrored: cost[cm.column] = -c; break;
      case ColumnMap::Kind::Split:
        cost[cm.column] = c;
        cost[cm.negative_column] = -c;
        break;
    }
  }
  t.price(cost);
  const auto r2 = detail::run_phase(t, allowed, opts, result.iterations);
  if (r2 == detail::PhaseResult::IterationLimit) {
    result.status = LpStatus::IterationLimit;
    return result;
  }
  if (r2 == detail::PhaseResult::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  std::vector<double> column_value(cols, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) column_value[t.basis()[r]] = std::max(0.0, t.rhs(r));
  for (std::size_t c = 0; c < structural; ++c) {
    if (t.flipped(c)) column_value[c] = t.upper(c) - column_value[c];
    column_value[c] = std::clamp(column_value[c], 0.0, t.upper(c));
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& cm = map[k];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: x[k] = cm.offset; break;
      case ColumnMap::Kind::Shifted: x[k] = cm.offset + column_value[cm.column]; break;
      case ColumnMap::Kind::Mirrored: x[k] = cm.offset - column_value[cm.column]; break;
      case ColumnMap::Kind::Split:
        x[k] = column_value[cm.column] - column_value[cm.negative_column];
        break;
    }
  }
  result.status = LpStatus::Optimal;
  result.objective = lp.evaluate(x);
  result.assignment = std::move(x);
  return result;
}

/// True iff `sol` is optimal-status, feasible for `lp` within `tol`, and its
/// reported objective matches the assignment within `tol`.
inline bool verify(const LinearProgram& lp, const LpSolution& sol, double tol = 1e-6) {
  if (!sol.optimal() || !sol.assignment || !sol.objective) return false;
  const auto& x = *sol.assignment;
  if (x.size() != lp.variable_count()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto& b = lp.all_bounds()[k];
    if (!std::isfinite(x[k]) || x[k] < b.lower - tol || x[k] > b.upper + tol) return false;
  }
  for (const auto& c : lp.constraints()) {
    if (c.violation(x) > tol) return false;
  }
  return std::abs(lp.evaluate(x) - *sol.objective) <= tol;
}

}  // namespace permsched
