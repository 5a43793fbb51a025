#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace permsched {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Index of a variable inside a LinearProgram.
struct VarId {
  std::size_t index = 0;

  friend constexpr bool operator==(VarId, VarId) = default;
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

enum class Relation { LessEqual, Equal, GreaterEqual };

using Term = std::pair<VarId, double>;

/// Sparse linear constraint `sum coef * x  rel  rhs`. Terms are kept sorted by
/// variable index with duplicates merged and zero coefficients removed.
class LinearConstraint {
 public:
  LinearConstraint() = default;

  LinearConstraint(std::vector<Term> terms, Relation relation, double rhs)
      : terms_(std::move(terms)), relation_(relation), rhs_(rhs) {
    normalize();
  }

  const std::vector<Term>& terms() const { return terms_; }
  Relation relation() const { return relation_; }
  double rhs() const { return rhs_; }

  double coefficient(VarId v) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term& t, VarId id) { return t.first < id; });
    return (it != terms_.end() && it->first == v) ? it->second : 0.0;
  }

  double activity(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [v, c] : terms_) s += c * x.at(v.index);
    return s;
  }

  /// Amount by which `x` violates the constraint (0 when satisfied).
  double violation(const std::vector<double>& x) const {
    const double lhs = activity(x);
    switch (relation_) {
      case Relation::LessEqual: return std::max(0.0, lhs - rhs_);
      case Relation::GreaterEqual: return std::max(0.0, rhs_ - lhs);
      case Relation::Equal: return std::abs(lhs - rhs_);
    }
    return 0.0;
  }

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!merged.empty() && merged.back().first == t.first) {
        merged.back().second += t.second;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const Term& t) { return t.second == 0.0; });
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
  Relation relation_ = Relation::LessEqual;
  double rhs_ = 0.0;
};

enum class Sense { Maximize, Minimize };

struct VariableBounds {
  double lower = 0.0;
  double upper = kInfinity;
};

/// A linear program over real variables with per-variable bounds.
class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::Maximize) : sense_(sense) {}

  VarId add_variable(double lower = 0.0, double upper = kInfinity, double objective = 0.0) {
    if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
      throw std::invalid_argument("variable bounds out of order");
    }
    bounds_.push_back({lower, upper});
    objective_.push_back(objective);
    return VarId{bounds_.size() - 1};
  }

  std::vector<VarId> add_variables(std::size_t count, double lower = 0.0,
                                   double upper = kInfinity) {
    std::vector<VarId> ids;
    ids.reserve(count);
    for (std::size_t k = 0; k < count; ++k) ids.push_back(add_variable(lower, upper));
    return ids;
  }

  void add_constraint(LinearConstraint c) {
    for (const auto& [v, coef] : c.terms()) check_var(v);
    constraints_.push_back(std::move(c));
  }

  void add_constraints(std::vector<LinearConstraint> cs) {
    for (auto& c : cs) add_constraint(std::move(c));
  }

  void add_objective(VarId v, double coef) {
    check_var(v);
    objective_[v.index] += coef;
  }

  void set_objective(VarId v, double coef) {
    check_var(v);
    objective_[v.index] = coef;
  }

  void clear_objective() { std::fill(objective_.begin(), objective_.end(), 0.0); }

  void set_bounds(VarId v, double lower, double upper) {
    check_var(v);
    if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
      throw std::invalid_argument("variable bounds out of order");
    }
    bounds_[v.index] = {lower, upper};
  }

  void set_sense(Sense s) { sense_ = s; }

  Sense sense() const { return sense_; }
  std::size_t variable_count() const { return bounds_.size(); }
  const VariableBounds& bounds(VarId v) const { return bounds_.at(v.index); }
  const std::vector<VariableBounds>& all_bounds() const { return bounds_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  double evaluate(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < objective_.size(); ++k) s += objective_[k] * x.at(k);
    return s;
  }

 private:
  void check_var(VarId v) const {
    if (v.index >= bounds_.size()) {
      throw std::invalid_argument("constraint references undeclared variable " +
                                  std::to_string(v.index));
    }
  }

  Sense sense_;
  std::vector<VariableBounds> bounds_;
  std::vector<double> objective_;
  std::vector<LinearConstraint> constraints_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::optional<double> objective;
  std::optional<std::vector<double>> assignment;
  std::size_t iterations = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
  double value(VarId v) const { return assignment.value().at(v.index); }
};

}  // namespace permsched
