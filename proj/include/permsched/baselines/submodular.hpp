#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "permsched/baselines/brute_force.hpp"
#include "permsched/baselines/greedy.hpp"
#include "permsched/model/permutation.hpp"
#include "permsched/scheduler/schedule.hpp"

namespace permsched {

/// Monotone set function over elements 0..m-1: either additive with
/// nonnegative weights, or coverage f(S) = |union of covers[i], i in S|.
struct SetFunctionSpec {
  enum class Kind { Additive, Coverage };

  Kind kind = Kind::Additive;
  std::vector<double> weights;
  std::vector<std::vector<int>> covers;

  static SetFunctionSpec additive(std::vector<double> w) {
    for (double x : w) {
      if (!(x >= 0.0)) throw std::invalid_argument("additive weights must be nonnegative");
    }
    return {Kind::Additive, std::move(w), {}};
  }

  static SetFunctionSpec coverage(std::vector<std::vector<int>> sets) {
    return {Kind::Coverage, {}, std::move(sets)};
  }

  std::size_t size() const { return kind == Kind::Additive ? weights.size() : covers.size(); }

  double operator()(std::uint64_t bits) const {
    if (kind == Kind::Additive) {
      double s = 0.0;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if ((bits >> i) & 1U) s += weights[i];
      }
      return s;
    }
    std::set<int> covered;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      if ((bits >> i) & 1U) covered.insert(covers[i].begin(), covers[i].end());
    }
    return static_cast<double>(covered.size());
  }
};

/// Unconstrained greedy: each step realizes the element of largest marginal
/// gain in f (ties: smallest index). Step values are f of the realized prefix.
inline Schedule submodular_greedy(const SetFunctionSpec& f, std::size_t m) {
  if (f.size() != m) throw std::invalid_argument("set function size does not match m");
  if (f.kind == SetFunctionSpec::Kind::Additive) {
    for (double w : f.weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("additive weights must be nonnegative");
    }
  }
  std::vector<std::size_t> order;
  std::uint64_t realized = 0;
  detail::greedy_extend(m, realized, detail::full_mask(m), order, f,
                        [](std::size_t e) { return e; });
  auto s = evaluate_with(Permutation::from_order(order), f);
  s.method = Method::GreedyMarginal;
  return s;
}

inline Schedule brute_force(const SetFunctionSpec& f, std::size_t m) {
  if (f.size() != m) throw std::invalid_argument("set function size does not match m");
  return brute_force_with(m, f);
}

/// (1/m) sum_{j=1}^m (1 - (1 - 1/m)^j): the guaranteed fraction of the optimal
/// cumulative value achieved by the unconstrained greedy.
inline double ratio_bound(std::size_t m) {
  if (m < 1) throw std::invalid_argument("ratio bound needs m >= 1");
  const double q = 1.0 - 1.0 / static_cast<double>(m);
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    power *= q;
    sum += 1.0 - power;
  }
  return sum / static_cast<double>(m);
}

}  // namespace permsched
