#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permsched/model/permutation.hpp"
#include "permsched/scheduler/schedule.hpp"
#include "permsched/subproblems/instance.hpp"
#include "permsched/subproblems/oracles.hpp"

namespace permsched {

namespace detail {

inline constexpr double kGreedyTieTol = 1e-9;

/// Appends to `order` the elements allowed by `candidates`, one per step,
/// each time taking the largest marginal gain (ties: smallest element id).
template <class ValueFn, class IdFn>
void greedy_extend(std::size_t m, std::uint64_t& realized, std::uint64_t candidates,
                   std::vector<std::size_t>& order, ValueFn&& value_of, IdFn&& id_of) {
  for (;;) {
    const double base = value_of(realized);
    std::size_t pick = m;
    double best_gain = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if ((realized & bit) || !(candidates & bit)) continue;
      const double gain = value_of(realized | bit) - base;
      if (pick == m || gain > best_gain + kGreedyTieTol) {
        pick = e;
        best_gain = gain;
      } else if (gain >= best_gain - kGreedyTieTol && id_of(e) < id_of(pick)) {
        pick = e;
        best_gain = std::max(best_gain, gain);
      }
    }
    if (pick == m) return;
    realized |= std::uint64_t{1} << pick;
    order.push_back(pick);
  }
}

inline std::uint64_t full_mask(std::size_t m) {
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

}  // namespace detail

/// Realizes, at every step, the element with the largest marginal gain in
/// step value.
inline Schedule greedy_marginal(const Instance& inst) {
  const std::size_t m = inst.ground_size();
  StepValueCache cache(inst);
  std::vector<std::size_t> order;
  std::uint64_t realized = 0;
  detail::greedy_extend(m, realized, detail::full_mask(m), order, cache,
                        [&](std::size_t e) { return inst.orderable[e]; });
  auto s = evaluate_schedule(inst, Permutation::from_order(order), cache);
  s.method = Method::GreedyMarginal;
  return s;
}

/// Realizes the support of one optimal subproblem solution first (greedily),
/// then the remaining elements (greedily).
inline Schedule greedy_optimal_first(const Instance& inst) {
  const std::size_t m = inst.ground_size();
  StepValueCache cache(inst);
  const auto support = optimal_support(inst);
  std::uint64_t preferred = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (support[i]) preferred |= std::uint64_t{1} << i;
  }
  auto id_of = [&](std::size_t e) { return inst.orderable[e]; };
  std::vector<std::size_t> order;
  std::uint64_t realized = 0;
  detail::greedy_extend(m, realized, preferred, order, cache, id_of);
  detail::greedy_extend(m, realized, detail::full_mask(m), order, cache, id_of);
  auto s = evaluate_schedule(inst, Permutation::from_order(order), cache);
  s.method = Method::GreedyFirst;
  return s;
}

}  // namespace permsched
