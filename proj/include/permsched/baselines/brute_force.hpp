#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "permsched/model/permutation.hpp"
#include "permsched/scheduler/schedule.hpp"
#include "permsched/subproblems/instance.hpp"
#include "permsched/subproblems/oracles.hpp"

namespace permsched {

inline constexpr std::size_t kBruteForceLimit = 9;

/// Maximizes sum_j value_of(H^j) over all m! orderings. Positions are visited
/// in lexicographic order and only strict improvements replace the incumbent,
/// so ties resolve to the lexicographically smallest permutation.
template <class ValueFn>
Schedule brute_force_with(std::size_t m, ValueFn&& value_of) {
  if (m > kBruteForceLimit) {
    throw std::length_error("brute force limited to " + std::to_string(kBruteForceLimit) +
                            " elements, got " + std::to_string(m));
  }
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<double> table(subsets);
  for (std::size_t bits = 0; bits < subsets; ++bits) table[bits] = value_of(std::uint64_t{bits});

  std::vector<std::size_t> positions(m);
  std::iota(positions.begin(), positions.end(), std::size_t{1});
  std::vector<std::size_t> best = positions;
  double best_total = -1.0;
  std::vector<std::size_t> order(m);
  do {
    for (std::size_t i = 0; i < m; ++i) order[positions[i] - 1] = i;
    double total = 0.0;
    std::size_t bits = 0;
    for (std::size_t e : order) {
      bits |= std::size_t{1} << e;
      total += table[bits];
    }
    if (total > best_total + 1e-9) {
      best_total = total;
      best = positions;
    }
  } while (std::next_permutation(positions.begin(), positions.end()));

  auto s = evaluate_with(Permutation(best), [&](std::uint64_t bits) { return table[bits]; });
  s.method = Method::Brute;
  return s;
}

inline Schedule brute_force(const Instance& inst) {
  if (inst.ground_size() > kBruteForceLimit) {
    throw std::length_error("brute force limited to " + std::to_string(kBruteForceLimit) +
                            " elements, got " + std::to_string(inst.ground_size()));
  }
  StepValueCache cache(inst);
  return brute_force_with(inst.ground_size(), cache);
}

}  // namespace permsched
