#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permsched/model/permutation.hpp"
#include "permsched/subproblems/instance.hpp"
#include "permsched/subproblems/oracles.hpp"

namespace permsched {

enum class Method { Lp, GreedyMarginal, GreedyFirst, Brute, Evaluated };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Lp: return "lp";
    case Method::GreedyMarginal: return "greedy-marginal";
    case Method::GreedyFirst: return "greedy-first";
    case Method::Brute: return "brute";
    case Method::Evaluated: return "evaluated";
  }
  return "unknown";
}

inline Method method_from_string(const std::string& s) {
  for (Method m : {Method::Lp, Method::GreedyMarginal, Method::GreedyFirst, Method::Brute,
                   Method::Evaluated}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + s + "'");
}

/// An ordering together with its per-step optimal values.
struct Schedule {
  Permutation permutation;
  std::vector<double> step_values;
  double total = 0.0;
  Method method = Method::Evaluated;
  std::optional<double> lp_bound;
  std::optional<bool> certified;
  bool repaired = false;        // integrality repair was needed
  std::size_t repair_nodes = 0;  // branch-and-bound nodes explored during repair

  /// Element ids in realization order.
  std::vector<int> order_ids(const Instance& inst) const {
    std::vector<int> ids;
    for (std::size_t i : permutation.order()) ids.push_back(inst.orderable.at(i));
    return ids;
  }
};

/// Per-step values of `p` computed by `value_of(bits)` on the growing chain.
template <class ValueFn>
Schedule evaluate_with(const Permutation& p, ValueFn&& value_of) {
  Schedule s;
  s.permutation = p;
  std::uint64_t bits = 0;
  for (std::size_t element : p.order()) {
    bits |= std::uint64_t{1} << element;
    s.step_values.push_back(value_of(bits));
  }
  s.total = std::accumulate(s.step_values.begin(), s.step_values.end(), 0.0);
  return s;
}

inline Schedule evaluate_schedule(const Instance& inst, const Permutation& p, StepValueCache& cache) {
  if (p.size() != inst.ground_size()) {
    throw std::invalid_argument("permutation size does not match the ground set");
  }
  return evaluate_with(p, cache);
}

inline Schedule evaluate_schedule(const Instance& inst, const Permutation& p) {
  StepValueCache cache(inst);
  return evaluate_schedule(inst, p, cache);
}

}  // namespace permsched
