#pragma once

// Test-side reference computations written independently of the library's
// oracles: DFS augmenting-path max flow, subset-enumeration matching, and
// permutation enumeration with std::next_permutation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "permsched/subproblems/instance.hpp"

namespace permsched::testing {

/// Max flow by repeated DFS augmentation on a capacity matrix.
inline double reference_max_flow(const FlowInstance& d, const std::vector<bool>& arc_available) {
  const auto n = static_cast<std::size_t>(d.node_count);
  double finite = 0.0;
  for (const auto& a : d.arcs) {
    if (!a.uncapacitated) finite += a.capacity;
  }
  std::vector<std::vector<double>> cap(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < d.arcs.size(); ++k) {
    if (!arc_available[k]) continue;
    const auto& a = d.arcs[k];
    cap[a.tail][a.head] += a.uncapacitated ? std::max(finite, 1.0) : a.capacity;
  }
  const auto s = static_cast<std::size_t>(d.source);
  const auto t = static_cast<std::size_t>(d.sink);
  double total = 0.0;
  for (;;) {
    std::vector<bool> seen(n, false);
    std::function<double(std::size_t, double)> dfs = [&](std::size_t u, double pushed) -> double {
      if (u == t) return pushed;
      seen[u] = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] || cap[u][v] <= 1e-12) continue;
        const double got = dfs(v, std::min(pushed, cap[u][v]));
        if (got > 0.0) {
          cap[u][v] -= got;
          cap[v][u] += got;
          return got;
        }
      }
      return 0.0;
    };
    const double got = dfs(s, std::numeric_limits<double>::infinity());
    if (got <= 0.0) return total;
    total += got;
  }
}

/// Best matching weight over all edge subsets.
inline double reference_max_matching(const MatchingInstance& g, const std::vector<bool>& edge_available) {
  const std::size_t k = g.edges.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count), 0);
    double w = 0.0;
    bool ok = true;
    for (std::size_t e = 0; e < k && ok; ++e) {
      if (!((mask >> e) & 1U)) continue;
      if (!edge_available[e]) ok = false;
      if (++degree[g.edges[e].u] > 1 || ++degree[g.edges[e].v] > 1) ok = false;
      w += g.edges[e].weight;
    }
    if (ok) best = std::max(best, w);
  }
  return best;
}

/// Value with the orderable elements in `bits` (ground order) plus all fixed elements.
inline double reference_value(const Instance& inst, std::uint64_t bits) {
  const auto ids = inst.element_ids();
  std::vector<bool> available(ids.size(), false);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (std::find(inst.fixed.begin(), inst.fixed.end(), ids[k]) != inst.fixed.end()) available[k] = true;
    for (std::size_t i = 0; i < inst.orderable.size(); ++i) {
      if (inst.orderable[i] == ids[k] && ((bits >> i) & 1U)) available[k] = true;
    }
  }
  return inst.family() == Family::Matching ? reference_max_matching(inst.matching(), available)
                                           : reference_max_flow(inst.flow(), available);
}

/// Cumulative value of realizing ground elements in `order`.
template <class ValueFn>
double reference_total(const std::vector<std::size_t>& order, ValueFn&& value) {
  std::uint64_t bits = 0;
  double total = 0.0;
  for (std::size_t e : order) {
    bits |= std::uint64_t{1} << e;
    total += value(bits);
  }
  return total;
}

/// Best cumulative value over all orderings of m elements.
template <class ValueFn>
double reference_best_total(std::size_t m, ValueFn&& value) {
  std::vector<double> memo(std::size_t{1} << m, std::numeric_limits<double>::quiet_NaN());
  auto cached = [&](std::uint64_t bits) {
    double& v = memo[bits];
    if (std::isnan(v)) v = value(bits);
    return v;
  };
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best = -std::numeric_limits<double>::infinity();
  do {
    best = std::max(best, reference_total(order, cached));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline double reference_best_total(const Instance& inst) {
  return reference_best_total(inst.ground_size(),
                              [&](std::uint64_t bits) { return reference_value(inst, bits); });
}

}  // namespace permsched::testing
