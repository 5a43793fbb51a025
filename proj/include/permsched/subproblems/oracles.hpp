#pragma once

// Combinatorial value oracles for the subproblem families. They share no code
// with the LP path so the two can be cross-checked.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "permsched/subproblems/instance.hpp"

namespace permsched {

/// Availability flags over a subproblem's edge or arc list (data order).
using ElementMask = std::vector<bool>;

/// Availability flags over the ground set (orderable elements, ground order).
using GroundSubset = std::vector<bool>;

struct FlowResult {
  double value = 0.0;
  std::vector<double> arc_flow;  // indexed like FlowInstance::arcs
};

/// Edmonds-Karp over the available arcs. Neighbors are scanned in ascending
/// arc id so the returned flow is deterministic.
inline FlowResult max_flow(const FlowInstance& d, const ElementMask& available) {
  constexpr double kEps = 1e-12;
  const std::size_t arcs = d.arcs.size();
  if (available.size() != arcs) throw std::invalid_argument("arc mask size mismatch");
  FlowResult out;
  out.arc_flow.assign(arcs, 0.0);

  std::vector<std::size_t> by_id(arcs);
  for (std::size_t a = 0; a < arcs; ++a) by_id[a] = a;
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t x, std::size_t y) { return d.arcs[x].id < d.arcs[y].id; });

  // Residual edge 2a is arc a forward, 2a+1 its reverse.
  std::vector<double> residual(2 * arcs, 0.0);
  std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(d.node_count));
  for (std::size_t a : by_id) {
    if (!available[a]) continue;
    residual[2 * a] = d.effective_capacity(a);
    adj[static_cast<std::size_t>(d.arcs[a].tail)].push_back(2 * a);
    adj[static_cast<std::size_t>(d.arcs[a].head)].push_back(2 * a + 1);
  }
  auto head_of = [&](std::size_t e) {
    const Arc& arc = d.arcs[e / 2];
    return static_cast<std::size_t>(e % 2 == 0 ? arc.head : arc.tail);
  };

  const auto s = static_cast<std::size_t>(d.source);
  const auto t = static_cast<std::size_t>(d.sink);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  for (;;) {
    std::vector<std::size_t> via(adj.size(), kNone);
    std::vector<bool> reached(adj.size(), false);
    std::queue<std::size_t> queue;
    reached[s] = true;
    queue.push(s);
    while (!queue.empty() && !reached[t]) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t e : adj[u]) {
        const std::size_t v = head_of(e);
        if (reached[v] || residual[e] <= kEps) continue;
        reached[v] = true;
        via[v] = e;
        queue.push(v);
      }
    }
    if (!reached[t]) break;
    double push = std::numeric_limits<double>::infinity();
    for (std::size_t v = t; v != s; v = head_of(via[v] ^ 1)) push = std::min(push, residual[via[v]]);
    for (std::size_t v = t; v != s; v = head_of(via[v] ^ 1)) {
      residual[via[v]] -= push;
      residual[via[v] ^ 1] += push;
    }
    out.value += push;
  }
  for (std::size_t a = 0; a < arcs; ++a) {
    if (available[a]) out.arc_flow[a] = residual[2 * a + 1];
  }
  return out;
}

inline double max_flow_value(const FlowInstance& d, const ElementMask& available) {
  return max_flow(d, available).value;
}

struct MatchingResult {
  double value = 0.0;
  std::vector<std::size_t> edges;  // edge indices, ascending id
};

inline constexpr std::size_t kMatchingEnumerationLimit = 25;

/// Maximum-weight matching by exhaustive enumeration over available edges.
/// Among optimal matchings, returns the lexicographically smallest id list.
inline MatchingResult max_matching(const MatchingInstance& g, const ElementMask& available) {
  if (available.size() != g.edges.size()) throw std::invalid_argument("edge mask size mismatch");
  std::vector<std::size_t> pool;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (available[e]) pool.push_back(e);
  }
  if (pool.size() > kMatchingEnumerationLimit) {
    throw std::length_error("matching enumeration limited to " +
                            std::to_string(kMatchingEnumerationLimit) + " available edges");
  }
  std::sort(pool.begin(), pool.end(),
            [&](std::size_t a, std::size_t b) { return g.edges[a].id < g.edges[b].id; });

  constexpr double kTieTol = 1e-9;
  std::vector<bool> used(static_cast<std::size_t>(g.vertex_count), false);
  std::vector<std::size_t> current;
  MatchingResult best;
  bool have_best = false;
  auto ids_less = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [&](std::size_t x, std::size_t y) { return g.edges[x].id < g.edges[y].id; });
  };

  auto recurse = [&](auto&& self, std::size_t k, double value) -> void {
    if (k == pool.size()) {
      if (!have_best || value > best.value + kTieTol ||
          (value >= best.value - kTieTol && ids_less(current, best.edges))) {
        best.value = value;
        best.edges = current;
        have_best = true;
      }
      return;
    }
    const Edge& e = g.edges[pool[k]];
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (!used[u] && !used[v]) {
      used[u] = used[v] = true;
      current.push_back(pool[k]);
      self(self, k + 1, value + e.weight);
      current.pop_back();
      used[u] = used[v] = false;
    }
    self(self, k + 1, value);
  };
  recurse(recurse, 0, 0.0);
  return best;
}

inline double max_matching_value(const MatchingInstance& g, const ElementMask& available) {
  return max_matching(g, available).value;
}

/// Data-order mask with all fixed elements plus the chosen orderable ones.
inline ElementMask element_mask(const Instance& inst, const GroundSubset& available) {
  if (available.size() != inst.ground_size()) {
    throw std::invalid_argument("ground subset size mismatch");
  }
  const auto ids = inst.element_ids();
  ElementMask mask(ids.size(), false);
  for (int id : inst.fixed) mask[inst.data_index(id)] = true;
  for (std::size_t i = 0; i < available.size(); ++i) {
    if (available[i]) mask[inst.data_index(inst.orderable[i])] = true;
  }
  return mask;
}

/// Optimal subproblem value when the fixed elements and `available` may be used.
inline double step_value(const Instance& inst, const GroundSubset& available) {
  const auto mask = element_mask(inst, available);
  if (inst.family() == Family::Matching) return max_matching_value(inst.matching(), mask);
  return max_flow_value(inst.flow(), mask);
}

/// Ground elements used by the oracle's optimal solution over all elements:
/// the chosen matching's edges, or the arcs carrying positive flow.
inline GroundSubset optimal_support(const Instance& inst) {
  const GroundSubset all(inst.ground_size(), true);
  const auto mask = element_mask(inst, all);
  std::vector<bool> used(mask.size(), false);
  if (inst.family() == Family::Matching) {
    for (std::size_t e : max_matching(inst.matching(), mask).edges) used[e] = true;
  } else {
    const auto flow = max_flow(inst.flow(), mask);
    for (std::size_t a = 0; a < used.size(); ++a) used[a] = flow.arc_flow[a] > 1e-12;
  }
  GroundSubset support(inst.ground_size(), false);
  for (std::size_t i = 0; i < support.size(); ++i) {
    support[i] = used[inst.data_index(inst.orderable[i])];
  }
  return support;
}

/// Memoizes step values by ground subset (ground sets of at most 63 elements).
class StepValueCache {
 public:
  explicit StepValueCache(const Instance& inst) : inst_(&inst) {
    if (inst.ground_size() > 63) throw std::length_error("ground set too large to memoize");
  }

  double operator()(std::uint64_t bits) {
    auto it = memo_.find(bits);
    if (it != memo_.end()) return it->second;
    GroundSubset subset(inst_->ground_size());
    for (std::size_t i = 0; i < subset.size(); ++i) subset[i] = (bits >> i) & 1U;
    const double v = step_value(*inst_, subset);
    memo_.emplace(bits, v);
    return v;
  }

 private:
  const Instance* inst_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace permsched
