#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace permsched {

/// Raised for malformed instances and documents; the message names the offending item.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct MatchingInstance {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<int> left;  // one side of the bipartition

  friend bool operator==(const MatchingInstance&, const MatchingInstance&) = default;
};

struct Arc {
  int id = 0;
  int tail = 0;
  int head = 0;
  double capacity = 0.0;  // ignored when uncapacitated
  bool uncapacitated = false;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct FlowInstance {
  int node_count = 0;
  std::vector<Arc> arcs;
  int source = 0;
  int sink = 0;

  /// Capacity of arc index `a`; uncapacitated arcs get the sum of all finite
  /// capacities (or 1 when that sum is zero).
  double effective_capacity(std::size_t a) const {
    const Arc& arc = arcs.at(a);
    if (!arc.uncapacitated) return arc.capacity;
    double total = 0.0;
    for (const auto& other : arcs) {
      if (!other.uncapacitated) total += other.capacity;
    }
    return total > 0.0 ? total : 1.0;
  }

  friend bool operator==(const FlowInstance&, const FlowInstance&) = default;
};

enum class Family { Matching, Flow };

/// A permutatorial instance: the subproblem data plus which of its elements
/// are to be ordered. Ground-set index i refers to `orderable[i]`.
struct Instance {
  std::variant<MatchingInstance, FlowInstance> data;
  std::vector<int> orderable;  // element ids, in ground-set order
  std::vector<int> fixed;      // element ids available at every step

  Family family() const {
    return std::holds_alternative<MatchingInstance>(data) ? Family::Matching : Family::Flow;
  }
  std::size_t ground_size() const { return orderable.size(); }
  const MatchingInstance& matching() const { return std::get<MatchingInstance>(data); }
  const FlowInstance& flow() const { return std::get<FlowInstance>(data); }

  /// Ids of every element of the subproblem, in data order.
  std::vector<int> element_ids() const {
    std::vector<int> ids;
    std::visit(
        [&](const auto& d) {
          if constexpr (std::is_same_v<std::decay_t<decltype(d)>, MatchingInstance>) {
            for (const auto& e : d.edges) ids.push_back(e.id);
          } else {
            for (const auto& a : d.arcs) ids.push_back(a.id);
          }
        },
        data);
    return ids;
  }

  /// Position of element `id` inside the subproblem's edge/arc list.
  std::size_t data_index(int id) const {
    const auto ids = element_ids();
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw ValidationError("unknown element id " + std::to_string(id));
    return static_cast<std::size_t>(it - ids.begin());
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

namespace detail {

inline std::string element_label(int id) { return "element " + std::to_string(id); }

}  // namespace detail

inline void validate(const MatchingInstance& g) {
  if (g.vertex_count < 0) throw ValidationError("negative vertex count");
  std::set<int> left(g.left.begin(), g.left.end());
  for (int v : g.left) {
    if (v < 0 || v >= g.vertex_count) {
      throw ValidationError("bipartition vertex " + std::to_string(v) + " out of range");
    }
  }
  for (const auto& e : g.edges) {
    const auto label = detail::element_label(e.id);
    if (e.u < 0 || e.v < 0 || e.u >= g.vertex_count || e.v >= g.vertex_count) {
      throw ValidationError(label + ": endpoint out of range");
    }
    if (!std::isfinite(e.weight)) throw ValidationError(label + ": weight is not finite");
    if (e.weight < 0.0) {
      throw ValidationError(label + ": negative weight " + std::to_string(e.weight));
    }
    if (left.contains(e.u) == left.contains(e.v)) {
      throw ValidationError(label + ": edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                            " does not cross the bipartition");
    }
  }
}

inline void validate(const FlowInstance& d) {
  if (d.node_count < 0) throw ValidationError("negative node count");
  if (d.source < 0 || d.source >= d.node_count) throw ValidationError("source out of range");
  if (d.sink < 0 || d.sink >= d.node_count) throw ValidationError("sink out of range");
  if (d.source == d.sink) throw ValidationError("source and sink coincide");
  for (const auto& a : d.arcs) {
    const auto label = detail::element_label(a.id);
    if (a.tail < 0 || a.head < 0 || a.tail >= d.node_count || a.head >= d.node_count) {
      throw ValidationError(label + ": endpoint out of range");
    }
    if (!a.uncapacitated) {
      if (!std::isfinite(a.capacity)) throw ValidationError(label + ": capacity is not finite");
      if (a.capacity < 0.0) {
        throw ValidationError(label + ": negative capacity " + std::to_string(a.capacity));
      }
    }
  }
}

/// Checks family data and that orderable/fixed partition the element ids.
inline void validate(const Instance& inst) {
  std::visit([](const auto& d) { validate(d); }, inst.data);
  const auto ids = inst.element_ids();
  std::map<int, int> seen;  // id -> 0 unassigned, 1 orderable, 2 fixed
  for (int id : ids) {
    if (seen.contains(id)) throw ValidationError("duplicate element id " + std::to_string(id));
    seen[id] = 0;
  }
  auto assign = [&](const std::vector<int>& list, int tag) {
    for (int id : list) {
      auto it = seen.find(id);
      if (it == seen.end()) throw ValidationError("dangling element id " + std::to_string(id));
      if (it->second != 0) {
        throw ValidationError("element id " + std::to_string(id) + " listed twice");
      }
      it->second = tag;
    }
  };
  assign(inst.orderable, 1);
  assign(inst.fixed, 2);
  for (const auto& [id, tag] : seen) {
    if (tag == 0) {
      throw ValidationError("element id " + std::to_string(id) + " is neither orderable nor fixed");
    }
  }
}

}  // namespace permsched
