#pragma once

// Small instances on which both greedy orderings are known to fail, with the
// perturbation epsilon as a parameter. All use epsilon = 0.1 by default.

#include <array>
#include <string>
#include <string_view>

#include "permsched/subproblems/instance.hpp"

namespace permsched::bundled {

inline constexpr double kDefaultEpsilon = 0.1;

/// Path 1-2-3-4 with a heavy middle edge.
inline Instance g1(double eps = kDefaultEpsilon) {
  MatchingInstance g{5, {{1, 1, 2, 1.0}, {2, 2, 3, 2.0 - eps}, {3, 3, 4, 1.0}}, {1, 3}};
  return Instance{g, {1, 2, 3}, {}};
}

/// 4-cycle 1-2-3-4-1.
inline Instance g2(double eps = kDefaultEpsilon) {
  MatchingInstance g{5,
                     {{1, 1, 2, 1.0 + eps}, {2, 2, 3, 1.0}, {3, 3, 4, eps}, {4, 1, 4, 1.0}},
                     {1, 3}};
  return Instance{g, {1, 2, 3, 4}, {}};
}

namespace detail {
inline constexpr int kS = 5;
inline constexpr int kT = 6;
}  // namespace detail

/// Flow analogue of g1: nodes 0..4, source 5, sink 6.
inline Instance d1(double eps = kDefaultEpsilon) {
  using detail::kS;
  using detail::kT;
  FlowInstance d{7,
                 {{1, 1, 2, 1.0, false},
                  {2, 3, 4, 1.0, false},
                  {3, 3, 2, 2.0 - eps, false},
                  {4, kS, 0, 2.0, false},
                  {5, 0, 1, 0.0, true},
                  {6, 0, 3, 0.0, true},
                  {7, 2, kT, 0.0, true},
                  {8, 4, kT, 0.0, true}},
                 kS,
                 kT};
  return Instance{d, {1, 2, 3}, {4, 5, 6, 7, 8}};
}

/// Flow analogue of g2: nodes 0..4, source 5, sink 6.
inline Instance d2(double eps = kDefaultEpsilon) {
  using detail::kS;
  using detail::kT;
  FlowInstance d{7,
                 {{1, 1, 2, 1.0 + eps, false},
                  {2, 3, 2, 1.0, false},
                  {3, 3, 4, eps, false},
                  {4, 1, 4, 1.0, false},
                  {5, kS, 0, 2.0, false},
                  {6, 0, 1, 1.0 + eps, false},
                  {7, 0, 3, 0.0, true},
                  {8, 2, kT, 1.0 + eps, false},
                  {9, 4, kT, 0.0, true}},
                 kS,
                 kT};
  return Instance{d, {1, 2, 3, 4}, {5, 6, 7, 8, 9}};
}

/// Long unit path 0-1-...-5-t beside a two-arc detour 0-6-t of capacity
/// 1 - eps; nodes 0..6, source 7, sink 8. Arc ids 1..6 form the path.
inline Instance d3(double eps = kDefaultEpsilon) {
  constexpr int s = 7;
  constexpr int t = 8;
  FlowInstance d{9,
                 {{1, 0, 1, 1.0, false},
                  {2, 1, 2, 1.0, false},
                  {3, 2, 3, 1.0, false},
                  {4, 3, 4, 1.0, false},
                  {5, 4, 5, 1.0, false},
                  {6, 5, t, 1.0, false},
                  {7, 0, 6, 1.0 - eps, false},
                  {8, 6, t, 1.0 - eps, false},
                  {9, s, 0, 1.0, false}},
                 s,
                 t};
  return Instance{d, {1, 2, 3, 4, 5, 6, 7, 8}, {9}};
}

inline constexpr std::array<std::string_view, 5> kNames{"g1", "g2", "d1", "d2", "d3"};

inline bool has(std::string_view name) {
  for (auto n : kNames) {
    if (n == name) return true;
  }
  return false;
}

inline Instance by_name(std::string_view name, double eps = kDefaultEpsilon) {
  if (name == "g1") return g1(eps);
  if (name == "g2") return g2(eps);
  if (name == "d1") return d1(eps);
  if (name == "d2") return d2(eps);
  if (name == "d3") return d3(eps);
  throw ValidationError("no bundled instance named '" + std::string(name) + "'");
}

}  // namespace permsched::bundled
