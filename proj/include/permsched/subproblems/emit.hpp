#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permsched/lp/linear_program.hpp"
#include "permsched/subproblems/instance.hpp"

namespace permsched {

/// Variables, constraints and objective terms of one step's subproblem.
/// `vars[k]` belongs to element k of the subproblem data (edge or arc order).
struct StepBlock {
  std::vector<VarId> vars;
  std::vector<LinearConstraint> constraints;
  std::vector<Term> objective;
};

/// Declares the step-`step` subproblem variables in `lp` and returns the
/// constraints coupling them to the chain column `h_column` (ground order).
///
/// Matching: x_e in [0,1], x_e <= h_e for orderable edges, at most one chosen
/// edge per vertex, objective sum w_e x_e.
/// Flow: f_a in [0, cap_a], f_a <= cap_a h_a for orderable arcs, conservation
/// at every node other than source and sink, objective net outflow of the source.
inline StepBlock emit_step(const Instance& inst, std::size_t step,
                           std::span<const VarId> h_column, LinearProgram& lp) {
  const std::size_t m = inst.ground_size();
  if (step < 1 || step > m) {
    throw std::out_of_range("step " + std::to_string(step) + " outside 1.." + std::to_string(m));
  }
  if (h_column.size() != m) throw std::invalid_argument("chain column does not match ground set");

  StepBlock block;
  const auto ids = inst.element_ids();
  std::vector<int> ground_of(ids.size(), -1);
  for (std::size_t i = 0; i < m; ++i) ground_of[inst.data_index(inst.orderable[i])] = static_cast<int>(i);

  if (inst.family() == Family::Matching) {
    const auto& g = inst.matching();
    std::vector<std::vector<Term>> incident(static_cast<std::size_t>(g.vertex_count));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const VarId x = lp.add_variable(0.0, 1.0);
      block.vars.push_back(x);
      if (ground_of[e] >= 0) {
        block.constraints.emplace_back(
            std::vector<Term>{{x, 1.0}, {h_column[static_cast<std::size_t>(ground_of[e])], -1.0}},
            Relation::LessEqual, 0.0);
      }
      incident[static_cast<std::size_t>(g.edges[e].u)].emplace_back(x, 1.0);
      incident[static_cast<std::size_t>(g.edges[e].v)].emplace_back(x, 1.0);
      block.objective.emplace_back(x, g.edges[e].weight);
    }
    for (auto& terms : incident) {
      if (!terms.empty()) block.constraints.emplace_back(std::move(terms), Relation::LessEqual, 1.0);
    }
    return block;
  }

  const auto& d = inst.flow();
  std::vector<std::vector<Term>> balance(static_cast<std::size_t>(d.node_count));
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    const double cap = d.effective_capacity(a);
    const VarId f = lp.add_variable(0.0, cap);
    block.vars.push_back(f);
    if (ground_of[a] >= 0) {
      block.constraints.emplace_back(
          std::vector<Term>{{f, 1.0}, {h_column[static_cast<std::size_t>(ground_of[a])], -cap}},
          Relation::LessEqual, 0.0);
    }
    balance[static_cast<std::size_t>(d.arcs[a].tail)].emplace_back(f, 1.0);
    balance[static_cast<std::size_t>(d.arcs[a].head)].emplace_back(f, -1.0);
    if (d.arcs[a].tail == d.source) block.objective.emplace_back(f, 1.0);
    if (d.arcs[a].head == d.source) block.objective.emplace_back(f, -1.0);
  }
  for (std::size_t u = 0; u < balance.size(); ++u) {
    const auto node = static_cast<int>(u);
    if (node == d.source || node == d.sink || balance[u].empty()) continue;
    LinearConstraint conservation(std::move(balance[u]), Relation::Equal, 0.0);
    // Self-loops cancel out and leave nothing to conserve.
    if (!conservation.terms().empty()) block.constraints.push_back(std::move(conservation));
  }
  return block;
}

}  // namespace permsched
