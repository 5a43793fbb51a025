#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "permsched/lp/linear_program.hpp"
#include "permsched/model/chain_transform.hpp"
#include "permsched/model/permutahedron.hpp"
#include "permsched/subproblems/emit.hpp"
#include "permsched/subproblems/instance.hpp"

namespace permsched {

enum class PermutahedronMode { Extended, CuttingPlane };

inline const char* to_string(PermutahedronMode m) {
  return m == PermutahedronMode::Extended ? "extended" : "cutting-plane";
}

/// The joint program: permutahedron point y, its chain h, and one subproblem
/// block per step coupled to column j of h.
struct MasterLp {
  LinearProgram lp{Sense::Maximize};
  PermutahedronMode mode = PermutahedronMode::Extended;
  std::vector<VarId> y;
  ChainVars h;
  std::vector<std::vector<VarId>> z;  // extended mode only
  std::vector<StepBlock> steps;

  std::vector<VarId> chain_column(std::size_t step) const {
    std::vector<VarId> col;
    for (const auto& row : h) col.push_back(row.at(step - 1));
    return col;
  }
};

inline MasterLp build_master_lp(const Instance& inst, PermutahedronMode mode) {
  const std::size_t m = inst.ground_size();
  if (m == 0) throw std::invalid_argument("instance has no orderable elements");

  MasterLp master;
  master.mode = mode;
  master.y = master.lp.add_variables(m, 1.0, static_cast<double>(m));
  master.h = add_chain_variables(master.lp, m);

  if (mode == PermutahedronMode::Extended) {
    auto ext = birkhoff_extension(master.lp, master.y);
    master.z = std::move(ext.z);
    master.lp.add_constraints(std::move(ext.constraints));
  } else {
    // Remaining subset-sum inequalities are separated lazily.
    master.lp.add_constraint(permutahedron_equality(master.y));
  }
  master.lp.add_constraints(chain_transform_constraints(m, master.y, master.h));

  for (std::size_t j = 1; j <= m; ++j) {
    auto block = emit_step(inst, j, master.chain_column(j), master.lp);
    master.lp.add_constraints(block.constraints);
    for (const auto& [v, c] : block.objective) master.lp.add_objective(v, c);
    master.steps.push_back(std::move(block));
  }
  return master;
}

}  // namespace permsched
