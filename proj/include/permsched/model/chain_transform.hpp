#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "permsched/lp/linear_program.hpp"

namespace permsched {

/// h[i][j-1] is the variable for entry i of the chain vector at step j.
using ChainVars = std::vector<std::vector<VarId>>;

inline ChainVars add_chain_variables(LinearProgram& lp, std::size_t m) {
  ChainVars h(m);
  for (auto& row : h) row = lp.add_variables(m, 0.0, 1.0);
  return h;
}

/// Linear system mapping a permutation point y to the characteristic vectors
/// of its chain. The all-zero vector at step 0 is substituted, not declared.
///
/// Emitted, in order: monotonicity h_i^j <= h_i^{j+1} (m(m-1) rows),
/// cardinality sum_i h_i^j = j (m rows), covering
/// sum_{k<=j} h_i^k + y_i >= j + 1 (m^2 rows), and the box 0 <= h <= 1 as
/// explicit rows (2m^2).
inline std::vector<LinearConstraint> chain_transform_constraints(std::size_t m,
                                                                 std::span<const VarId> y_vars,
                                                                 const ChainVars& h_vars) {
  if (y_vars.size() != m || h_vars.size() != m) {
    throw std::invalid_argument("chain variable arrays do not match m");
  }
  for (const auto& row : h_vars) {
    if (row.size() != m) throw std::invalid_argument("chain variable arrays do not match m");
  }

  std::vector<LinearConstraint> out;
  out.reserve(m * (m - 1) + m + 3 * m * m);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      out.emplace_back(std::vector<Term>{{h_vars[i][j], 1.0}, {h_vars[i][j + 1], -1.0}},
                       Relation::LessEqual, 0.0);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Term> col;
    for (std::size_t i = 0; i < m; ++i) col.emplace_back(h_vars[i][j], 1.0);
    out.emplace_back(std::move(col), Relation::Equal, static_cast<double>(j + 1));
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Term> cover{{y_vars[i], 1.0}};
      for (std::size_t k = 0; k <= j; ++k) cover.emplace_back(h_vars[i][k], 1.0);
      out.emplace_back(std::move(cover), Relation::GreaterEqual, static_cast<double>(j + 2));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.emplace_back(std::vector<Term>{{h_vars[i][j], 1.0}}, Relation::GreaterEqual, 0.0);
      out.emplace_back(std::vector<Term>{{h_vars[i][j], 1.0}}, Relation::LessEqual, 1.0);
    }
  }
  return out;
}

}  // namespace permsched
