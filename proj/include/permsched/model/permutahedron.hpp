#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permsched/lp/linear_program.hpp"

namespace permsched {

inline double binomial2(std::size_t n) {
  return static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
}

/// Upper bound on the sum of any k coordinates of a point of the permutahedron
/// of order m: C(m+1,2) - C(m+1-k,2).
inline double rado_bound(std::size_t m, std::size_t k) {
  if (k < 1 || k > m) {
    throw std::out_of_range("subset size " + std::to_string(k) + " outside 1.." +
                            std::to_string(m));
  }
  return binomial2(m + 1) - binomial2(m + 1 - k);
}

/// The equality sum_i y_i = C(m+1,2).
inline LinearConstraint permutahedron_equality(std::span<const VarId> y_vars) {
  std::vector<Term> terms;
  for (VarId v : y_vars) terms.emplace_back(v, 1.0);
  return {std::move(terms), Relation::Equal, binomial2(y_vars.size() + 1)};
}

struct RadoCut {
  LinearConstraint constraint;
  std::vector<std::size_t> subset;  // 0-based element indices; all elements for the equality
  double violation = 0.0;
};

/// Returns the most violated inequality of the subset-sum description at `y`,
/// or nothing if y lies in the permutahedron within `tolerance`.
///
/// For a fixed cardinality k the k largest coordinates give the tightest
/// subset, so sorting once covers all 2^m - 1 inequalities.
inline std::optional<RadoCut> separate_permutahedron(std::size_t m, std::span<const double> y,
                                                     double tolerance,
                                                     std::span<const VarId> y_vars = {}) {
  if (y.size() != m) throw std::invalid_argument("point dimension does not match m");
  std::vector<VarId> ids(y_vars.begin(), y_vars.end());
  if (ids.empty()) {
    for (std::size_t i = 0; i < m; ++i) ids.push_back(VarId{i});
  }
  if (ids.size() != m) throw std::invalid_argument("variable ids do not match m");

  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  const double gap = std::abs(total - binomial2(m + 1));
  if (gap > tolerance) {
    std::vector<std::size_t> all(m);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return RadoCut{permutahedron_equality(ids), std::move(all), gap};
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
  double prefix = 0.0;
  double worst = tolerance;
  std::size_t worst_k = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    prefix += y[order[k - 1]];
    const double excess = prefix - rado_bound(m, k);
    if (excess > worst) {
      worst = excess;
      worst_k = k;
    }
  }
  if (worst_k == 0) return std::nullopt;

  std::vector<std::size_t> subset(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(worst_k));
  std::sort(subset.begin(), subset.end());
  std::vector<Term> terms;
  for (std::size_t i : subset) terms.emplace_back(ids[i], 1.0);
  return RadoCut{LinearConstraint(std::move(terms), Relation::LessEqual, rado_bound(m, worst_k)),
                 std::move(subset), worst};
}

struct BirkhoffExtension {
  std::vector<std::vector<VarId>> z;  // z[i][j-1]: element i placed at step j
  std::vector<LinearConstraint> constraints;
};

/// Declares a doubly stochastic matrix z in `lp` and links y_i = sum_j j z_ij.
/// The projection onto y of the resulting system is the permutahedron.
inline BirkhoffExtension birkhoff_extension(LinearProgram& lp, std::span<const VarId> y_vars) {
  const std::size_t m = y_vars.size();
  BirkhoffExtension ext;
  ext.z.resize(m);
  for (auto& row : ext.z) row = lp.add_variables(m, 0.0, 1.0);

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> row;
    for (std::size_t j = 0; j < m; ++j) row.emplace_back(ext.z[i][j], 1.0);
    ext.constraints.emplace_back(std::move(row), Relation::Equal, 1.0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Term> col;
    for (std::size_t i = 0; i < m; ++i) col.emplace_back(ext.z[i][j], 1.0);
    ext.constraints.emplace_back(std::move(col), Relation::Equal, 1.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> link{{y_vars[i], 1.0}};
    for (std::size_t j = 0; j < m; ++j) link.emplace_back(ext.z[i][j], -static_cast<double>(j + 1));
    ext.constraints.emplace_back(std::move(link), Relation::Equal, 0.0);
  }
  return ext;
}

}  // namespace permsched
