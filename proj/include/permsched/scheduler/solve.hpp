#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permsched/lp/simplex.hpp"
#include "permsched/model/permutahedron.hpp"
#include "permsched/model/permutation.hpp"
#include "permsched/scheduler/master_lp.hpp"
#include "permsched/scheduler/schedule.hpp"

namespace permsched {

class SolverError : public std::runtime_error {
 public:
  enum class Kind { LpFailure, VerificationFailure, NodeLimit, CutLimit };

  SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SchedulerOptions {
  PermutahedronMode mode = PermutahedronMode::Extended;
  SolveOptions lp;
  double certify_tol = 1e-6;
  double separation_tol = 1e-7;
  std::size_t node_limit = 10'000;
  std::size_t cut_round_limit = 10'000;
};

namespace detail {

inline LpSolution solve_checked(const LinearProgram& lp, const SolveOptions& opts) {
  auto sol = solve(lp, opts);
  if (!sol.optimal()) {
    throw SolverError(SolverError::Kind::LpFailure,
                      std::string("master LP returned ") + to_string(sol.status));
  }
  if (!verify(lp, sol, opts.comparison_tol)) {
    throw SolverError(SolverError::Kind::VerificationFailure,
                      "master LP solution failed verification");
  }
  return sol;
}

inline std::vector<double> values_of(const LpSolution& sol, const std::vector<VarId>& vars) {
  std::vector<double> out;
  out.reserve(vars.size());
  for (VarId v : vars) out.push_back(sol.value(v));
  return out;
}

}  // namespace detail

struct MasterSolution {
  MasterLp master;
  LpSolution solution;
  std::size_t cut_rounds = 0;
};

/// Solves the master LP in the requested mode. In cutting-plane mode the most
/// violated subset-sum inequality is added and the LP re-solved until none remain.
inline MasterSolution solve_master(const Instance& inst, const SchedulerOptions& opts) {
  MasterSolution out{build_master_lp(inst, opts.mode), {}, 0};
  const std::size_t m = inst.ground_size();
  for (;;) {
    out.solution = detail::solve_checked(out.master.lp, opts.lp);
    if (opts.mode == PermutahedronMode::Extended) return out;
    const auto y = detail::values_of(out.solution, out.master.y);
    auto cut = separate_permutahedron(m, y, opts.separation_tol, out.master.y);
    if (!cut) return out;
    for (const auto& existing : out.master.lp.constraints()) {
      if (existing == cut->constraint) {
        throw SolverError(SolverError::Kind::CutLimit, "separation repeated an existing cut");
      }
    }
    if (++out.cut_rounds > opts.cut_round_limit) {
      throw SolverError(SolverError::Kind::CutLimit, "cutting-plane round limit exceeded");
    }
    out.master.lp.add_constraint(std::move(cut->constraint));
  }
}

namespace detail {

/// Depth-first branch and bound on the doubly stochastic z entries of an
/// extended master LP. Starts from `incumbent` and returns the best schedule.
inline Schedule repair_integrality(const Instance& inst, const MasterLp& master, Schedule incumbent,
                                   StepValueCache& cache, const SchedulerOptions& opts) {
  struct Fixing {
    VarId var;
    double value;
  };
  std::vector<std::vector<Fixing>> stack{{}};
  std::size_t nodes = 0;
  constexpr double kIntegralTol = 1e-6;

  while (!stack.empty()) {
    auto fixings = std::move(stack.back());
    stack.pop_back();
    if (++nodes > opts.node_limit) {
      throw SolverError(SolverError::Kind::NodeLimit, "integrality repair node limit exceeded");
    }
    LinearProgram lp = master.lp;
    for (const auto& f : fixings) lp.set_bounds(f.var, f.value, f.value);
    auto sol = solve(lp, opts.lp);
    if (sol.status == LpStatus::Infeasible) continue;
    if (!sol.optimal()) {
      throw SolverError(SolverError::Kind::LpFailure,
                        std::string("repair LP returned ") + to_string(sol.status));
    }
    if (*sol.objective <= incumbent.total + opts.certify_tol) continue;

    const auto y = values_of(sol, master.y);
    auto candidate = evaluate_schedule(inst, permutation_from_point(y, opts.lp.comparison_tol), cache);
    if (candidate.total > incumbent.total + opts.certify_tol) incumbent = std::move(candidate);
    if (*sol.objective <= incumbent.total + opts.certify_tol) continue;

    VarId branch{};
    double best_distance = 1.0;
    bool found = false;
    for (const auto& row : master.z) {
      for (VarId v : row) {
        const double x = sol.value(v);
        const double frac = x - std::floor(x);
        if (frac < kIntegralTol || frac > 1.0 - kIntegralTol) continue;
        const double distance = std::abs(frac - 0.5);
        if (distance < best_distance) {
          best_distance = distance;
          branch = v;
          found = true;
        }
      }
    }
    if (!found) continue;  // integral z: the candidate above already realizes this node

    auto down = fixings;
    down.push_back({branch, 0.0});
    fixings.push_back({branch, 1.0});
    stack.push_back(std::move(down));
    stack.push_back(std::move(fixings));
  }
  incumbent.repair_nodes = nodes;
  return incumbent;
}

}  // namespace detail

/// Optimal schedule via the master LP, with extraction, re-evaluation and,
/// when the extracted ordering falls short of the LP bound, branch and bound.
inline Schedule solve_schedule(const Instance& inst, const SchedulerOptions& opts = {}) {
  const std::size_t m = inst.ground_size();
  auto master = solve_master(inst, opts);
  const double bound = *master.solution.objective;

  StepValueCache cache(inst);
  const auto y = detail::values_of(master.solution, master.master.y);
  Schedule schedule = evaluate_schedule(inst, permutation_from_point(y, m, opts.lp.comparison_tol), cache);
  schedule.lp_bound = bound;
  schedule.certified = schedule.total >= bound - opts.certify_tol;
  if (!*schedule.certified) {
    const MasterLp extended = opts.mode == PermutahedronMode::Extended
                                  ? std::move(master.master)
                                  : build_master_lp(inst, PermutahedronMode::Extended);
    schedule = detail::repair_integrality(inst, extended, std::move(schedule), cache, opts);
    schedule.lp_bound = bound;
    schedule.certified = true;
    schedule.repaired = true;
  }
  schedule.method = Method::Lp;
  return schedule;
}

}  // namespace permsched
