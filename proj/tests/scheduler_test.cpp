#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "permsched/permsched.hpp"
#include "support/checks.hpp"
#include "support/random_instances.hpp"
#include "support/reference.hpp"

namespace permsched {
namespace {

constexpr double kTol = 1e-6;

Permutation by_ids(const Instance& inst, std::initializer_list<int> ids) {
  std::vector<std::size_t> order;
  for (int id : ids) {
    for (std::size_t i = 0; i < inst.orderable.size(); ++i) {
      if (inst.orderable[i] == id) order.push_back(i);
    }
  }
  return Permutation::from_order(order);
}

std::vector<Instance> random_suite(unsigned seed, std::size_t count) {
  std::mt19937 rng(seed);
  std::vector<Instance> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t m = 2 + k % 4;
    out.push_back(k % 2 ? testing::random_flow(rng, m, k % 3 == 0 ? 1 : 0)
                        : testing::random_matching(rng, m, k % 4 == 0 ? 1 : 0));
  }
  return out;
}

void expect_schedule_invariants(const Schedule& s) {
  double sum = 0.0;
  for (std::size_t j = 0; j < s.step_values.size(); ++j) {
    sum += s.step_values[j];
    if (j > 0) {
      EXPECT_LE(s.step_values[j - 1], s.step_values[j] + 1e-12);
    }
  }
  EXPECT_NEAR(s.total, sum, 1e-12);
  if (s.lp_bound) {
    EXPECT_LE(s.total, *s.lp_bound + kTol);
  }
}

TEST(MasterLp, VariableLayout) {
  const auto inst = bundled::g1();
  const auto ext = build_master_lp(inst, PermutahedronMode::Extended);
  EXPECT_EQ(ext.y.size(), 3u);
  EXPECT_EQ(ext.z.size(), 3u);
  EXPECT_EQ(ext.steps.size(), 3u);
  EXPECT_EQ(ext.lp.variable_count(), 3u + 9u + 9u + 3u * 3u);
  const auto cut = build_master_lp(inst, PermutahedronMode::CuttingPlane);
  EXPECT_TRUE(cut.z.empty());
  EXPECT_EQ(cut.lp.variable_count(), 3u + 9u + 3u * 3u);
  EXPECT_THROW(build_master_lp(Instance{MatchingInstance{0, {}, {}}, {}, {}}, PermutahedronMode::Extended),
               std::invalid_argument);
}

TEST(MasterLp, SingleEdge) {
  const Instance inst{MatchingInstance{2, {{1, 0, 1, 5.0}}, {0}}, {1}, {}};
  for (auto mode : {PermutahedronMode::Extended, PermutahedronMode::CuttingPlane}) {
    SchedulerOptions opts;
    opts.mode = mode;
    const auto master = solve_master(inst, opts);
    EXPECT_NEAR(*master.solution.objective, 5.0, kTol);
    EXPECT_NEAR(master.solution.value(master.master.y[0]), 1.0, kTol);
  }
}

TEST(MasterLp, G1FractionalPointBeatsEveryOrdering) {
  // y = (2.5, 1, 2.5): the heavy edge first, the two light edges split over
  // steps 2 and 3. Every row of the master LP holds at this point.
  const auto inst = bundled::g1();
  const auto master = build_master_lp(inst, PermutahedronMode::Extended);
  std::vector<double> x(master.lp.variable_count(), 0.0);
  const std::vector<double> y{2.5, 1.0, 2.5};
  const std::vector<std::vector<double>> z{{0, 0.5, 0.5}, {1, 0, 0}, {0, 0.5, 0.5}};
  const std::vector<std::vector<double>> h{{0, 0.5, 1}, {1, 1, 1}, {0, 0.5, 1}};
  const std::vector<std::vector<double>> flow{{0, 1, 0}, {0.5, 0.5, 0.5}, {1, 0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    x[master.y[i].index] = y[i];
    for (std::size_t j = 0; j < 3; ++j) {
      x[master.z[i][j].index] = z[i][j];
      x[master.h[i][j].index] = h[i][j];
      x[master.steps[j].vars[i].index] = flow[j][i];
    }
  }
  for (const auto& c : master.lp.constraints()) EXPECT_LE(c.violation(x), 1e-12);
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_GE(x[k], master.lp.all_bounds()[k].lower);
    EXPECT_LE(x[k], master.lp.all_bounds()[k].upper);
  }
  EXPECT_NEAR(master.lp.evaluate(x), 5.85, 1e-12);

  double best = 0.0;
  testing::for_each_permutation(3, [&](const Permutation& p) {
    best = std::max(best, evaluate_schedule(inst, p).total);
  });
  EXPECT_NEAR(best, 5.8, 1e-12);
  EXPECT_NEAR(testing::master_lp_value(inst, PermutahedronMode::Extended), 5.85, kTol);
}

TEST(MasterLp, D2RelaxationExceedsBestOrdering) {
  const auto inst = bundled::d2();
  const double lp = testing::master_lp_value(inst, PermutahedronMode::Extended);
  EXPECT_NEAR(lp, 7.02, kTol);
  EXPECT_NEAR(testing::reference_best_total(inst), 7.0, 1e-12);
}

TEST(MasterLp, CuttingPlaneOptimumLiesInPermutahedron) {
  // The chain rows together with the sum equality already keep y inside the
  // permutahedron on these instances, so the loop usually stops after one solve.
  SchedulerOptions opts;
  opts.mode = PermutahedronMode::CuttingPlane;
  std::vector<Instance> suite = random_suite(37, 12);
  for (auto name : bundled::kNames) suite.push_back(bundled::by_name(name));
  for (const auto& inst : suite) {
    const auto master = solve_master(inst, opts);
    std::vector<double> y;
    for (VarId v : master.master.y) y.push_back(master.solution.value(v));
    EXPECT_FALSE(separate_permutahedron(y.size(), y, 1e-7).has_value());
    EXPECT_TRUE(testing::in_extended_formulation(y));
  }
}

TEST(SolveSchedule, G1) {
  const auto inst = bundled::g1();
  const auto s = solve_schedule(inst);
  EXPECT_NEAR(s.total, 5.8, kTol);
  EXPECT_EQ(s.order_ids(inst).front(), 2);
  EXPECT_EQ(s.method, Method::Lp);
  EXPECT_TRUE(s.certified.value_or(false));
  EXPECT_TRUE(s.repaired);
  expect_schedule_invariants(s);
}

TEST(SolveSchedule, D1) {
  const auto s = solve_schedule(bundled::d1());
  EXPECT_NEAR(s.total, 5.9, kTol);
  EXPECT_FALSE(s.repaired);
  expect_schedule_invariants(s);
}

TEST(SolveSchedule, G2AndD2InBothModes) {
  for (auto mode : {PermutahedronMode::Extended, PermutahedronMode::CuttingPlane}) {
    SchedulerOptions opts;
    opts.mode = mode;
    EXPECT_NEAR(solve_schedule(bundled::g2(), opts).total, 7.0, kTol);
    EXPECT_NEAR(solve_schedule(bundled::d2(), opts).total, 7.0, kTol);
  }
}

TEST(SolveSchedule, RandomMatchingMatchesExhaustiveSearch) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = testing::random_matching(rng, 5);
    const auto s = solve_schedule(inst);
    EXPECT_NEAR(s.total, testing::reference_best_total(inst), kTol);
    expect_schedule_invariants(s);
  }
}

TEST(SolveSchedule, RandomInstancesMatchExhaustiveSearch) {
  for (const auto& inst : random_suite(43, 20)) {
    for (auto mode : {PermutahedronMode::Extended, PermutahedronMode::CuttingPlane}) {
      SchedulerOptions opts;
      opts.mode = mode;
      const auto s = solve_schedule(inst, opts);
      EXPECT_NEAR(s.total, testing::reference_best_total(inst), kTol);
      expect_schedule_invariants(s);
    }
  }
}

TEST(SolveSchedule, NodeLimitIsReported) {
  SchedulerOptions opts;
  opts.node_limit = 1;
  try {
    solve_schedule(bundled::g1(), opts);
    FAIL() << "expected a node-limit failure";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::NodeLimit);
  }
}

TEST(SolveSchedule, LpFailureIsReported) {
  SchedulerOptions opts;
  opts.lp.iteration_limit = 1;
  try {
    solve_schedule(bundled::g1(), opts);
    FAIL() << "expected an LP failure";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::LpFailure);
  }
}

TEST(EvaluateSchedule, G1HeavyEdgeFirst) {
  const auto inst = bundled::g1();
  const auto s = evaluate_schedule(inst, by_ids(inst, {2, 1, 3}));
  ASSERT_EQ(s.step_values.size(), 3u);
  EXPECT_NEAR(s.step_values[0], 1.9, 1e-12);
  EXPECT_NEAR(s.step_values[1], 1.9, 1e-12);
  EXPECT_NEAR(s.step_values[2], 2.0, 1e-12);
  EXPECT_NEAR(s.total, 5.8, 1e-12);
  EXPECT_EQ(s.method, Method::Evaluated);
}

TEST(EvaluateSchedule, D3PathFirst) {
  const auto inst = bundled::d3();
  EXPECT_NEAR(evaluate_schedule(inst, by_ids(inst, {1, 2, 3, 4, 5, 6, 7, 8})).total, 3.0, 1e-12);
}

TEST(EvaluateSchedule, D3DetourFirst) {
  const auto inst = bundled::d3();
  const auto s = evaluate_schedule(inst, by_ids(inst, {7, 8, 1, 2, 3, 4, 5, 6}));
  EXPECT_NEAR(s.total, 6.4, 1e-12);
  EXPECT_NEAR(s.total, testing::reference_total(s.permutation.order(), [&](std::uint64_t b) {
                return testing::reference_value(inst, b);
              }), 1e-12);
}

TEST(EvaluateSchedule, SizeMismatchThrows) {
  EXPECT_THROW(evaluate_schedule(bundled::g1(), Permutation::identity(2)), std::invalid_argument);
}

TEST(SchedulerProperty, RelaxationIsSound) {
  std::vector<Instance> suite = random_suite(47, 10);
  for (auto name : {"g1", "g2", "d1", "d2"}) suite.push_back(bundled::by_name(name));
  for (const auto& inst : suite) {
    const double lp = testing::master_lp_value(inst, PermutahedronMode::Extended);
    StepValueCache cache(inst);
    testing::for_each_permutation(inst.ground_size(), [&](const Permutation& p) {
      EXPECT_LE(evaluate_schedule(inst, p, cache).total, lp + kTol);
    });
  }
}

TEST(SchedulerProperty, IntegralPointsDecouple) {
  std::vector<Instance> suite = random_suite(53, 8);
  for (auto name : bundled::kNames) suite.push_back(bundled::by_name(name));
  std::mt19937 rng(59);
  for (const auto& inst : suite) {
    const std::size_t m = inst.ground_size();
    for (int draw = 0; draw < 3; ++draw) {
      const auto p = testing::random_permutation(rng, m);
      for (auto mode : {PermutahedronMode::Extended, PermutahedronMode::CuttingPlane}) {
        auto master = build_master_lp(inst, mode);
        for (std::size_t i = 0; i < m; ++i) {
          const double v = static_cast<double>(p.position(i));
          master.lp.set_bounds(master.y[i], v, v);
        }
        auto sol = solve(master.lp);
        ASSERT_TRUE(sol.optimal());
        EXPECT_TRUE(verify(master.lp, sol));
        EXPECT_NEAR(*sol.objective, evaluate_schedule(inst, p).total, kTol);
      }
    }
  }
}

TEST(SchedulerProperty, ModesAgreeOnRootOptimum) {
  std::vector<Instance> suite = random_suite(61, 16);
  for (auto name : bundled::kNames) suite.push_back(bundled::by_name(name));
  for (const auto& inst : suite) {
    EXPECT_NEAR(testing::master_lp_value(inst, PermutahedronMode::Extended),
                testing::master_lp_value(inst, PermutahedronMode::CuttingPlane), kTol);
  }
}

TEST(SchedulerProperty, RepeatedSolvesAreIdentical) {
  for (const auto& inst : random_suite(67, 6)) {
    const auto a = solve_schedule(inst);
    const auto b = solve_schedule(inst);
    EXPECT_EQ(a.permutation, b.permutation);
    EXPECT_EQ(a.total, b.total);
    EXPECT_EQ(a.lp_bound, b.lp_bound);
  }
}

}  // namespace
}  // namespace permsched
