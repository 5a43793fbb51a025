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

using testing::step_lp_value;
using testing::subset_of;

GroundSubset only(const Instance& inst, std::initializer_list<int> ids) {
  GroundSubset s(inst.ground_size(), false);
  for (int id : ids) {
    for (std::size_t i = 0; i < inst.orderable.size(); ++i) {
      if (inst.orderable[i] == id) s[i] = true;
    }
  }
  return s;
}

std::uint64_t bits_of(const GroundSubset& s) {
  std::uint64_t b = 0;
  for (std::size_t i = 0; i < s.size(); ++i) b |= std::uint64_t{s[i]} << i;
  return b;
}

Instance single_edge(double w) {
  return Instance{MatchingInstance{2, {{1, 0, 1, w}}, {0}}, {1}, {}};
}

Instance single_arc(double cap) {
  return Instance{FlowInstance{2, {{1, 0, 1, cap, false}}, 0, 1}, {1}, {}};
}

std::vector<Instance> random_suite() {
  std::mt19937 rng(31);
  std::vector<Instance> out;
  for (int k = 0; k < 24; ++k) {
    const std::size_t m = 2 + k % 5;
    out.push_back(k % 2 ? testing::random_flow(rng, m, k % 3 == 0 ? 1 : 0, 3 + k % 2)
                        : testing::random_matching(rng, m, k % 4 == 0 ? 1 : 0));
  }
  return out;
}

TEST(EmitStep, SingleEdge) {
  const auto inst = single_edge(5.0);
  EXPECT_NEAR(step_lp_value(inst, 1), 5.0, 1e-9);
  EXPECT_NEAR(step_lp_value(inst, 0), 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(step_value(inst, {true}), 5.0);
}

TEST(EmitStep, SingleArc) {
  const auto inst = single_arc(2.0);
  EXPECT_NEAR(step_lp_value(inst, 1), 2.0, 1e-9);
  EXPECT_NEAR(step_lp_value(inst, 0), 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(step_value(inst, {true}), 2.0);
}

TEST(EmitStep, CrossArcOfD1) {
  const auto inst = bundled::d1();
  const auto s = only(inst, {3});
  EXPECT_NEAR(step_value(inst, s), 1.9, 1e-9);
  EXPECT_NEAR(step_lp_value(inst, bits_of(s)), 1.9, 1e-6);
}

TEST(EmitStep, BlockShape) {
  const auto inst = bundled::g1();
  LinearProgram lp;
  auto h = lp.add_variables(3, 0.0, 1.0);
  auto block = emit_step(inst, 2, h, lp);
  EXPECT_EQ(block.vars.size(), 3u);
  // Three coupling rows plus one degree row per vertex touched by two edges.
  std::size_t coupling = 0;
  for (const auto& c : block.constraints) coupling += c.terms().size() == 2 && c.rhs() == 0.0;
  EXPECT_EQ(coupling, 3u);
  EXPECT_EQ(block.objective.size(), 3u);
}

TEST(EmitStep, StepOutOfRange) {
  const auto inst = bundled::g1();
  LinearProgram lp;
  auto h = lp.add_variables(3, 0.0, 1.0);
  EXPECT_THROW(emit_step(inst, 0, h, lp), std::out_of_range);
  EXPECT_THROW(emit_step(inst, 4, h, lp), std::out_of_range);
}

TEST(EmitStep, FixedArcsAreAlwaysAvailable) {
  // D3 keeps s->0 fixed; the empty chain still admits no flow since every
  // other arc is orderable, but all orderable arcs give the full unit.
  const auto inst = bundled::d3();
  EXPECT_NEAR(step_lp_value(inst, 0), 0.0, 1e-9);
  EXPECT_NEAR(step_lp_value(inst, (1u << 8) - 1), 1.0, 1e-6);
}

TEST(MaxFlow, D1AllArcs) {
  const auto inst = bundled::d1();
  const ElementMask all(inst.flow().arcs.size(), true);
  EXPECT_NEAR(max_flow_value(inst.flow(), all), testing::reference_max_flow(inst.flow(), all), 1e-12);
  EXPECT_NEAR(max_flow_value(inst.flow(), all), 2.0, 1e-12);
}

TEST(MaxFlow, D3PathOnly) {
  const auto inst = bundled::d3();
  EXPECT_NEAR(step_value(inst, only(inst, {1, 2, 3, 4, 5, 6})), 1.0, 1e-12);
}

TEST(MaxFlow, D3DetourOnly) {
  const auto inst = bundled::d3();
  EXPECT_NEAR(step_value(inst, only(inst, {7, 8})), 0.9, 1e-12);
}

TEST(MaxFlow, EmptyAvailableSetGivesZero) {
  const auto inst = bundled::d2();
  EXPECT_DOUBLE_EQ(max_flow_value(inst.flow(), ElementMask(inst.flow().arcs.size(), false)), 0.0);
}

TEST(MaxFlow, UncapacitatedArcsUseFiniteTotal) {
  const auto d = bundled::d1().flow();
  EXPECT_DOUBLE_EQ(d.effective_capacity(4), 1.0 + 1.0 + 1.9 + 2.0);
  const FlowInstance lone{2, {{1, 0, 1, 0.0, true}}, 0, 1};
  EXPECT_DOUBLE_EQ(lone.effective_capacity(0), 1.0);
}

TEST(MaxMatching, G1CrossEdge) {
  const auto inst = bundled::g1();
  EXPECT_NEAR(step_value(inst, only(inst, {2})), 1.9, 1e-12);
}

TEST(MaxMatching, G1AllEdges) {
  const auto inst = bundled::g1();
  const auto r = max_matching(inst.matching(), ElementMask(3, true));
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_EQ(r.edges, (std::vector<std::size_t>{0, 2}));
}

TEST(MaxMatching, EmptyAvailableSetGivesZero) {
  const auto inst = bundled::g2();
  EXPECT_DOUBLE_EQ(max_matching_value(inst.matching(), ElementMask(4, false)), 0.0);
}

TEST(MaxMatching, TiesPickLexicographicallySmallestEdgeSet) {
  // 4-cycle with unit weights: {0,2} and {1,3} both weigh 2.
  const MatchingInstance g{4, {{1, 0, 1, 1.0}, {2, 1, 2, 1.0}, {3, 2, 3, 1.0}, {4, 3, 0, 1.0}}, {0, 2}};
  EXPECT_EQ(max_matching(g, ElementMask(4, true)).edges, (std::vector<std::size_t>{0, 2}));
}

TEST(MaxMatching, EnumerationGuard) {
  MatchingInstance g;
  g.vertex_count = 52;
  for (int k = 0; k < 26; ++k) {
    g.left.push_back(k);
    g.edges.push_back({k + 1, k, 26 + k, 1.0});
  }
  EXPECT_THROW(max_matching(g, ElementMask(26, true)), std::length_error);
  ElementMask some(26, true);
  some[0] = false;
  EXPECT_NEAR(max_matching_value(g, some), 25.0, 1e-12);
}

TEST(StepValue, EmptyWithoutFixedIsZero) {
  for (const auto& inst : {bundled::g1(), bundled::g2(), bundled::d2()}) {
    EXPECT_DOUBLE_EQ(step_value(inst, GroundSubset(inst.ground_size(), false)), 0.0);
  }
}

TEST(StepValue, G2AllEdges) {
  const auto inst = bundled::g2();
  EXPECT_NEAR(step_value(inst, GroundSubset(4, true)), 2.0, 1e-12);
}

TEST(StepValue, D2AllArcs) {
  const auto inst = bundled::d2();
  const double v = step_value(inst, GroundSubset(4, true));
  EXPECT_NEAR(v, 2.0, 1e-12);
  EXPECT_NEAR(v, testing::reference_value(inst, 0b1111), 1e-12);
}

TEST(StepValue, SizeMismatchThrows) {
  EXPECT_THROW(step_value(bundled::g1(), GroundSubset(2, true)), std::invalid_argument);
}

TEST(OptimalSupport, FollowsOracleSolution) {
  EXPECT_EQ(optimal_support(bundled::g1()), (GroundSubset{true, false, true}));
  EXPECT_EQ(optimal_support(bundled::g2()), (GroundSubset{false, true, false, true}));
  // The shortest augmenting path uses the detour (0.9), the path carries the rest.
  EXPECT_EQ(optimal_support(bundled::d3()), GroundSubset(8, true));
}

TEST(OracleProperty, MatchesReferenceImplementations) {
  for (const auto& inst : random_suite()) {
    const std::size_t m = inst.ground_size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      ASSERT_NEAR(step_value(inst, subset_of(m, bits)), testing::reference_value(inst, bits), 1e-9);
    }
  }
}

TEST(OracleProperty, AgreesWithStepLpOnBundledInstances) {
  for (auto name : bundled::kNames) {
    const auto tally = testing::oracle_lp_disagreements(bundled::by_name(name));
    EXPECT_EQ(tally.disagreements, 0u) << name << " worst " << tally.worst;
  }
}

TEST(OracleProperty, AgreesWithStepLpOnRandomInstances) {
  for (const auto& inst : random_suite()) {
    const auto tally = testing::oracle_lp_disagreements(inst);
    EXPECT_EQ(tally.disagreements, 0u) << "worst " << tally.worst;
  }
}

TEST(OracleProperty, Monotone) {
  for (const auto& inst : random_suite()) {
    const std::size_t m = inst.ground_size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      const double base = step_value(inst, subset_of(m, bits));
      for (std::size_t e = 0; e < m; ++e) {
        EXPECT_LE(base, step_value(inst, subset_of(m, bits | (std::uint64_t{1} << e))) + 1e-12);
      }
    }
  }
}

TEST(OracleProperty, FixingAnElementNeverLowersValues) {
  for (const auto& inst : random_suite()) {
    const std::size_t m = inst.ground_size();
    for (std::size_t e = 0; e < m; ++e) {
      Instance moved = inst;
      moved.fixed.push_back(inst.orderable[e]);
      moved.orderable.erase(moved.orderable.begin() + static_cast<std::ptrdiff_t>(e));
      validate(moved);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (m - 1)); ++bits) {
        // Map the reduced ground set back onto the original indices.
        std::uint64_t original = 0;
        for (std::size_t i = 0, j = 0; i < m; ++i) {
          if (i == e) continue;
          if ((bits >> j++) & 1U) original |= std::uint64_t{1} << i;
        }
        EXPECT_GE(step_value(moved, subset_of(m - 1, bits)) + 1e-12,
                  step_value(inst, subset_of(m, original)));
      }
    }
  }
}

TEST(Validation, RejectsBadInstances) {
  auto g = bundled::g1();
  std::get<MatchingInstance>(g.data).edges[1].weight = -1.0;
  try {
    validate(g);
    FAIL() << "negative weight accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("element 2"), std::string::npos) << e.what();
  }

  auto same_side = bundled::g1();
  std::get<MatchingInstance>(same_side.data).edges[0].v = 3;
  EXPECT_THROW(validate(same_side), ValidationError);

  auto loop = bundled::d1();
  std::get<FlowInstance>(loop.data).sink = loop.flow().source;
  EXPECT_THROW(validate(loop), ValidationError);

  auto negative = bundled::d1();
  std::get<FlowInstance>(negative.data).arcs[0].capacity = -0.5;
  EXPECT_THROW(validate(negative), ValidationError);

  auto dangling = bundled::d1();
  dangling.fixed.push_back(42);
  EXPECT_THROW(validate(dangling), ValidationError);

  auto unassigned = bundled::d1();
  unassigned.fixed.pop_back();
  EXPECT_THROW(validate(unassigned), ValidationError);

  auto both = bundled::d1();
  both.fixed.push_back(1);
  EXPECT_THROW(validate(both), ValidationError);

  for (auto name : bundled::kNames) EXPECT_NO_THROW(validate(bundled::by_name(name)));
}

}  // namespace
}  // namespace permsched
