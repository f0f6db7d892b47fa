#include "qloc/locator.hpp"

#include <gtest/gtest.h>

#include "qloc/experiment.hpp"
#include "qloc/json_io.hpp"
#include "support/providers.hpp"

namespace qloc {
namespace {

using testing::PlantedBugProvider;
using testing::ScriptedProvider;

std::vector<std::uint64_t> uniform_costs(int l, std::uint64_t g = 1) {
  std::vector<std::uint64_t> costs;
  std::uint64_t running = 0;
  for (int i = 0; i < l; ++i) costs.push_back(running += g);
  return costs;
}

LocatorConfig perfect_config() {
  LocatorConfig config;
  return config;
}

TEST(Locate, FollowsTreeToThePlantedBug) {
  // l=4, uniform costs: root tests 2, the right child tests 3. A bug first
  // visible at segment 3 walks R then L, and finalization confirms both
  // neighbours at sufficient accuracy.
  const auto costs = uniform_costs(4, 2);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider provider(costs, 3);
  const auto result = locate(provider, tree, perfect_config());
  ASSERT_TRUE(result.located_segment.has_value());
  EXPECT_EQ(*result.located_segment, 3);
  ASSERT_EQ(result.trace.path.size(), 2u);
  EXPECT_EQ(result.trace.path[0].segment, 2);
  EXPECT_EQ(result.trace.path[0].direction, Direction::R);
  EXPECT_EQ(result.trace.path[1].segment, 3);
  EXPECT_EQ(result.trace.path[1].direction, Direction::L);
  EXPECT_TRUE(result.trace.path[0].confirmed);
  EXPECT_TRUE(result.trace.path[1].confirmed);
  // Measured tests: two early descent steps plus finalization of s2 and s3.
  ASSERT_EQ(result.trace.tests.size(), 4u);
  EXPECT_EQ(result.trace.tests[2].mode, TestMode::Sufficient);
  EXPECT_EQ(result.trace.tests[2].segment, 2);
  EXPECT_EQ(result.trace.tests[3].segment, 3);
}

TEST(Locate, LeftmostBugSkipsPredecessorTest) {
  const auto costs = uniform_costs(6, 3);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider provider(costs, 1);
  const auto result = locate(provider, tree, perfect_config());
  ASSERT_TRUE(result.located_segment.has_value());
  EXPECT_EQ(*result.located_segment, 1);
  EXPECT_EQ(result.trace.lookbacks, 0);  // all-L run has no opposite edge to revisit
  for (const Edge& edge : result.trace.path) {
    EXPECT_EQ(edge.direction, Direction::L);
  }
  // Finalization is the single sufficient test of s1.
  int sufficient = 0;
  for (const auto& record : result.trace.tests) {
    if (record.mode == TestMode::Sufficient) {
      ++sufficient;
      EXPECT_EQ(record.segment, 1);
    }
  }
  EXPECT_EQ(sufficient, 1);
}

TEST(Locate, ExhaustivePerfectVerdicts) {
  Rng rng(808);
  for (int l = 2; l <= 16; ++l) {
    std::vector<std::vector<std::uint64_t>> profiles{uniform_costs(l)};
    for (int extra = 0; extra < 3; ++extra) {
      std::vector<std::uint64_t> costs;
      std::uint64_t running = 0;
      for (int i = 0; i < l; ++i) {
        costs.push_back(running += static_cast<std::uint64_t>(rng.uniform_int(1, 9)));
      }
      profiles.push_back(std::move(costs));
    }
    for (const auto& costs : profiles) {
      const auto tree = SearchTree::build(costs);
      for (int bug = 1; bug <= l; ++bug) {
        PlantedBugProvider cost_provider(costs, bug);
        const auto cost_result = locate(cost_provider, tree, perfect_config());
        ASSERT_TRUE(cost_result.located_segment.has_value());
        EXPECT_EQ(*cost_result.located_segment, bug);
        EXPECT_EQ(cost_result.trace.restarts, 0);

        // Middle indices move strictly right on R edges and left on L edges.
        int last_r = 0;
        int last_l = l + 1;
        for (const Edge& edge : cost_result.trace.path) {
          if (edge.direction == Direction::R) {
            EXPECT_GT(edge.segment, last_r);
            last_r = edge.segment;
          } else {
            EXPECT_LT(edge.segment, last_l);
            last_l = edge.segment;
          }
        }

        PlantedBugProvider naive_provider(costs, bug);
        const auto naive_result = locate_naive_binary(naive_provider);
        ASSERT_TRUE(naive_result.located_segment.has_value());
        EXPECT_EQ(*naive_result.located_segment, bug);

        PlantedBugProvider linear_provider(costs, bug);
        const auto linear_result = locate_linear(linear_provider);
        ASSERT_TRUE(linear_result.located_segment.has_value());
        EXPECT_EQ(*linear_result.located_segment, bug);
        EXPECT_EQ(linear_result.trace.tests.size(), static_cast<std::size_t>(bug));
      }
    }
  }
}

TEST(LocateNaiveBinary, SplitsAtTheCentralSegment) {
  const auto costs = uniform_costs(4);
  PlantedBugProvider provider(costs, 3);
  const auto result = locate_naive_binary(provider);
  ASSERT_TRUE(result.located_segment.has_value());
  EXPECT_EQ(*result.located_segment, 3);
  ASSERT_EQ(result.trace.tests.size(), 2u);
  EXPECT_EQ(result.trace.tests[0].segment, 2);
  EXPECT_EQ(result.trace.tests[1].segment, 3);

  PlantedBugProvider two(uniform_costs(2), 2);
  const auto smallest = locate_naive_binary(two);
  ASSERT_EQ(smallest.trace.tests.size(), 1u);
  EXPECT_EQ(smallest.trace.tests[0].segment, 1);
  EXPECT_EQ(*smallest.located_segment, 2);
}

TEST(Locate, FinalizationContradictionPinsAndRestarts) {
  // Force a wrong bug verdict at the root (testing segment 5 of 8). The
  // descent reaches leaf 5, finalization refutes it at sufficient accuracy,
  // the root is pinned no-bug, and the restart walks right to the real bug.
  const auto costs = uniform_costs(8);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider planted(costs, 7);
  ScriptedProvider provider(planted, [](int segment, TestMode mode, int call) {
    if (call == 0 && segment == 5 && mode == TestMode::Early) return std::optional(TestDecision::Bug);
    return std::optional<TestDecision>();
  });
  const auto result = locate(provider, tree, perfect_config());
  ASSERT_TRUE(result.located_segment.has_value());
  EXPECT_EQ(*result.located_segment, 7);
  EXPECT_EQ(result.trace.restarts, 1);
  // The final path goes right at the pinned root without re-measuring it.
  ASSERT_FALSE(result.trace.path.empty());
  EXPECT_EQ(result.trace.path[0].segment, 5);
  EXPECT_EQ(result.trace.path[0].direction, Direction::R);
  EXPECT_TRUE(result.trace.path[0].pinned);
  EXPECT_TRUE(result.trace.path[0].cached);
}

TEST(Locate, LookBackCatchesAWrongBugVerdict) {
  // l=16 uniform: root tests 11. A forced wrong bug verdict there sends the
  // search left; three no-bug edges in a row trigger a look-back of the
  // root, which is refuted, pinned, and the restart finds the real bug.
  const auto costs = uniform_costs(16);
  const auto tree = SearchTree::build(costs);
  ASSERT_EQ(tree.root().middle, 11);
  PlantedBugProvider planted(costs, 13);
  ScriptedProvider provider(planted, [](int segment, TestMode mode, int call) {
    if (call == 0 && segment == 11 && mode == TestMode::Early) return std::optional(TestDecision::Bug);
    return std::optional<TestDecision>();
  });
  const auto result = locate(provider, tree, perfect_config());
  ASSERT_TRUE(result.located_segment.has_value());
  EXPECT_EQ(*result.located_segment, 13);
  EXPECT_EQ(result.trace.lookbacks, 1);
  EXPECT_EQ(result.trace.restarts, 1);
}

TEST(Locate, LookBackConfirmationIsReusedByFinalization) {
  // Same shape but the root's bug verdict is correct (bug at 11). The
  // look-back confirms it, and finalization reuses that sufficient verdict
  // instead of measuring segment 11 again.
  const auto costs = uniform_costs(16);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider provider(costs, 11);
  const auto result = locate(provider, tree, perfect_config());
  ASSERT_TRUE(result.located_segment.has_value());
  EXPECT_EQ(*result.located_segment, 11);
  EXPECT_EQ(result.trace.lookbacks, 1);
  EXPECT_EQ(result.trace.restarts, 0);
  int sufficient_11 = 0;
  int sufficient_total = 0;
  for (const auto& record : result.trace.tests) {
    if (record.mode == TestMode::Sufficient) {
      ++sufficient_total;
      if (record.segment == 11) ++sufficient_11;
    }
  }
  EXPECT_EQ(sufficient_11, 1);     // the look-back; finalization reused it
  EXPECT_EQ(sufficient_total, 2);  // look-back + finalization of s10
}

TEST(Locate, InconclusiveMeansFailure) {
  const auto costs = uniform_costs(4);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider planted(costs, 3);
  ScriptedProvider provider(planted, [](int, TestMode, int call) {
    return call == 1 ? std::optional(TestDecision::Inconclusive) : std::optional<TestDecision>();
  });
  const auto result = locate(provider, tree, perfect_config());
  EXPECT_FALSE(result.located_segment.has_value());
  EXPECT_TRUE(result.failed());
}

TEST(Locate, GlobalShotBudgetFailsTheSearch) {
  const auto costs = uniform_costs(4);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider provider(costs, 3);
  LocatorConfig config;
  config.global_shot_budget = 2;  // three one-shot tests exceed it
  const auto result = locate(provider, tree, config);
  EXPECT_FALSE(result.located_segment.has_value());
}

TEST(Locate, SegmentationMismatchThrows) {
  const auto reference =
      QuantumProgram(2, {{{GateKind::H, {0}}}, {{GateKind::H, {1}}, {GateKind::CZ, {0, 1}}}});
  const auto mutant =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::H, {1}}}, {{GateKind::CZ, {0, 1}}}});
  const auto tree = SearchTree::build(reference);
  LocatorConfig config;
  Rng rng(1);
  EXPECT_THROW(locate(mutant, reference, tree, config, rng), std::invalid_argument);
}

TEST(Locate, StatisticalEndToEnd) {
  // Obvious bug: the mutant prepares a basis state instead of a
  // superposition found by every method for any reasonable seed.
  const auto reference = QuantumProgram(
      2, {{{GateKind::H, {0}}, {GateKind::H, {1}}}, {{GateKind::CZ, {0, 1}}}, {{GateKind::H, {0}}}});
  const auto mutant = QuantumProgram(
      2, {{{GateKind::X, {0}}, {GateKind::X, {1}}}, {{GateKind::CZ, {0, 1}}}, {{GateKind::H, {0}}}});
  const auto tree = SearchTree::build(reference);
  const LocatorConfig config;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng cost_rng(derive_seed(100, seed, 0));
    const auto cost_result = locate(mutant, reference, tree, config, cost_rng);
    ASSERT_TRUE(cost_result.located_segment.has_value());
    EXPECT_EQ(*cost_result.located_segment, 1);

    Rng naive_rng(derive_seed(100, seed, 1));
    const auto naive_result = locate_naive_binary(mutant, reference, config.thresholds, naive_rng);
    EXPECT_EQ(naive_result.located_segment, std::optional<int>(1));

    Rng linear_rng(derive_seed(100, seed, 2));
    const auto linear_result = locate_linear(mutant, reference, config.thresholds, linear_rng);
    EXPECT_EQ(linear_result.located_segment, std::optional<int>(1));
  }
}

TEST(Locate, DeterministicGivenSeed) {
  const auto reference = QuantumProgram(
      2, {{{GateKind::H, {0}}, {GateKind::H, {1}}}, {{GateKind::CZ, {0, 1}}}, {{GateKind::H, {0}}}});
  const auto mutant = QuantumProgram(
      2, {{{GateKind::H, {0}}, {GateKind::T, {1}}}, {{GateKind::CZ, {0, 1}}}, {{GateKind::H, {0}}}});
  const auto tree = SearchTree::build(reference);
  const LocatorConfig config;
  Rng rng_a(31337);
  Rng rng_b(31337);
  const auto a = locate(mutant, reference, tree, config, rng_a);
  const auto b = locate(mutant, reference, tree, config, rng_b);
  EXPECT_EQ(a.located_segment, b.located_segment);
  EXPECT_EQ(a.trace.total_gates, b.trace.total_gates);
  EXPECT_EQ(a.trace.tests.size(), b.trace.tests.size());
}

TEST(Locate, CostLedgerIsExact) {
  Rng master(5150);
  GenSpec spec;
  spec.qubit_count = 4;
  spec.segment_count = 6;
  spec.min_gates_per_segment = 2;
  spec.max_gates_per_segment = 5;
  for (int trial = 0; trial < 25; ++trial) {
    Rng gen_rng(master.next_u64());
    const auto program = generate_program(spec, gen_rng);
    const auto injection = inject_bug(program, gen_rng, 0.05);
    if (!injection) continue;
    const auto tree = SearchTree::build(program);
    Rng rng(master.next_u64());
    const auto result = locate(injection->first, program, tree, LocatorConfig{}, rng);
    std::uint64_t recomputed = 0;
    for (const auto& record : result.trace.tests) {
      EXPECT_EQ(record.gates, record.shots * program.prefix_cost(record.segment));
      recomputed += record.shots * program.prefix_cost(record.segment);
    }
    EXPECT_EQ(result.trace.total_gates, recomputed);
    EXPECT_LE(result.trace.restarts, spec.segment_count);
  }
}

TEST(TraceJson, CarriesTheDocumentedFields) {
  const auto costs = uniform_costs(4, 2);
  const auto tree = SearchTree::build(costs);
  PlantedBugProvider provider(costs, 3);
  const auto result = locate(provider, tree, perfect_config());
  const auto j = trace_to_json(result);
  EXPECT_EQ(j.at("located_segment").get<int>(), 3);
  EXPECT_EQ(j.at("method").get<std::string>(), "cost");
  EXPECT_TRUE(j.contains("restarts"));
  EXPECT_TRUE(j.contains("lookbacks"));
  EXPECT_TRUE(j.contains("total_gates"));
  for (const auto& edge : j.at("edges")) {
    for (const char* key :
         {"node", "direction", "p", "power", "shots", "mode", "confirmed", "pinned"}) {
      EXPECT_TRUE(edge.contains(key)) << key;
    }
  }
  EXPECT_EQ(j.at("edges").size(), 2u);
}

}  // namespace
}  // namespace qloc
