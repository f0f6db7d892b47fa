#include "qloc/segment_test.hpp"

#include <gtest/gtest.h>

#include "qloc/statevector.hpp"

namespace qloc {
namespace {

QuantumProgram one_qubit(const std::vector<Gate>& first, const std::vector<Gate>& second) {
  return QuantumProgram(1, {first, second});
}

TEST(Thresholds, DefaultsAreValid) { EXPECT_NO_THROW(TestThresholds{}.validate()); }

TEST(Thresholds, EarlyMustBeLaxer) {
  TestThresholds t;
  t.p_bug_early = 0.05;  // not laxer than sufficient 0.05
  EXPECT_THROW(t.validate(), std::invalid_argument);

  TestThresholds u;
  u.p_nobug_early = 0.85;  // not laxer than sufficient 0.8
  EXPECT_THROW(u.validate(), std::invalid_argument);

  TestThresholds v;
  v.shot_limit = 10;  // below the first batch
  EXPECT_THROW(v.validate(), std::invalid_argument);
}

TEST(AdaptiveTest, ObviousBugCaughtInFirstBatch) {
  // Reference prepares a superposition; the mutant replaced H with X, so the
  // output distribution is a point mass instead of 50/50.
  const auto reference = one_qubit({{GateKind::H, {0}}}, {{GateKind::Z, {0}}});
  const auto mutant = one_qubit({{GateKind::X, {0}}}, {{GateKind::Z, {0}}});
  const TestThresholds thresholds;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (TestMode mode : {TestMode::Early, TestMode::Sufficient}) {
      Rng rng(derive_seed(1, seed, 0));
      const auto verdict = adaptive_test(mutant, reference, 1, mode, thresholds, rng);
      EXPECT_EQ(verdict.decision, TestDecision::Bug);
      EXPECT_EQ(verdict.shots_used, 100u);
      EXPECT_EQ(verdict.gates_executed, 100u * mutant.prefix_cost(1));
    }
  }
}

TEST(AdaptiveTest, ImpossibleOutcomeIsImmediateBug) {
  // Oracle is a point mass on |0>; the mutant always lands on |1>.
  const auto reference = one_qubit({{GateKind::Z, {0}}}, {{GateKind::Z, {0}}});
  const auto mutant = one_qubit({{GateKind::X, {0}}}, {{GateKind::Z, {0}}});
  Rng rng(42);
  const auto verdict = adaptive_test(mutant, reference, 1, TestMode::Early, TestThresholds{}, rng);
  EXPECT_EQ(verdict.decision, TestDecision::Bug);
  EXPECT_EQ(verdict.p_value, 0.0);
  ASSERT_TRUE(verdict.power.has_value());
  EXPECT_EQ(*verdict.power, 1.0);
  EXPECT_EQ(verdict.shots_used, 100u);
}

TEST(AdaptiveTest, PointMassOracleMatchingObservationIsNoBug) {
  const auto reference = one_qubit({{GateKind::Z, {0}}}, {{GateKind::Z, {0}}});
  Rng rng(42);
  const auto verdict =
      adaptive_test(reference, reference, 1, TestMode::Sufficient, TestThresholds{}, rng);
  EXPECT_EQ(verdict.decision, TestDecision::NoBug);
  EXPECT_EQ(verdict.p_value, 1.0);
  EXPECT_EQ(verdict.shots_used, 100u);
}

TEST(AdaptiveTest, BugFreePrefixMostlyNoBug) {
  // Monte-Carlo over seeds on a clean 2-qubit prefix: the no-bug rate should
  // dominate and false bug verdicts stay near the nominal significance
  // level (sequential looks inflate it somewhat).
  const auto reference =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::H, {1}}}, {{GateKind::CZ, {0, 1}}}});
  const TestThresholds thresholds;
  int bug = 0;
  int nobug = 0;
  int inconclusive = 0;
  const int seeds = 1000;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(derive_seed(7, static_cast<std::uint64_t>(seed), 1));
    const auto verdict =
        adaptive_test(reference, reference, 1, TestMode::Sufficient, thresholds, rng);
    switch (verdict.decision) {
      case TestDecision::Bug:
        ++bug;
        break;
      case TestDecision::NoBug:
        ++nobug;
        break;
      case TestDecision::Inconclusive:
        ++inconclusive;
        break;
    }
  }
  EXPECT_GE(nobug, seeds * 7 / 10);  // clear majority; the rest mostly hit the shot limit
  EXPECT_LE(bug, seeds * 8 / 100);   // sequential looks keep false alarms near alpha
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(derive_seed(7, static_cast<std::uint64_t>(seed), 1));
    const auto verdict =
        adaptive_test(reference, reference, 1, TestMode::Sufficient, thresholds, rng);
    if (verdict.decision == TestDecision::Inconclusive) {
      EXPECT_EQ(verdict.shots_used, thresholds.shot_limit);
    }
  }
}

TEST(AdaptiveTest, VerdictIsDeterministicGivenSeed) {
  const auto reference =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::H, {1}}}, {{GateKind::CZ, {0, 1}}}});
  const auto mutant =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::X, {1}}}, {{GateKind::CZ, {0, 1}}}});
  for (TestMode mode : {TestMode::Early, TestMode::Sufficient}) {
    Rng rng_a(909);
    Rng rng_b(909);
    const auto a = adaptive_test(mutant, reference, 2, mode, TestThresholds{}, rng_a);
    const auto b = adaptive_test(mutant, reference, 2, mode, TestThresholds{}, rng_b);
    EXPECT_EQ(a.decision, b.decision);
    EXPECT_EQ(a.shots_used, b.shots_used);
    EXPECT_EQ(a.p_value, b.p_value);
  }
}

TEST(AdaptiveTest, EarlyNeverUsesMoreShotsThanSufficient) {
  // Same seed means both modes see the same measurement stream, and early
  // thresholds are strictly laxer, so early stops no later.
  const auto reference =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::H, {1}}}, {{GateKind::CZ, {0, 1}}}});
  const auto mutant =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::T, {1}}}, {{GateKind::CZ, {0, 1}}}});
  const TestThresholds thresholds;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (int prefix = 1; prefix <= 2; ++prefix) {
      Rng rng_early(derive_seed(3, seed, 10));
      Rng rng_sufficient(derive_seed(3, seed, 10));
      const auto early =
          adaptive_test(mutant, reference, prefix, TestMode::Early, thresholds, rng_early);
      const auto sufficient = adaptive_test(mutant, reference, prefix, TestMode::Sufficient,
                                            thresholds, rng_sufficient);
      if (early.decision != TestDecision::Inconclusive &&
          sufficient.decision != TestDecision::Inconclusive) {
        EXPECT_LE(early.shots_used, sufficient.shots_used);
      }
    }
  }
}

TEST(AdaptiveTest, GateAccountingIsExact) {
  Rng seeds(64);
  const auto reference =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::H, {1}}},
                         {{GateKind::CX, {0, 1}}, {GateKind::T, {0}}},
                         {{GateKind::CZ, {0, 1}}}});
  const auto mutant =
      QuantumProgram(2, {{{GateKind::H, {0}}, {GateKind::H, {1}}},
                         {{GateKind::CX, {0, 1}}, {GateKind::S, {0}}},
                         {{GateKind::CZ, {0, 1}}}});
  for (int trial = 0; trial < 50; ++trial) {
    const int prefix = 1 + trial % 3;
    Rng rng(seeds.next_u64());
    const auto verdict = adaptive_test(mutant, reference, prefix,
                                       trial % 2 == 0 ? TestMode::Early : TestMode::Sufficient,
                                       TestThresholds{}, rng);
    EXPECT_EQ(verdict.gates_executed, verdict.shots_used * mutant.prefix_cost(prefix));
  }
}

TEST(AdaptiveTest, InconclusiveOnlyAtShotLimit) {
  // A deviation too small to resolve within a tiny shot budget.
  std::vector<double> oracle{0.5, 0.5};
  std::vector<double> actual{0.56, 0.44};
  TestThresholds thresholds;
  thresholds.shot_limit = 200;
  int inconclusive = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(derive_seed(11, seed, 2));
    const auto verdict = adaptive_test(actual, oracle, 7, TestMode::Sufficient, thresholds, rng);
    if (verdict.decision == TestDecision::Inconclusive) {
      ++inconclusive;
      EXPECT_EQ(verdict.shots_used, thresholds.shot_limit);
    }
  }
  EXPECT_GT(inconclusive, 0);
}

TEST(AdaptiveTest, DegenerateBinningEscalatesInsteadOfDeciding) {
  // 32-outcome uniform oracle: at 100 shots every expected count is below 5,
  // so the first batch cannot be tested and the verdict needs at least 300.
  const std::vector<double> uniform(32, 1.0 / 32.0);
  Rng rng(5);
  const auto verdict =
      adaptive_test(uniform, uniform, 3, TestMode::Early, TestThresholds{}, rng);
  EXPECT_NE(verdict.decision, TestDecision::Inconclusive);
  EXPECT_GE(verdict.shots_used, 300u);
}

}  // namespace
}  // namespace qloc
