#include "qloc/return_analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qloc/rng.hpp"

namespace qloc {
namespace {

ReturnRiskQuery query(int l, int x, int w, double alpha, double beta, int path = -1) {
  return ReturnRiskQuery{l, x, w, alpha, beta, path < 0 ? w : path};
}

TEST(ReturnRisk, ReferencePointIsExact) {
  // ((8-4)/8) * (0.1 / 0.8) = 0.5 * 0.125; both factors are exact in
  // binary floating point, so the result is exactly 0.0625.
  EXPECT_EQ(posterior_return_probability(query(8, 4, 1, 0.1, 0.2)), 0.0625);
  EXPECT_EQ(posterior_return_probability(query(8, 4, 2, 0.1, 0.2)), 0.0078125);
}

TEST(ReturnRisk, ZeroAlphaMeansNoReturn) {
  EXPECT_EQ(posterior_return_probability(query(8, 4, 1, 0.0, 0.2)), 0.0);
}

TEST(ReturnRisk, StrictlyDecreasingInRunLength) {
  double previous = 1.0;
  for (int w = 1; w <= 20; ++w) {
    const double p = posterior_return_probability(query(8, 4, w, 0.1, 0.2));
    EXPECT_LT(p, previous);
    previous = p;
  }
}

TEST(ReturnRisk, LinearInRemainingSegments) {
  const double base = posterior_return_probability(query(10, 9, 1, 0.1, 0.2));
  for (int x = 1; x <= 9; ++x) {
    const double p = posterior_return_probability(query(10, x, 1, 0.1, 0.2));
    EXPECT_NEAR(p, base * (10 - x), 1e-15);
  }
}

TEST(ReturnRisk, IndependentOfPathLength) {
  const double short_path = posterior_return_probability(query(8, 4, 2, 0.1, 0.2, 2));
  const double long_path = posterior_return_probability(query(8, 4, 2, 0.1, 0.2, 12));
  EXPECT_EQ(short_path, long_path);
}

TEST(ReturnRisk, ClampsToOne) {
  // alpha close to 1 - beta from above makes the dominant-term ratio exceed 1.
  EXPECT_EQ(posterior_return_probability(query(8, 1, 1, 0.99, 0.98)), 1.0);
}

TEST(ReturnRisk, RejectsOutOfRangeQueries) {
  EXPECT_THROW(posterior_return_probability(query(1, 1, 1, 0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 0, 1, 0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 8, 1, 0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 4, 0, 0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 4, 3, 0.1, 0.2, 2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 4, 1, 1.0, 0.2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 4, 1, -0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(posterior_return_probability(query(8, 4, 1, 0.1, 1.0)), std::invalid_argument);
}

/// Abstract single-edge process behind the estimate: a bug is placed
/// uniformly among l segments, the node testing segment x fires a bug
/// verdict with probability 1-beta if the prefix contains the bug and alpha
/// otherwise. Conditioned on that verdict, the exact probability that the
/// prefix was actually clean follows by enumerating bug positions.
double exact_single_edge_posterior(int l, int x, double alpha, double beta) {
  const double clean = (l - x) * alpha;          // bug behind the tested prefix
  const double buggy = x * (1.0 - beta);         // bug inside the tested prefix
  return clean / (clean + buggy);
}

TEST(ReturnRisk, MonteCarloAgreesWithTheApproximation) {
  // The estimate substitutes the dominant term for the full marginal, which
  // underestimates the posterior; on this grid (x >= l/2) the truth stays
  // within a factor of two, and the simulation must match the exact
  // enumeration to Monte-Carlo accuracy.
  const int l = 8;
  Rng rng(20240601);
  for (const int x : {4, 5, 6}) {
    for (const double alpha : {0.05, 0.1}) {
      for (const double beta : {0.1, 0.2}) {
        const int samples = 1000000;
        std::int64_t conditioned = 0;
        std::int64_t clean_given_l_edge = 0;
        for (int s = 0; s < samples; ++s) {
          const int bug = rng.uniform_int(1, l);
          const bool in_prefix = bug <= x;
          const double p_bug_verdict = in_prefix ? 1.0 - beta : alpha;
          if (rng.uniform01() < p_bug_verdict) {
            ++conditioned;
            if (!in_prefix) ++clean_given_l_edge;
          }
        }
        ASSERT_GT(conditioned, 0);
        const double simulated =
            static_cast<double>(clean_given_l_edge) / static_cast<double>(conditioned);
        const double exact = exact_single_edge_posterior(l, x, alpha, beta);
        const double standard_error =
            std::sqrt(exact * (1.0 - exact) / static_cast<double>(conditioned));
        EXPECT_NEAR(simulated, exact, 3.0 * standard_error);

        const double estimate = posterior_return_probability(query(l, x, 1, alpha, beta));
        EXPECT_GE(simulated, estimate - 3.0 * standard_error);
        EXPECT_LE(simulated, 2.0 * estimate + 3.0 * standard_error);
      }
    }
  }
}

}  // namespace
}  // namespace qloc
