#include "qloc/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qloc {

namespace {

constexpr double kMinExpectedCount = 5.0;  // Cochran's rule
constexpr double kSumTolerance = 1e-9;

void check_distribution_sum(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("probabilities do not sum to 1");
  }
}

}  // namespace

BinnedCounts preprocess_bins(const MeasurementHistogram& hist, std::span<const double> expected) {
  if (hist.counts.size() != expected.size()) {
    throw std::invalid_argument("histogram and expected distribution sizes differ");
  }
  check_distribution_sum(expected);

  BinnedCounts out;
  out.shots = hist.shots;
  const auto m = static_cast<double>(hist.shots);
  double pooled_prob = 0.0;
  std::uint64_t pooled_count = 0;
  bool any_pooled = false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] == 0.0) {
      if (hist.counts[i] > 0) out.impossible_outcome = true;
      continue;
    }
    if (m * expected[i] < kMinExpectedCount) {
      pooled_prob += expected[i];
      pooled_count += hist.counts[i];
      any_pooled = true;
    } else {
      out.probs.push_back(expected[i]);
      out.counts.push_back(hist.counts[i]);
    }
  }
  if (any_pooled) {
    out.probs.push_back(pooled_prob);
    out.counts.push_back(pooled_count);
  }
  return out;
}

ChiSquareResult chi_square(const MeasurementHistogram& hist, std::span<const double> expected) {
  const BinnedCounts binned = preprocess_bins(hist, expected);
  ChiSquareResult result;
  if (binned.impossible_outcome) {
    result.impossible_outcome = true;
    result.statistic = std::numeric_limits<double>::infinity();
    result.dof = std::max<int>(0, static_cast<int>(binned.probs.size()) - 1);
    result.p_value = 0.0;
    return result;
  }
  if (binned.probs.size() < 2) {
    std::size_t support = 0;
    for (double p : expected) {
      if (p > 0.0) ++support;
    }
    // With a one-outcome oracle a matching observation is all there is to
    // see; with a wider oracle the sample was merely too small to test.
    result.statistic = 0.0;
    result.dof = 0;
    result.p_value = 1.0;
    result.degenerate = support >= 2;
    return result;
  }
  const auto m = static_cast<double>(binned.shots);
  double statistic = 0.0;
  for (std::size_t i = 0; i < binned.probs.size(); ++i) {
    const double expected_count = m * binned.probs[i];
    const double diff = static_cast<double>(binned.counts[i]) - expected_count;
    statistic += diff * diff / expected_count;
  }
  result.statistic = statistic;
  result.dof = static_cast<int>(binned.probs.size()) - 1;
  result.p_value = chi_square_p_value(statistic, result.dof);
  return result;
}

double chi_square_p_value(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("dof must be >= 1");
  if (!(statistic >= 0.0)) throw std::invalid_argument("statistic must be nonnegative");
  if (statistic == 0.0) return 1.0;
  // The survival function underflows to 0 long before this; skip the
  // special-function evaluation for absurdly large statistics.
  if (statistic > 1e8) return 0.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

double chi_square_critical(double alpha, int dof) {
  if (dof < 1) throw std::invalid_argument("dof must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  const boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double chi_square_power(std::span<const double> expected, std::span<const double> observed_freqs,
                        std::uint64_t shots, double alpha_nominal) {
  if (expected.size() != observed_freqs.size()) {
    throw std::invalid_argument("expected and observed sizes differ");
  }
  if (expected.size() < 2) throw std::invalid_argument("need at least 2 bins");
  if (!(alpha_nominal > 0.0 && alpha_nominal < 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1)");
  }
  check_distribution_sum(expected);
  check_distribution_sum(observed_freqs);

  double effect = 0.0;  // sum (q - p)^2 / p
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("expected probabilities must be positive");
    const double diff = observed_freqs[i] - expected[i];
    effect += diff * diff / expected[i];
  }
  const double lambda = static_cast<double>(shots) * effect;
  if (lambda == 0.0) return alpha_nominal;  // central case: rejection rate is the significance level

  const int dof = static_cast<int>(expected.size()) - 1;
  const double critical = chi_square_critical(alpha_nominal, dof);
  // Mean dof + lambda sits hundreds of standard deviations above the critical
  // value here; the lower tail is far below double precision.
  if (lambda > 1e5 && lambda > 4.0 * critical) return 1.0;
  const boost::math::non_central_chi_squared dist(dof, lambda);
  return boost::math::cdf(boost::math::complement(dist, critical));
}

}  // namespace qloc
