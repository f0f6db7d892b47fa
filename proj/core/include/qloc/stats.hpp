#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qloc/statevector.hpp"

namespace qloc {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  /// A count landed in a bin whose expected probability is zero. Certain
  /// evidence of a deviation, reported with p_value 0.
  bool impossible_outcome = false;
  /// Pooling left fewer than two bins although the distribution is not a
  /// point mass: the sample is too small to test at all. p_value is 1 but
  /// carries no evidence; adaptive callers escalate instead of deciding.
  bool degenerate = false;
};

/// Histogram reduced to the bins that enter the chi-square statistic.
/// Zero-probability bins are dropped (a nonzero count there raises the
/// impossible_outcome flag instead), and bins whose expected count
/// shots * p falls below 5 are pooled into a single bin so the chi-square
/// approximation stays valid.
struct BinnedCounts {
  std::vector<double> probs;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  bool impossible_outcome = false;
};

BinnedCounts preprocess_bins(const MeasurementHistogram& hist, std::span<const double> expected);

/// Pearson goodness-of-fit of a measurement histogram against an exact
/// outcome distribution (which must sum to 1 within 1e-9). With fewer than
/// two retained bins the distribution is a point mass and a matching
/// observation carries no evidence either way: p_value is 1 by convention.
ChiSquareResult chi_square(const MeasurementHistogram& hist, std::span<const double> expected);

/// Upper-tail probability P[chi2_dof > statistic].
double chi_square_p_value(double statistic, int dof);

/// Value v with P[chi2_dof > v] = alpha.
double chi_square_critical(double alpha, int dof);

/// Post-hoc power of the test at significance alpha_nominal, modeled as a
/// noncentral chi-square with noncentrality
///
///   lambda = shots * sum_i (q_i - p_i)^2 / p_i
///
/// over the supplied (already binned) expected probabilities p and observed
/// frequencies q. Returns exactly alpha_nominal when q == p, and is monotone
/// nondecreasing in shots for fixed q != p.
double chi_square_power(std::span<const double> expected, std::span<const double> observed_freqs,
                        std::uint64_t shots, double alpha_nominal);

}  // namespace qloc
