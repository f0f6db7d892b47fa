#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qloc/circuit.hpp"
#include "qloc/rng.hpp"

namespace qloc {

/// Dense 2^n-amplitude quantum state. Basis index j encodes the register
/// with qubit 0 as the least significant bit of j.
class Statevector {
 public:
  /// Starts in |0...0>. qubit_count must be in [1, 24] (dense storage).
  explicit Statevector(int qubit_count);

  int qubit_count() const { return qubit_count_; }
  std::uint64_t dimension() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::uint64_t basis_index) const { return amps_.at(basis_index); }

  /// Sum of |a_j|^2; 1 within 1e-10 after any gate sequence.
  double norm_sq() const;

  /// In-place unitary action of one gate.
  void apply(const Gate& gate);

 private:
  int qubit_count_;
  std::vector<std::complex<double>> amps_;
};

/// Output state of segments 1..index applied to |0...0>; exactly
/// prefix_cost(index) gate applications.
Statevector run_prefix(const QuantumProgram& program, int index);

/// Z-basis outcome probabilities |a_j|^2.
std::vector<double> exact_distribution(const Statevector& state);

/// Counts per basis outcome from repeated Z-basis measurement.
struct MeasurementHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
};

/// `shots` independent draws from exact_distribution(state), deterministic
/// given the generator state. shots must be >= 1.
MeasurementHistogram sample_measurements(const Statevector& state, std::uint64_t shots, Rng& rng);

/// Inverse-CDF sampler over a fixed outcome distribution; lets an adaptive
/// test accumulate batches into one histogram without rebuilding the CDF.
class DistributionSampler {
 public:
  /// Distribution entries must be nonnegative and sum to 1 within 1e-9.
  explicit DistributionSampler(std::span<const double> distribution);

  std::size_t outcome_count() const { return cumulative_.size(); }
  void sample_into(MeasurementHistogram& hist, std::uint64_t shots, Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

/// Exact Z-basis output distribution of every segment prefix of a program,
/// computed in one simulation pass. Serves as the per-segment test oracle
/// when built from a reference program, and as the sampling source when
/// built from the program under test.
class PrefixDistributions {
 public:
  explicit PrefixDistributions(const QuantumProgram& program);

  int segment_count() const { return static_cast<int>(dists_.size()); }
  const std::vector<double>& distribution(int index) const;  // 1-based

 private:
  std::vector<std::vector<double>> dists_;
};

}  // namespace qloc
