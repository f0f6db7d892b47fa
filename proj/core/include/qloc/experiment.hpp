#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qloc/circuit.hpp"
#include "qloc/locator.hpp"
#include "qloc/rng.hpp"

namespace qloc {

/// Shape of randomly generated programs.
struct GenSpec {
  int qubit_count = 5;
  int segment_count = 8;
  int min_gates_per_segment = 4;
  int max_gates_per_segment = 8;
  std::uint64_t seed = 0;  // used by the generate CLI; experiments derive per-trial seeds

  void validate() const;
};

/// Each segment gets a uniform gate count from the configured range; each
/// gate a uniform kind among those whose arity fits the register, on
/// uniformly drawn distinct qubits.
QuantumProgram generate_program(const GenSpec& spec, Rng& rng);

struct InjectedBug {
  int segment = 0;
  int gate_position = 0;  // 0-based within the segment
  Gate original;
  Gate replacement;
  /// Earliest prefix whose exact Z-basis distribution moves by more than the
  /// visibility delta (total variation distance). This, not the injected
  /// segment, is what a Z-basis tester can possibly localize.
  int ground_truth_segment = 0;
};

/// Replaces one uniformly chosen gate with a different uniform same-arity
/// kind on the same qubits, then determines the ground truth by scanning
/// prefix distributions. Returns nullopt when the draw is not detectable in
/// the Z basis (no prefix moves by more than visibility_delta) or the drawn
/// gate has no same-arity alternative; callers resample.
std::optional<std::pair<QuantumProgram, InjectedBug>> inject_bug(const QuantumProgram& program,
                                                                 Rng& rng,
                                                                 double visibility_delta);

/// Half the L1 distance between two outcome distributions.
double total_variation_distance(std::span<const double> a, std::span<const double> b);

struct ExperimentConfig {
  GenSpec gen;
  LocatorConfig locator;  // thresholds live inside
  int trials = 100;
  double visibility_delta = 0.05;
  std::uint64_t master_seed = 1;
  int bug_attempts = 100;  // injection redraws per trial before skipping it

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;  // generation/injection stream seed
  bool skipped = false;    // no Z-visible bug within the attempt budget
  InjectedBug bug;
  LocateResult cost;
  LocateResult naive;
  LocateResult linear;
};

struct MethodStats {
  int trials = 0;
  int successes = 0;
  double success_prob = 0.0;
  double mean_gates = 0.0;  // over successful trials
  double std_gates = 0.0;   // sample standard deviation over successful trials
};

struct ExperimentReport {
  ExperimentConfig config;
  MethodStats cost;
  MethodStats naive;
  MethodStats linear;
  int skipped_trials = 0;
  std::vector<TrialRecord> records;
};

/// Runs `trials` independent generate/inject/locate rounds, each with its
/// own seed streams derived from the master seed, and aggregates per-method
/// statistics. The three methods search the same mutant with independent
/// measurement streams. The result is identical for any thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, int threads = 1);

MethodStats compute_stats(const std::vector<TrialRecord>& records, Method method);

}  // namespace qloc
