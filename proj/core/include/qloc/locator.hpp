#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qloc/circuit.hpp"
#include "qloc/rng.hpp"
#include "qloc/search_tree.hpp"
#include "qloc/segment_test.hpp"
#include "qloc/statevector.hpp"

namespace qloc {

enum class Direction { L, R };
enum class Method { CostBinary, NaiveBinary, Linear };

std::string_view to_string(Direction direction);
std::string_view to_string(Method method);

/// One decision taken during a search descent.
struct Edge {
  int node = 0;     // search-tree node id (step number for the baselines)
  int segment = 0;  // segment whose prefix was tested
  Direction direction = Direction::R;
  TestVerdict verdict;
  bool confirmed = false;  // verdict held at sufficient accuracy
  bool pinned = false;     // verdict fixed after a contradiction; never re-measured
  bool cached = false;     // reused from an earlier descent, no new measurement
};

/// One actual measurement run; the cost ledger of a search.
struct TestRecord {
  int segment = 0;
  TestMode mode = TestMode::Early;
  std::uint64_t shots = 0;
  std::uint64_t gates = 0;
};

struct SearchTrace {
  std::vector<Edge> path;         // edges of the final (or failed) descent
  std::vector<TestRecord> tests;  // every measured test, in execution order
  int restarts = 0;
  int lookbacks = 0;
  std::uint64_t total_gates = 0;  // sum of gates over `tests`, repeats included
};

struct LocateResult {
  std::optional<int> located_segment;  // empty on failure
  SearchTrace trace;
  bool success = false;  // set by the harness against the ground truth
  Method method = Method::CostBinary;

  bool failed() const { return !located_segment.has_value(); }
};

struct LocatorConfig {
  /// A look-back fires once this many same-direction edges appear in a row.
  int lookback_run_length = 3;
  TestThresholds thresholds;
  /// Cap on pin-and-restart rounds; -1 means the segment count.
  int max_restarts = -1;
  /// Optional cap on total shots across all tests of one search; 0 disables.
  std::uint64_t global_shot_budget = 0;
};

/// Source of segment-prefix verdicts. The statistical implementation backs
/// the real searches; tests substitute deterministic providers.
class VerdictProvider {
 public:
  virtual ~VerdictProvider() = default;
  virtual TestVerdict test(int segment, TestMode mode) = 0;
  virtual int segment_count() const = 0;
};

/// Adaptive chi-square verdicts for a program under test against the exact
/// prefix distributions of a reference program. Distributions of both
/// programs are simulated once up front; measurement shots are drawn from
/// the under-test distribution per call.
class StatisticalVerdictProvider final : public VerdictProvider {
 public:
  StatisticalVerdictProvider(const QuantumProgram& under_test, const QuantumProgram& reference,
                             const TestThresholds& thresholds, Rng& rng);

  TestVerdict test(int segment, TestMode mode) override;
  int segment_count() const override { return actual_.segment_count(); }

 private:
  PrefixDistributions actual_;
  PrefixDistributions oracle_;
  std::vector<std::uint64_t> prefix_costs_;
  TestThresholds thresholds_;
  Rng* rng_;
};

/// Cost-based binary search with early determination, finalization and
/// looking back.
///
/// Descends the tree on early-mode verdicts. After each step, a run of
/// lookback_run_length same-direction edges triggers a sufficient-accuracy
/// re-test of the last opposite edge (if one exists and was not already
/// confirmed). Reaching leaf x triggers finalization: sufficient-accuracy
/// tests must find no bug at segment x-1 (skipped when x = 1) and a bug at
/// segment x. Any contradiction pins the refuted node with the stronger
/// verdict and restarts the descent from the root; verdicts of previously
/// visited nodes are reused without re-measurement, pinned ones included.
/// Fails when a needed test is Inconclusive, the restart cap is exceeded, or
/// the optional shot budget runs out.
LocateResult locate(VerdictProvider& provider, const SearchTree& tree, const LocatorConfig& config);

LocateResult locate(const QuantumProgram& under_test, const QuantumProgram& reference,
                    const SearchTree& tree, const LocatorConfig& config, Rng& rng);

/// Naive baseline: test segments 1, 2, ... at sufficient accuracy; the first
/// bug verdict is the answer. Fails on Inconclusive or when no segment shows
/// a bug.
LocateResult locate_linear(VerdictProvider& provider);

LocateResult locate_linear(const QuantumProgram& under_test, const QuantumProgram& reference,
                           const TestThresholds& thresholds, Rng& rng);

/// Naive baseline: binary descent splitting ranges at the central segment,
/// sufficient accuracy at every node, no early determination, finalization
/// or looking back; the leaf is the answer.
LocateResult locate_naive_binary(VerdictProvider& provider);

LocateResult locate_naive_binary(const QuantumProgram& under_test, const QuantumProgram& reference,
                                 const TestThresholds& thresholds, Rng& rng);

}  // namespace qloc
