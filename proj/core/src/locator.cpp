#include "qloc/locator.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qloc {

std::string_view to_string(Direction direction) { return direction == Direction::L ? "L" : "R"; }

std::string_view to_string(Method method) {
  switch (method) {
    case Method::CostBinary:
      return "cost";
    case Method::NaiveBinary:
      return "naive";
    case Method::Linear:
      return "linear";
  }
  return "?";
}

StatisticalVerdictProvider::StatisticalVerdictProvider(const QuantumProgram& under_test,
                                                       const QuantumProgram& reference,
                                                       const TestThresholds& thresholds, Rng& rng)
    : actual_(under_test),
      oracle_(reference),
      prefix_costs_(under_test.prefix_costs()),
      thresholds_(thresholds),
      rng_(&rng) {
  if (!under_test.same_segmentation(reference)) {
    throw std::invalid_argument("segmentation mismatch between programs");
  }
  thresholds_.validate();
}

TestVerdict StatisticalVerdictProvider::test(int segment, TestMode mode) {
  return adaptive_test(actual_.distribution(segment), oracle_.distribution(segment),
                       prefix_costs_.at(static_cast<std::size_t>(segment) - 1), mode, thresholds_,
                       *rng_);
}

namespace {

Direction direction_of(const TestVerdict& verdict) {
  return verdict.decision == TestDecision::Bug ? Direction::L : Direction::R;
}

/// State of the cost-based search across restarts.
struct NodeState {
  std::optional<TestVerdict> early;
  std::optional<TestVerdict> sufficient;
  bool pinned = false;
};

class CostSearch {
 public:
  CostSearch(VerdictProvider& provider, const SearchTree& tree, const LocatorConfig& config)
      : provider_(provider),
        tree_(tree),
        config_(config),
        max_restarts_(config.max_restarts < 0 ? tree.segment_count() : config.max_restarts),
        states_(static_cast<std::size_t>(tree.node_count()) + 1) {}

  LocateResult run() {
    LocateResult result;
    result.method = Method::CostBinary;
    for (;;) {
      trace_.path.clear();
      const Outcome outcome = descend();
      if (outcome == Outcome::Located) {
        result.located_segment = located_;
        break;
      }
      if (outcome == Outcome::Fail) break;
      ++trace_.restarts;
      if (trace_.restarts > max_restarts_) break;
    }
    result.trace = std::move(trace_);
    return result;
  }

 private:
  enum class Outcome { Continue, Located, Restart, Fail };

  TestVerdict measure(int segment, TestMode mode) {
    const TestVerdict verdict = provider_.test(segment, mode);
    trace_.tests.push_back(TestRecord{segment, mode, verdict.shots_used, verdict.gates_executed});
    trace_.total_gates += verdict.gates_executed;
    shots_spent_ += verdict.shots_used;
    if (config_.global_shot_budget > 0 && shots_spent_ > config_.global_shot_budget) {
      budget_exhausted_ = true;
    }
    return verdict;
  }

  Outcome descend() {
    int current = tree_.root().id;
    for (;;) {
      const SearchNode& node = tree_.node(current);
      if (node.is_leaf()) return finalize(node.lo);

      NodeState& state = states_[node.id];
      TestVerdict verdict;
      bool cached = true;
      if (state.sufficient) {
        verdict = *state.sufficient;
      } else if (state.early) {
        verdict = *state.early;
      } else {
        verdict = measure(node.middle, TestMode::Early);
        if (budget_exhausted_ || verdict.decision == TestDecision::Inconclusive) {
          return Outcome::Fail;
        }
        state.early = verdict;
        cached = false;
      }

      const Direction direction = direction_of(verdict);
      trace_.path.push_back(Edge{node.id, node.middle, direction, verdict,
                                 state.sufficient.has_value(), state.pinned, cached});
      current = direction == Direction::L ? node.left : node.right;

      const Outcome lb = maybe_look_back();
      if (lb != Outcome::Continue) return lb;
    }
  }

  /// A run of same-direction edges casts doubt on the last opposite edge:
  /// if that edge were wrong, every later test would keep pointing the same
  /// way. Re-check it once at sufficient accuracy.
  Outcome maybe_look_back() {
    const int run = config_.lookback_run_length;
    auto& path = trace_.path;
    if (static_cast<int>(path.size()) < run) return Outcome::Continue;
    const Direction dir = path.back().direction;
    for (int i = 1; i < run; ++i) {
      if (path[path.size() - 1 - static_cast<std::size_t>(i)].direction != dir) {
        return Outcome::Continue;
      }
    }
    int opposite = static_cast<int>(path.size()) - 1;
    while (opposite >= 0 && path[static_cast<std::size_t>(opposite)].direction == dir) {
      --opposite;
    }
    if (opposite < 0) return Outcome::Continue;  // the run reaches the root

    Edge& edge = path[static_cast<std::size_t>(opposite)];
    NodeState& state = states_[edge.node];
    if (state.pinned || state.sufficient) return Outcome::Continue;  // confirmed at most once

    ++trace_.lookbacks;
    const TestVerdict verdict = measure(edge.segment, TestMode::Sufficient);
    if (budget_exhausted_ || verdict.decision == TestDecision::Inconclusive) return Outcome::Fail;
    state.sufficient = verdict;
    if (direction_of(verdict) == edge.direction) {
      edge.confirmed = true;
      return Outcome::Continue;
    }
    state.pinned = true;
    return Outcome::Restart;
  }

  /// Leaf candidate x holds only if, at sufficient accuracy, segments up to
  /// x-1 are clean and the prefix through x shows the bug.
  Outcome finalize(int leaf) {
    const int l = tree_.segment_count();
    if (leaf > 1) {
      const int node_id = tree_.node_testing(leaf - 1);
      NodeState& state = states_[node_id];
      TestVerdict verdict;
      if (state.sufficient) {
        verdict = *state.sufficient;
      } else {
        verdict = measure(leaf - 1, TestMode::Sufficient);
        if (budget_exhausted_ || verdict.decision == TestDecision::Inconclusive) {
          return Outcome::Fail;
        }
        state.sufficient = verdict;
      }
      if (verdict.decision == TestDecision::Bug) {
        // Refutes the no-bug edge that let the search pass segment leaf-1.
        state.pinned = true;
        return Outcome::Restart;
      }
      mark_confirmed(node_id);
    }

    if (leaf < l) {
      const int node_id = tree_.node_testing(leaf);
      NodeState& state = states_[node_id];
      TestVerdict verdict;
      if (state.sufficient) {
        verdict = *state.sufficient;
      } else {
        verdict = measure(leaf, TestMode::Sufficient);
        if (budget_exhausted_ || verdict.decision == TestDecision::Inconclusive) {
          return Outcome::Fail;
        }
        state.sufficient = verdict;
      }
      if (verdict.decision == TestDecision::NoBug) {
        // Refutes the bug edge that narrowed the range onto this leaf.
        state.pinned = true;
        return Outcome::Restart;
      }
      mark_confirmed(node_id);
    } else {
      // Rightmost leaf: the whole program is the tested prefix and no tree
      // node covers it.
      TestVerdict verdict;
      if (whole_program_) {
        verdict = *whole_program_;
      } else {
        verdict = measure(l, TestMode::Sufficient);
        if (budget_exhausted_ || verdict.decision == TestDecision::Inconclusive) {
          return Outcome::Fail;
        }
        whole_program_ = verdict;
      }
      if (verdict.decision == TestDecision::NoBug) {
        // Every descent edge said no-bug and so does the whole program:
        // there is nothing to pin and nothing to report.
        return Outcome::Fail;
      }
    }

    located_ = leaf;
    return Outcome::Located;
  }

  void mark_confirmed(int node_id) {
    for (Edge& edge : trace_.path) {
      if (edge.node == node_id) {
        edge.confirmed = true;
        return;
      }
    }
    assert(false && "finalized node is not on the descent path");
  }

  VerdictProvider& provider_;
  const SearchTree& tree_;
  const LocatorConfig& config_;
  const int max_restarts_;
  std::vector<NodeState> states_;
  std::optional<TestVerdict> whole_program_;
  SearchTrace trace_;
  std::uint64_t shots_spent_ = 0;
  bool budget_exhausted_ = false;
  int located_ = 0;
};

}  // namespace

LocateResult locate(VerdictProvider& provider, const SearchTree& tree,
                    const LocatorConfig& config) {
  if (provider.segment_count() != tree.segment_count()) {
    throw std::invalid_argument("tree and provider segment counts differ");
  }
  return CostSearch(provider, tree, config).run();
}

LocateResult locate(const QuantumProgram& under_test, const QuantumProgram& reference,
                    const SearchTree& tree, const LocatorConfig& config, Rng& rng) {
  StatisticalVerdictProvider provider(under_test, reference, config.thresholds, rng);
  return locate(provider, tree, config);
}

LocateResult locate_linear(VerdictProvider& provider) {
  LocateResult result;
  result.method = Method::Linear;
  const int l = provider.segment_count();
  for (int segment = 1; segment <= l; ++segment) {
    const TestVerdict verdict = provider.test(segment, TestMode::Sufficient);
    result.trace.tests.push_back(
        TestRecord{segment, TestMode::Sufficient, verdict.shots_used, verdict.gates_executed});
    result.trace.total_gates += verdict.gates_executed;
    if (verdict.decision == TestDecision::Inconclusive) return result;
    const Direction direction = direction_of(verdict);
    result.trace.path.push_back(Edge{segment, segment, direction, verdict, true, false, false});
    if (verdict.decision == TestDecision::Bug) {
      result.located_segment = segment;
      return result;
    }
  }
  return result;  // no segment showed a bug
}

LocateResult locate_linear(const QuantumProgram& under_test, const QuantumProgram& reference,
                           const TestThresholds& thresholds, Rng& rng) {
  StatisticalVerdictProvider provider(under_test, reference, thresholds, rng);
  return locate_linear(provider);
}

LocateResult locate_naive_binary(VerdictProvider& provider) {
  LocateResult result;
  result.method = Method::NaiveBinary;
  int lo = 1;
  int hi = provider.segment_count();
  int step = 0;
  while (lo < hi) {
    const int middle = (lo + hi) / 2;
    const TestVerdict verdict = provider.test(middle, TestMode::Sufficient);
    result.trace.tests.push_back(
        TestRecord{middle, TestMode::Sufficient, verdict.shots_used, verdict.gates_executed});
    result.trace.total_gates += verdict.gates_executed;
    if (verdict.decision == TestDecision::Inconclusive) return result;
    const Direction direction = direction_of(verdict);
    result.trace.path.push_back(Edge{++step, middle, direction, verdict, true, false, false});
    if (direction == Direction::L) {
      hi = middle;
    } else {
      lo = middle + 1;
    }
  }
  result.located_segment = lo;
  return result;
}

LocateResult locate_naive_binary(const QuantumProgram& under_test, const QuantumProgram& reference,
                                 const TestThresholds& thresholds, Rng& rng) {
  StatisticalVerdictProvider provider(under_test, reference, thresholds, rng);
  return locate_naive_binary(provider);
}

}  // namespace qloc
