#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qloc/circuit.hpp"

namespace qloc {

/// Node of the cost-based binary search tree. The target range [lo, hi] is
/// the set of segments the node is responsible for narrowing; an internal
/// node tests the output of segment `middle` (lo <= middle < hi), which
/// requires executing segments 1..middle. A bug verdict refines the range to
/// [lo, middle] (left child), a no-bug verdict to [middle + 1, hi] (right).
struct SearchNode {
  int id = 0;  // 1-based, assigned in breadth-first order from the root
  int lo = 0;
  int hi = 0;
  int middle = -1;  // -1 on leaves
  int left = -1;    // child node ids, -1 on leaves
  int right = -1;

  bool is_leaf() const { return lo == hi; }
};

/// Split index for the target range [lo, hi]: the x in [lo, hi) minimizing
///
///   | sum_{i in [lo, x)} c_i  -  sum_{i in (x, hi)} c_i |
///
/// where c_i are full prefix costs (tests always execute from the first
/// segment, whatever the subrange). The sums total the candidate test costs
/// on each side of the split, so the potential testing effort left and right
/// is as balanced as possible. Ties break toward the smallest x, the cheaper
/// test. prefix_costs holds c_1..c_l; requires 1 <= lo < hi <= l.
int select_middle(std::span<const std::uint64_t> prefix_costs, int lo, int hi);

/// Immutable cost-based binary search tree over segment indices 1..l.
/// Leaves, read left to right, are exactly the segments in order, and every
/// segment index in [1, l) is the middle of exactly one internal node.
class SearchTree {
 public:
  static SearchTree build(const QuantumProgram& program);
  static SearchTree build(std::span<const std::uint64_t> prefix_costs);

  const SearchNode& root() const { return nodes_.front(); }
  const SearchNode& node(int id) const;
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int segment_count() const { return segment_count_; }

  /// Id of the internal node whose middle is the given segment (1 <= s < l).
  int node_testing(int segment) const;

 private:
  SearchTree() = default;
  std::vector<SearchNode> nodes_;
  std::vector<int> node_by_middle_;
  int segment_count_ = 0;
};

}  // namespace qloc
