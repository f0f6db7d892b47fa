#pragma once

namespace qloc {

/// Parameters of the return-risk question: after advancing past a node on a
/// bug verdict under early determination, how likely is the search to come
/// back to it given the path observed so far?
struct ReturnRiskQuery {
  int segment_count = 0;   // program length l
  int tested_segment = 0;  // segment tested at the node in question (1 <= x < l)
  int l_edge_count = 0;    // bug-direction edges from that node's edge onward (w >= 1)
  double alpha = 0.0;      // per-test false-positive rate under early determination
  double beta = 0.0;       // per-test false-negative rate
  int path_edges = 0;      // edges from the node to the current one (>= l_edge_count)
};

/// Posterior probability that the search returns to the node:
///
///   ((l - x) / l) * (alpha / (1 - beta))^w
///
/// clamped to [0, 1]. The uniform-bug prior (l - x) / l covers the event
/// that the tested prefix was actually clean, and each further bug-direction
/// edge multiplies the odds by alpha / (1 - beta): a false alarm had to fire
/// again versus a true bug being tracked. The marginal path probability is
/// approximated by its dominant term (the bug being narrowed down
/// correctly), so the estimate is of approximation quality rather than
/// exact, and the trailing same-direction factors cancel, making the value
/// independent of the path length. Throws std::invalid_argument when the
/// query is out of range.
double posterior_return_probability(const ReturnRiskQuery& query);

}  // namespace qloc
