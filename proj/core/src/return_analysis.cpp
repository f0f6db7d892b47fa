#include "qloc/return_analysis.hpp"

#include <stdexcept>
#include <string>

namespace qloc {

double posterior_return_probability(const ReturnRiskQuery& query) {
  if (query.segment_count < 2) {
    throw std::invalid_argument("segment count must be >= 2");
  }
  if (query.tested_segment < 1 || query.tested_segment >= query.segment_count) {
    throw std::invalid_argument("tested segment must be in [1, l)");
  }
  if (query.l_edge_count < 1) {
    throw std::invalid_argument("at least one bug-direction edge is required");
  }
  if (query.path_edges < query.l_edge_count) {
    throw std::invalid_argument("path cannot hold fewer edges than the bug-direction count");
  }
  if (!(query.alpha >= 0.0 && query.alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in [0, 1)");
  }
  if (!(query.beta >= 0.0 && query.beta < 1.0)) {
    throw std::invalid_argument("beta must be in [0, 1)");
  }

  const double prior = static_cast<double>(query.segment_count - query.tested_segment) /
                       static_cast<double>(query.segment_count);
  const double ratio = query.alpha / (1.0 - query.beta);
  double odds = 1.0;
  for (int i = 0; i < query.l_edge_count; ++i) odds *= ratio;

  const double value = prior * odds;
  if (value < 0.0) return 0.0;
  return value > 1.0 ? 1.0 : value;
}

}  // namespace qloc
