#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qloc/experiment.hpp"
#include "qloc/locator.hpp"
#include "qloc/search_tree.hpp"
#include "qloc/statevector.hpp"

namespace qloc {

/// Flat node table: {segment_count, root, nodes: [{id, range, middle, left,
/// right}]}; middle/left/right are null on leaves.
nlohmann::json tree_to_json(const SearchTree& tree);

/// Search trace: ordered edges with {node, segment, direction, p, power,
/// shots, mode, confirmed, pinned, cached}, plus restarts, lookbacks,
/// total_gates, and the measured-test ledger.
nlohmann::json trace_to_json(const LocateResult& result);

/// Sparse counts keyed by the decimal basis index.
nlohmann::json histogram_to_json(const MeasurementHistogram& hist);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Parses a config with every field optional; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json gen_spec_to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ExperimentReport& report);

/// CSV summary with header method,trials,successes,success_prob,mean_gates,std_gates.
std::string report_to_csv(const ExperimentReport& report);

}  // namespace qloc
