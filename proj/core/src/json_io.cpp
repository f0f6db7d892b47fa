#include "qloc/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace qloc {

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const char* where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw std::invalid_argument("unknown key '" + key + "' in " + where);
  }
}

nlohmann::json verdict_to_json(const TestVerdict& verdict) {
  nlohmann::json j;
  j["decision"] = std::string(to_string(verdict.decision));
  j["p"] = verdict.p_value;
  j["power"] = verdict.power ? nlohmann::json(*verdict.power) : nlohmann::json(nullptr);
  j["shots"] = verdict.shots_used;
  j["gates"] = verdict.gates_executed;
  j["mode"] = std::string(to_string(verdict.mode));
  return j;
}

nlohmann::json locate_result_to_json(const LocateResult& result) {
  nlohmann::json j = trace_to_json(result);
  j["success"] = result.success;
  return j;
}

std::string format_double(double value, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

}  // namespace

nlohmann::json tree_to_json(const SearchTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (int id = 1; id <= tree.node_count(); ++id) {
    const SearchNode& node = tree.node(id);
    nlohmann::json n;
    n["id"] = node.id;
    n["range"] = {node.lo, node.hi};
    n["middle"] = node.is_leaf() ? nlohmann::json(nullptr) : nlohmann::json(node.middle);
    n["left"] = node.left < 0 ? nlohmann::json(nullptr) : nlohmann::json(node.left);
    n["right"] = node.right < 0 ? nlohmann::json(nullptr) : nlohmann::json(node.right);
    nodes.push_back(std::move(n));
  }
  nlohmann::json j;
  j["segment_count"] = tree.segment_count();
  j["root"] = tree.root().id;
  j["nodes"] = std::move(nodes);
  return j;
}

nlohmann::json trace_to_json(const LocateResult& result) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& edge : result.trace.path) {
    nlohmann::json e;
    e["node"] = edge.node;
    e["segment"] = edge.segment;
    e["direction"] = std::string(to_string(edge.direction));
    e["p"] = edge.verdict.p_value;
    e["power"] =
        edge.verdict.power ? nlohmann::json(*edge.verdict.power) : nlohmann::json(nullptr);
    e["shots"] = edge.verdict.shots_used;
    e["mode"] = std::string(to_string(edge.verdict.mode));
    e["confirmed"] = edge.confirmed;
    e["pinned"] = edge.pinned;
    e["cached"] = edge.cached;
    edges.push_back(std::move(e));
  }
  nlohmann::json tests = nlohmann::json::array();
  for (const TestRecord& record : result.trace.tests) {
    tests.push_back({{"segment", record.segment},
                     {"mode", std::string(to_string(record.mode))},
                     {"shots", record.shots},
                     {"gates", record.gates}});
  }
  nlohmann::json j;
  j["method"] = std::string(to_string(result.method));
  j["located_segment"] = result.located_segment ? nlohmann::json(*result.located_segment)
                                                : nlohmann::json(nullptr);
  j["edges"] = std::move(edges);
  j["restarts"] = result.trace.restarts;
  j["lookbacks"] = result.trace.lookbacks;
  j["total_gates"] = result.trace.total_gates;
  j["tests"] = std::move(tests);
  return j;
}

nlohmann::json histogram_to_json(const MeasurementHistogram& hist) {
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    if (hist.counts[i] > 0) counts[std::to_string(i)] = hist.counts[i];
  }
  nlohmann::json j;
  j["shots"] = hist.shots;
  j["counts"] = std::move(counts);
  return j;
}

nlohmann::json gen_spec_to_json(const GenSpec& spec) {
  nlohmann::json j;
  j["qubits"] = spec.qubit_count;
  j["segments"] = spec.segment_count;
  j["gates_per_segment"] = {spec.min_gates_per_segment, spec.max_gates_per_segment};
  j["seed"] = spec.seed;
  return j;
}

GenSpec gen_spec_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j, {"qubits", "segments", "gates_per_segment", "seed"}, "gen spec");
  GenSpec spec;
  spec.qubit_count = j.value("qubits", spec.qubit_count);
  spec.segment_count = j.value("segments", spec.segment_count);
  if (j.contains("gates_per_segment")) {
    const auto& range = j.at("gates_per_segment");
    if (!range.is_array() || range.size() != 2) {
      throw std::invalid_argument("gates_per_segment must be [min, max]");
    }
    spec.min_gates_per_segment = range[0].get<int>();
    spec.max_gates_per_segment = range[1].get<int>();
  }
  spec.seed = j.value("seed", spec.seed);
  spec.validate();
  return spec;
}

namespace {

nlohmann::json thresholds_to_json(const TestThresholds& thresholds) {
  nlohmann::json j;
  j["p_bug_sufficient"] = thresholds.p_bug_sufficient;
  j["power_bug_sufficient"] = thresholds.power_bug_sufficient;
  j["p_nobug_sufficient"] = thresholds.p_nobug_sufficient;
  j["p_bug_early"] = thresholds.p_bug_early;
  j["p_nobug_early"] = thresholds.p_nobug_early;
  j["alpha_nominal"] = thresholds.alpha_nominal;
  j["shot_limit"] = thresholds.shot_limit;
  j["initial_batch"] = thresholds.initial_batch;
  return j;
}

TestThresholds thresholds_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j,
                      {"p_bug_sufficient", "power_bug_sufficient", "p_nobug_sufficient",
                       "p_bug_early", "p_nobug_early", "alpha_nominal", "shot_limit",
                       "initial_batch"},
                      "thresholds");
  TestThresholds t;
  t.p_bug_sufficient = j.value("p_bug_sufficient", t.p_bug_sufficient);
  t.power_bug_sufficient = j.value("power_bug_sufficient", t.power_bug_sufficient);
  t.p_nobug_sufficient = j.value("p_nobug_sufficient", t.p_nobug_sufficient);
  t.p_bug_early = j.value("p_bug_early", t.p_bug_early);
  t.p_nobug_early = j.value("p_nobug_early", t.p_nobug_early);
  t.alpha_nominal = j.value("alpha_nominal", t.alpha_nominal);
  t.shot_limit = j.value("shot_limit", t.shot_limit);
  t.initial_batch = j.value("initial_batch", t.initial_batch);
  t.validate();
  return t;
}

}  // namespace

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["gen"] = gen_spec_to_json(config.gen);
  j["thresholds"] = thresholds_to_json(config.locator.thresholds);
  j["locator"] = {{"lookback_run_length", config.locator.lookback_run_length},
                  {"max_restarts", config.locator.max_restarts},
                  {"global_shot_budget", config.locator.global_shot_budget}};
  j["trials"] = config.trials;
  j["visibility_delta"] = config.visibility_delta;
  j["seed"] = config.master_seed;
  j["bug_attempts"] = config.bug_attempts;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  reject_unknown_keys(
      j, {"gen", "thresholds", "locator", "trials", "visibility_delta", "seed", "bug_attempts"},
      "config");
  ExperimentConfig config;
  if (j.contains("gen")) config.gen = gen_spec_from_json(j.at("gen"));
  if (j.contains("thresholds")) {
    config.locator.thresholds = thresholds_from_json(j.at("thresholds"));
  }
  if (j.contains("locator")) {
    const auto& loc = j.at("locator");
    reject_unknown_keys(loc, {"lookback_run_length", "max_restarts", "global_shot_budget"},
                        "locator");
    config.locator.lookback_run_length =
        loc.value("lookback_run_length", config.locator.lookback_run_length);
    config.locator.max_restarts = loc.value("max_restarts", config.locator.max_restarts);
    config.locator.global_shot_budget =
        loc.value("global_shot_budget", config.locator.global_shot_budget);
    if (config.locator.lookback_run_length < 2) {
      throw std::invalid_argument("lookback_run_length must be >= 2");
    }
  }
  config.trials = j.value("trials", config.trials);
  config.visibility_delta = j.value("visibility_delta", config.visibility_delta);
  config.master_seed = j.value("seed", config.master_seed);
  config.bug_attempts = j.value("bug_attempts", config.bug_attempts);
  config.validate();
  return config;
}

namespace {

nlohmann::json stats_to_json(const MethodStats& stats) {
  nlohmann::json j;
  j["trials"] = stats.trials;
  j["successes"] = stats.successes;
  j["success_prob"] = stats.success_prob;
  j["mean_gates"] = stats.mean_gates;
  j["std_gates"] = stats.std_gates;
  return j;
}

}  // namespace

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRecord& record : report.records) {
    nlohmann::json t;
    t["trial"] = record.trial;
    t["seed"] = record.seed;
    t["skipped"] = record.skipped;
    if (!record.skipped) {
      t["bug"] = {{"segment", record.bug.segment},
                  {"gate_position", record.bug.gate_position},
                  {"original", to_string(record.bug.original)},
                  {"replacement", to_string(record.bug.replacement)},
                  {"ground_truth_segment", record.bug.ground_truth_segment}};
      t["methods"] = {{"cost", locate_result_to_json(record.cost)},
                      {"naive", locate_result_to_json(record.naive)},
                      {"linear", locate_result_to_json(record.linear)}};
    }
    trials.push_back(std::move(t));
  }
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  j["summary"] = {{"cost", stats_to_json(report.cost)},
                  {"naive", stats_to_json(report.naive)},
                  {"linear", stats_to_json(report.linear)},
                  {"skipped_trials", report.skipped_trials}};
  j["trials"] = std::move(trials);
  return j;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out = "method,trials,successes,success_prob,mean_gates,std_gates\n";
  const auto row = [&out](const char* name, const MethodStats& stats) {
    out += name;
    out += ',' + std::to_string(stats.trials);
    out += ',' + std::to_string(stats.successes);
    out += ',' + format_double(stats.success_prob, "%.6f");
    out += ',' + format_double(stats.mean_gates, "%.3f");
    out += ',' + format_double(stats.std_gates, "%.3f");
    out += '\n';
  };
  row("cost", report.cost);
  row("naive", report.naive);
  row("linear", report.linear);
  return out;
}

}  // namespace qloc
