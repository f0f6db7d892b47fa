// qloc: locate buggy segments in segmented quantum programs.
//
// Subcommands:
//   generate    write a random segmented program from a generator spec
//   locate      search one mutant program for its buggy segment
//   experiment  run many generate/inject/locate trials and report statistics
//   analyze     tabulate the posterior probability of returning to a node

#include <spdlog/cfg/env.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <thread>

#include "qloc/experiment.hpp"
#include "qloc/json_io.hpp"
#include "qloc/locator.hpp"
#include "qloc/return_analysis.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

int run_generate(const std::string& spec_path, const std::string& out_path) {
  const qloc::GenSpec spec = qloc::gen_spec_from_json(nlohmann::json::parse(read_file(spec_path)));
  qloc::Rng rng(spec.seed);
  const qloc::QuantumProgram program = qloc::generate_program(spec, rng);
  write_file(out_path, qloc::serialize_program(program));
  spdlog::info("wrote {} segments / {} gates to {}", program.segment_count(),
               program.total_gate_count(), out_path);
  return 0;
}

int run_locate(const std::string& reference_path, const std::string& mutant_path,
               const std::string& method, std::uint64_t seed, const std::string& trace_path,
               const std::string& config_path, const std::string& tree_path) {
  const auto reference = qloc::parse_program(read_file(reference_path));
  const auto mutant = qloc::parse_program(read_file(mutant_path));

  qloc::ExperimentConfig config;
  if (!config_path.empty()) {
    config = qloc::config_from_json(nlohmann::json::parse(read_file(config_path)));
  }

  const qloc::SearchTree tree = qloc::SearchTree::build(reference);
  if (!tree_path.empty()) {
    write_file(tree_path, qloc::tree_to_json(tree).dump(2) + "\n");
  }

  qloc::Rng rng(seed);
  qloc::LocateResult result;
  if (method == "cost") {
    result = qloc::locate(mutant, reference, tree, config.locator, rng);
  } else if (method == "naive") {
    result = qloc::locate_naive_binary(mutant, reference, config.locator.thresholds, rng);
  } else {
    result = qloc::locate_linear(mutant, reference, config.locator.thresholds, rng);
  }

  if (!trace_path.empty()) {
    write_file(trace_path, qloc::trace_to_json(result).dump(2) + "\n");
  }
  if (result.located_segment) {
    std::printf("located segment %d (method %s, %llu gates executed, %d restarts)\n",
                *result.located_segment, std::string(to_string(result.method)).c_str(),
                static_cast<unsigned long long>(result.trace.total_gates),
                result.trace.restarts);
    return 0;
  }
  std::printf("search failed (method %s, %llu gates executed)\n",
              std::string(to_string(result.method)).c_str(),
              static_cast<unsigned long long>(result.trace.total_gates));
  return 2;
}

int run_experiment_cmd(const std::string& config_path, const std::string& csv_path,
                       const std::string& json_path, int threads) {
  const qloc::ExperimentConfig config =
      qloc::config_from_json(nlohmann::json::parse(read_file(config_path)));
  const qloc::ExperimentReport report = qloc::run_experiment(config, threads);
  const std::string csv = qloc::report_to_csv(report);
  write_file(csv_path, csv);
  if (!json_path.empty()) {
    write_file(json_path, qloc::report_to_json(report).dump(2) + "\n");
  }
  std::fputs(csv.c_str(), stdout);
  if (report.skipped_trials > 0) {
    std::printf("# %d trial(s) skipped: no Z-visible bug\n", report.skipped_trials);
  }
  return 0;
}

int run_analyze(int l, int x, int max_w, double alpha, double beta) {
  std::printf("P(B|A): posterior probability of returning to the node testing segment x\n");
  std::printf("l=%d alpha=%.4f beta=%.4f\n", l, alpha, beta);
  std::printf("%6s", "x\\w");
  for (int w = 1; w <= max_w; ++w) std::printf(" %12d", w);
  std::printf("\n");
  const int x_lo = x > 0 ? x : 1;
  const int x_hi = x > 0 ? x : l - 1;
  for (int xi = x_lo; xi <= x_hi; ++xi) {
    std::printf("%6d", xi);
    for (int w = 1; w <= max_w; ++w) {
      const double p =
          qloc::posterior_return_probability(qloc::ReturnRiskQuery{l, xi, w, alpha, beta, w});
      std::printf(" %12.6g", p);
    }
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::cfg::load_env_levels();  // SPDLOG_LEVEL=debug|info|warn|...

  CLI::App app{"Locate buggy segments in segmented quantum programs"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "Generate a random segmented program");
  std::string gen_spec_path;
  std::string gen_out_path;
  generate->add_option("--spec", gen_spec_path, "Generator spec (JSON)")->required();
  generate->add_option("--out", gen_out_path, "Output circuit file")->required();

  auto* locate = app.add_subcommand("locate", "Locate the buggy segment of a mutant program");
  std::string ref_path;
  std::string mut_path;
  std::string method = "cost";
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string config_path;
  std::string tree_path;
  locate->add_option("--reference", ref_path, "Reference circuit file")->required();
  locate->add_option("--mutant", mut_path, "Circuit file under test")->required();
  locate->add_option("--method", method, "Search method")
      ->check(CLI::IsMember({"cost", "naive", "linear"}));
  locate->add_option("--seed", seed, "Measurement RNG seed");
  locate->add_option("--trace", trace_path, "Write the search trace (JSON)");
  locate->add_option("--config", config_path, "Thresholds/locator config (JSON)");
  locate->add_option("--dump-tree", tree_path, "Write the cost-based search tree (JSON)");

  auto* experiment = app.add_subcommand("experiment", "Run a randomized locating experiment");
  std::string exp_config_path;
  std::string exp_csv_path;
  std::string exp_json_path;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  experiment->add_option("--config", exp_config_path, "Experiment config (JSON)")->required();
  experiment->add_option("--out", exp_csv_path, "Output report CSV")->required();
  experiment->add_option("--json", exp_json_path, "Optional full report (JSON)");
  experiment->add_option("--threads", threads, "Worker threads");

  auto* analyze = app.add_subcommand("analyze", "Tabulate the posterior return probability");
  int l = 8;
  int x = 0;
  int w = 5;
  double alpha = 0.1;
  double beta = 0.2;
  analyze->add_option("--l", l, "Segment count");
  analyze->add_option("--x", x, "Tested segment (0 = all)");
  analyze->add_option("--w", w, "Max bug-direction edge count");
  analyze->add_option("--alpha", alpha, "Per-test false-positive rate");
  analyze->add_option("--beta", beta, "Per-test false-negative rate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(gen_spec_path, gen_out_path);
    if (locate->parsed()) {
      return run_locate(ref_path, mut_path, method, seed, trace_path, config_path, tree_path);
    }
    if (experiment->parsed()) {
      return run_experiment_cmd(exp_config_path, exp_csv_path, exp_json_path, threads);
    }
    if (analyze->parsed()) return run_analyze(l, x, w, alpha, beta);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
