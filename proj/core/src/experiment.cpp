#include "qloc/experiment.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qloc/statevector.hpp"

namespace qloc {

void GenSpec::validate() const {
  if (qubit_count < 1) throw std::invalid_argument("qubit count must be positive");
  if (segment_count < 2) throw std::invalid_argument("need at least 2 segments");
  if (min_gates_per_segment < 1 || max_gates_per_segment < min_gates_per_segment) {
    throw std::invalid_argument("gates-per-segment range is empty");
  }
}

QuantumProgram generate_program(const GenSpec& spec, Rng& rng) {
  spec.validate();
  std::vector<GateKind> feasible;
  for (int a = 1; a <= 3; ++a) {
    if (a <= spec.qubit_count) {
      const auto& kinds = kinds_with_arity(a);
      feasible.insert(feasible.end(), kinds.begin(), kinds.end());
    }
  }

  std::vector<std::vector<Gate>> segments(static_cast<std::size_t>(spec.segment_count));
  for (auto& segment : segments) {
    const int count = rng.uniform_int(spec.min_gates_per_segment, spec.max_gates_per_segment);
    segment.reserve(static_cast<std::size_t>(count));
    for (int g = 0; g < count; ++g) {
      const GateKind kind = feasible[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(feasible.size()) - 1))];
      Gate gate{kind, {}};
      const int want = arity(kind);
      while (static_cast<int>(gate.qubits.size()) < want) {
        const int q = rng.uniform_int(0, spec.qubit_count - 1);
        if (std::find(gate.qubits.begin(), gate.qubits.end(), q) == gate.qubits.end()) {
          gate.qubits.push_back(q);
        }
      }
      segment.push_back(std::move(gate));
    }
  }
  return QuantumProgram(spec.qubit_count, std::move(segments));
}

double total_variation_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("distribution sizes differ");
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) l1 += std::abs(a[i] - b[i]);
  return 0.5 * l1;
}

std::optional<std::pair<QuantumProgram, InjectedBug>> inject_bug(const QuantumProgram& program,
                                                                 Rng& rng,
                                                                 double visibility_delta) {
  const int segment_index = rng.uniform_int(1, program.segment_count());
  const Segment& segment = program.segment(segment_index);
  const int position = rng.uniform_int(0, static_cast<int>(segment.gates.size()) - 1);
  const Gate& original = segment.gates[static_cast<std::size_t>(position)];

  std::vector<GateKind> alternatives;
  for (GateKind kind : kinds_with_arity(arity(original.kind))) {
    if (kind != original.kind) alternatives.push_back(kind);
  }
  if (alternatives.empty()) return std::nullopt;  // ccx has no same-arity peer

  const GateKind replacement_kind = alternatives[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<int>(alternatives.size()) - 1))];
  const Gate replacement{replacement_kind, original.qubits};

  std::vector<std::vector<Gate>> gates;
  gates.reserve(static_cast<std::size_t>(program.segment_count()));
  for (const Segment& s : program.segments()) gates.push_back(s.gates);
  gates[static_cast<std::size_t>(segment_index) - 1][static_cast<std::size_t>(position)] =
      replacement;
  QuantumProgram mutant(program.qubit_count(), std::move(gates));

  const PrefixDistributions reference_dists(program);
  const PrefixDistributions mutant_dists(mutant);
  for (int x = 1; x <= program.segment_count(); ++x) {
    const double tvd =
        total_variation_distance(reference_dists.distribution(x), mutant_dists.distribution(x));
    if (tvd > visibility_delta) {
      return std::make_pair(std::move(mutant), InjectedBug{segment_index, position, original,
                                                           replacement, x});
    }
  }
  return std::nullopt;  // invisible in the Z basis
}

void ExperimentConfig::validate() const {
  gen.validate();
  locator.thresholds.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (visibility_delta < 0.0) throw std::invalid_argument("visibility delta must be >= 0");
  if (bug_attempts < 1) throw std::invalid_argument("bug attempts must be >= 1");
}

namespace {

// Seed streams per trial.
constexpr std::uint64_t kStreamGenerate = 0;
constexpr std::uint64_t kStreamCost = 1;
constexpr std::uint64_t kStreamNaive = 2;
constexpr std::uint64_t kStreamLinear = 3;

TrialRecord run_trial(const ExperimentConfig& config, int trial) {
  TrialRecord record;
  record.trial = trial;
  record.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial), kStreamGenerate);

  Rng gen_rng(record.seed);
  const QuantumProgram program = generate_program(config.gen, gen_rng);

  std::optional<std::pair<QuantumProgram, InjectedBug>> injection;
  for (int attempt = 0; attempt < config.bug_attempts && !injection; ++attempt) {
    injection = inject_bug(program, gen_rng, config.visibility_delta);
  }
  if (!injection) {
    record.skipped = true;
    spdlog::warn("trial {}: no Z-visible bug after {} attempts, skipping", trial,
                 config.bug_attempts);
    return record;
  }
  const auto& [mutant, bug] = *injection;
  record.bug = bug;

  const SearchTree tree = SearchTree::build(program);
  const auto master = config.master_seed;
  const auto t = static_cast<std::uint64_t>(trial);

  Rng cost_rng(derive_seed(master, t, kStreamCost));
  record.cost = locate(mutant, program, tree, config.locator, cost_rng);
  record.cost.success = record.cost.located_segment == bug.ground_truth_segment;

  Rng naive_rng(derive_seed(master, t, kStreamNaive));
  record.naive = locate_naive_binary(mutant, program, config.locator.thresholds, naive_rng);
  record.naive.success = record.naive.located_segment == bug.ground_truth_segment;

  Rng linear_rng(derive_seed(master, t, kStreamLinear));
  record.linear = locate_linear(mutant, program, config.locator.thresholds, linear_rng);
  record.linear.success = record.linear.located_segment == bug.ground_truth_segment;

  return record;
}

const LocateResult& result_of(const TrialRecord& record, Method method) {
  switch (method) {
    case Method::CostBinary:
      return record.cost;
    case Method::NaiveBinary:
      return record.naive;
    case Method::Linear:
      return record.linear;
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace

MethodStats compute_stats(const std::vector<TrialRecord>& records, Method method) {
  MethodStats stats;
  double sum = 0.0;
  std::vector<double> gates;
  for (const TrialRecord& record : records) {
    if (record.skipped) continue;
    ++stats.trials;
    const LocateResult& result = result_of(record, method);
    if (result.success) {
      ++stats.successes;
      gates.push_back(static_cast<double>(result.trace.total_gates));
      sum += gates.back();
    }
  }
  stats.success_prob = stats.trials > 0 ? static_cast<double>(stats.successes) / stats.trials : 0.0;
  if (!gates.empty()) {
    stats.mean_gates = sum / static_cast<double>(gates.size());
    if (gates.size() > 1) {
      double ss = 0.0;
      for (double g : gates) ss += (g - stats.mean_gates) * (g - stats.mean_gates);
      stats.std_gates = std::sqrt(ss / static_cast<double>(gates.size() - 1));
    }
  }
  return stats;
}

ExperimentReport run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.records.resize(static_cast<std::size_t>(config.trials));

  const int workers = std::max(1, std::min(threads, config.trials));
  std::atomic<int> next{0};
  const auto work = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= config.trials) break;
      report.records[static_cast<std::size_t>(t)] = run_trial(config, t);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (const TrialRecord& record : report.records) {
    if (record.skipped) ++report.skipped_trials;
  }
  report.cost = compute_stats(report.records, Method::CostBinary);
  report.naive = compute_stats(report.records, Method::NaiveBinary);
  report.linear = compute_stats(report.records, Method::Linear);
  return report;
}

}  // namespace qloc
