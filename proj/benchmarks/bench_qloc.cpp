#include <benchmark/benchmark.h>

#include "qloc/experiment.hpp"
#include "qloc/locator.hpp"
#include "qloc/search_tree.hpp"
#include "qloc/stats.hpp"
#include "qloc/statevector.hpp"

namespace {

qloc::QuantumProgram random_program(int qubits, int segments, int gates, std::uint64_t seed) {
  qloc::GenSpec spec;
  spec.qubit_count = qubits;
  spec.segment_count = segments;
  spec.min_gates_per_segment = gates;
  spec.max_gates_per_segment = gates;
  qloc::Rng rng(seed);
  return generate_program(spec, rng);
}

void BM_ApplyGateH(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  qloc::Statevector sv(qubits);
  const qloc::Gate gate{qloc::GateKind::H, {qubits / 2}};
  for (auto _ : state) {
    sv.apply(gate);
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << qubits));
}
BENCHMARK(BM_ApplyGateH)->Arg(10)->Arg(14)->Arg(18);

void BM_ApplyGateCX(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  qloc::Statevector sv(qubits);
  sv.apply({qloc::GateKind::H, {0}});
  const qloc::Gate gate{qloc::GateKind::CX, {0, qubits - 1}};
  for (auto _ : state) {
    sv.apply(gate);
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << qubits));
}
BENCHMARK(BM_ApplyGateCX)->Arg(10)->Arg(14)->Arg(18);

void BM_RunPrefix(benchmark::State& state) {
  const auto program = random_program(static_cast<int>(state.range(0)), 8, 6, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_prefix(program, 8).norm_sq());
  }
}
BENCHMARK(BM_RunPrefix)->Arg(5)->Arg(10)->Arg(16);

void BM_SampleMeasurements(benchmark::State& state) {
  const auto program = random_program(8, 4, 8, 23);
  const auto sv = run_prefix(program, 4);
  qloc::Rng rng(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_measurements(sv, 100000, rng).shots);
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SampleMeasurements);

void BM_ChiSquare(benchmark::State& state) {
  const auto program = random_program(8, 4, 8, 35);
  const auto sv = run_prefix(program, 4);
  const auto dist = exact_distribution(sv);
  qloc::Rng rng(10);
  const auto hist = sample_measurements(sv, 100000, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_square(hist, dist).p_value);
  }
}
BENCHMARK(BM_ChiSquare);

void BM_ChiSquarePower(benchmark::State& state) {
  const std::vector<double> p{0.3, 0.25, 0.2, 0.15, 0.1};
  const std::vector<double> q{0.32, 0.22, 0.21, 0.14, 0.11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qloc::chi_square_power(p, q, 10000, 0.05));
  }
}
BENCHMARK(BM_ChiSquarePower);

void BM_BuildTree(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  qloc::Rng rng(77);
  std::vector<std::uint64_t> costs;
  std::uint64_t running = 0;
  for (int i = 0; i < l; ++i) {
    costs.push_back(running += static_cast<std::uint64_t>(rng.uniform_int(1, 9)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qloc::SearchTree::build(costs).node_count());
  }
}
BENCHMARK(BM_BuildTree)->Arg(64)->Arg(1024);

void BM_LocateTrial(benchmark::State& state) {
  const auto reference = random_program(5, 8, 6, 3);
  qloc::Rng bug_rng(4);
  auto injection = inject_bug(reference, bug_rng, 0.05);
  while (!injection) injection = inject_bug(reference, bug_rng, 0.05);
  const auto tree = qloc::SearchTree::build(reference);
  const qloc::LocatorConfig config;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    qloc::Rng rng(qloc::derive_seed(5, seed++, 0));
    benchmark::DoNotOptimize(locate(injection->first, reference, tree, config, rng).trace.total_gates);
  }
}
BENCHMARK(BM_LocateTrial);

}  // namespace

BENCHMARK_MAIN();
