#include "qloc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qloc {

namespace {
constexpr int kMaxQubits = 24;  // 2^24 amplitudes = 256 MiB; dense storage stops scaling here
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

Statevector::Statevector(int qubit_count) : qubit_count_(qubit_count) {
  if (qubit_count < 1 || qubit_count > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::uint64_t{1} << qubit_count, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

double Statevector::norm_sq() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

void Statevector::apply(const Gate& gate) {
  validate_gate(gate, qubit_count_);
  const std::uint64_t dim = amps_.size();
  switch (gate.kind) {
    case GateKind::H: {
      const std::uint64_t bit = std::uint64_t{1} << gate.qubits[0];
      for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & bit) continue;
        const auto a = amps_[j];
        const auto b = amps_[j | bit];
        amps_[j] = (a + b) * kInvSqrt2;
        amps_[j | bit] = (a - b) * kInvSqrt2;
      }
      break;
    }
    case GateKind::X: {
      const std::uint64_t bit = std::uint64_t{1} << gate.qubits[0];
      for (std::uint64_t j = 0; j < dim; ++j) {
        if (!(j & bit)) std::swap(amps_[j], amps_[j | bit]);
      }
      break;
    }
    case GateKind::Z: {
      const std::uint64_t bit = std::uint64_t{1} << gate.qubits[0];
      for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & bit) amps_[j] = -amps_[j];
      }
      break;
    }
    case GateKind::S: {
      const std::uint64_t bit = std::uint64_t{1} << gate.qubits[0];
      const std::complex<double> phase{0.0, 1.0};
      for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & bit) amps_[j] *= phase;
      }
      break;
    }
    case GateKind::T: {
      const std::uint64_t bit = std::uint64_t{1} << gate.qubits[0];
      const std::complex<double> phase{kInvSqrt2, kInvSqrt2};  // e^{i pi/4}
      for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & bit) amps_[j] *= phase;
      }
      break;
    }
    case GateKind::CX: {
      const std::uint64_t control = std::uint64_t{1} << gate.qubits[0];
      const std::uint64_t target = std::uint64_t{1} << gate.qubits[1];
      for (std::uint64_t j = 0; j < dim; ++j) {
        if ((j & control) && !(j & target)) std::swap(amps_[j], amps_[j | target]);
      }
      break;
    }
    case GateKind::CZ: {
      const std::uint64_t c = std::uint64_t{1} << gate.qubits[0];
      const std::uint64_t t = std::uint64_t{1} << gate.qubits[1];
      for (std::uint64_t j = 0; j < dim; ++j) {
        if ((j & c) && (j & t)) amps_[j] = -amps_[j];
      }
      break;
    }
    case GateKind::CCX: {
      const std::uint64_t c1 = std::uint64_t{1} << gate.qubits[0];
      const std::uint64_t c2 = std::uint64_t{1} << gate.qubits[1];
      const std::uint64_t target = std::uint64_t{1} << gate.qubits[2];
      for (std::uint64_t j = 0; j < dim; ++j) {
        if ((j & c1) && (j & c2) && !(j & target)) std::swap(amps_[j], amps_[j | target]);
      }
      break;
    }
  }
}

Statevector run_prefix(const QuantumProgram& program, int index) {
  if (index < 1 || index > program.segment_count()) {
    throw std::out_of_range("prefix index " + std::to_string(index) + " out of range [1, " +
                            std::to_string(program.segment_count()) + "]");
  }
  Statevector state(program.qubit_count());
  for (int x = 1; x <= index; ++x) {
    for (const Gate& gate : program.segment(x).gates) {
      state.apply(gate);
    }
  }
  return state;
}

std::vector<double> exact_distribution(const Statevector& state) {
  std::vector<double> probs(state.dimension());
  const auto& amps = state.amplitudes();
  for (std::size_t j = 0; j < probs.size(); ++j) {
    probs[j] = std::norm(amps[j]);
  }
  return probs;
}

MeasurementHistogram sample_measurements(const Statevector& state, std::uint64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const DistributionSampler sampler(exact_distribution(state));
  MeasurementHistogram hist;
  hist.counts.assign(state.dimension(), 0);
  sampler.sample_into(hist, shots, rng);
  return hist;
}

DistributionSampler::DistributionSampler(std::span<const double> distribution) {
  if (distribution.empty()) throw std::invalid_argument("empty distribution");
  cumulative_.resize(distribution.size());
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < distribution.size(); ++j) {
    if (distribution[j] < 0.0) throw std::invalid_argument("negative probability");
    if (distribution[j] > 0.0) last_positive = j;
    running += distribution[j];
    cumulative_[j] = running;
  }
  if (std::abs(running - 1.0) > 1e-9) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
  // Absorb rounding into the last positive bin so zero-probability outcomes
  // stay unreachable for any u in [0, 1).
  for (std::size_t j = last_positive; j < cumulative_.size(); ++j) {
    cumulative_[j] = 1.0;
  }
}

void DistributionSampler::sample_into(MeasurementHistogram& hist, std::uint64_t shots,
                                      Rng& rng) const {
  if (hist.counts.empty()) hist.counts.assign(cumulative_.size(), 0);
  if (hist.counts.size() != cumulative_.size()) {
    throw std::invalid_argument("histogram size does not match distribution");
  }
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    ++hist.counts[idx < hist.counts.size() ? idx : hist.counts.size() - 1];
  }
  hist.shots += shots;
}

PrefixDistributions::PrefixDistributions(const QuantumProgram& program) {
  dists_.reserve(program.segment_count());
  Statevector state(program.qubit_count());
  for (const Segment& seg : program.segments()) {
    for (const Gate& gate : seg.gates) {
      state.apply(gate);
    }
    dists_.push_back(exact_distribution(state));
  }
}

const std::vector<double>& PrefixDistributions::distribution(int index) const {
  if (index < 1 || index > segment_count()) {
    throw std::out_of_range("prefix index " + std::to_string(index) + " out of range [1, " +
                            std::to_string(segment_count()) + "]");
  }
  return dists_[static_cast<std::size_t>(index) - 1];
}

}  // namespace qloc
