#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qloc {

/// Gate set used throughout: expressive enough for Grover-style circuits and
/// closed under the same-arity replacement rule used for bug injection.
enum class GateKind { H, X, Z, S, T, CX, CZ, CCX };

int arity(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// All kinds with the given arity (1, 2 or 3), in declaration order.
const std::vector<GateKind>& kinds_with_arity(int arity);

struct Gate {
  GateKind kind{};
  std::vector<int> qubits;  // CX: {control, target}; CCX: {control, control, target}

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Text form as it appears in circuit files, e.g. "cx 0 1".
std::string to_string(const Gate& gate);

/// Throws std::invalid_argument on arity mismatch, repeated qubit indices,
/// or an index outside [0, qubit_count).
void validate_gate(const Gate& gate, int qubit_count);

/// Contiguous block of gates; the unit the locator reasons about.
struct Segment {
  int index = 0;  // 1-based position within the program
  std::vector<Gate> gates;

  friend bool operator==(const Segment&, const Segment&) = default;
};

std::uint64_t gate_count(const Segment& segment);

/// Immutable segmented quantum program. Segment indices are 1-based.
class QuantumProgram {
 public:
  /// Validates every gate and the shape: at least two segments, none empty.
  QuantumProgram(int qubit_count, std::vector<std::vector<Gate>> segment_gates);

  int qubit_count() const { return qubit_count_; }
  int segment_count() const { return static_cast<int>(segments_.size()); }
  const Segment& segment(int index) const;  // 1-based
  const std::vector<Segment>& segments() const { return segments_; }

  /// Gates executed to prepare the output state of the given segment: the
  /// total gate count of segments 1..index. Strictly increasing, so testing
  /// a later segment is strictly more expensive.
  std::uint64_t prefix_cost(int index) const;
  const std::vector<std::uint64_t>& prefix_costs() const { return prefix_costs_; }
  std::uint64_t total_gate_count() const { return prefix_costs_.back(); }

  /// Same qubit count, segment count and per-segment gate counts.
  bool same_segmentation(const QuantumProgram& other) const;

  friend bool operator==(const QuantumProgram&, const QuantumProgram&) = default;

 private:
  int qubit_count_;
  std::vector<Segment> segments_;
  std::vector<std::uint64_t> prefix_costs_;
};

/// Parse error carrying the 1-based line number of the offending statement.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the circuit file format (UTF-8, one statement per line):
///
///   # comment
///   qubits 2
///   seg
///   h 0
///   h 1
///   seg
///   cx 0 1
///
/// `qubits <n>` must come first; `seg` opens a new segment; gate statements
/// are the lowercase gate name followed by its qubit operands. Throws
/// ParseError with the line number on malformed input.
QuantumProgram parse_program(std::string_view text);

/// Canonical text form; parse_program(serialize_program(p)) == p.
std::string serialize_program(const QuantumProgram& program);

}  // namespace qloc
