#include "qloc/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <sstream>
#include <utility>

namespace qloc {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 8> kGateNames{{
    {GateKind::H, "h"},
    {GateKind::X, "x"},
    {GateKind::Z, "z"},
    {GateKind::S, "s"},
    {GateKind::T, "t"},
    {GateKind::CX, "cx"},
    {GateKind::CZ, "cz"},
    {GateKind::CCX, "ccx"},
}};

}  // namespace

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::T:
      return 1;
    case GateKind::CX:
    case GateKind::CZ:
      return 2;
    case GateKind::CCX:
      return 3;
  }
  throw std::invalid_argument("unknown gate kind");
}

std::string_view gate_name(GateKind kind) {
  for (const auto& [k, name] : kGateNames) {
    if (k == kind) return name;
  }
  throw std::invalid_argument("unknown gate kind");
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& [kind, n] : kGateNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

const std::vector<GateKind>& kinds_with_arity(int wanted) {
  static const std::vector<GateKind> one{GateKind::H, GateKind::X, GateKind::Z,
                                         GateKind::S, GateKind::T};
  static const std::vector<GateKind> two{GateKind::CX, GateKind::CZ};
  static const std::vector<GateKind> three{GateKind::CCX};
  static const std::vector<GateKind> none{};
  switch (wanted) {
    case 1:
      return one;
    case 2:
      return two;
    case 3:
      return three;
    default:
      return none;
  }
}

std::string to_string(const Gate& gate) {
  std::string out{gate_name(gate.kind)};
  for (int q : gate.qubits) {
    out += ' ';
    out += std::to_string(q);
  }
  return out;
}

void validate_gate(const Gate& gate, int qubit_count) {
  const int want = arity(gate.kind);
  if (static_cast<int>(gate.qubits.size()) != want) {
    throw std::invalid_argument("gate '" + std::string(gate_name(gate.kind)) + "' takes " +
                                std::to_string(want) + " qubit(s), got " +
                                std::to_string(gate.qubits.size()));
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    const int q = gate.qubits[i];
    if (q < 0 || q >= qubit_count) {
      throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range [0, " +
                                  std::to_string(qubit_count) + ")");
    }
    for (std::size_t j = i + 1; j < gate.qubits.size(); ++j) {
      if (gate.qubits[j] == q) {
        throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
      }
    }
  }
}

std::uint64_t gate_count(const Segment& segment) { return segment.gates.size(); }

QuantumProgram::QuantumProgram(int qubit_count, std::vector<std::vector<Gate>> segment_gates)
    : qubit_count_(qubit_count) {
  if (qubit_count < 1) {
    throw std::invalid_argument("qubit count must be positive");
  }
  if (segment_gates.size() < 2) {
    throw std::invalid_argument("fewer than 2 segments");
  }
  segments_.reserve(segment_gates.size());
  prefix_costs_.reserve(segment_gates.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < segment_gates.size(); ++i) {
    if (segment_gates[i].empty()) {
      throw std::invalid_argument("segment " + std::to_string(i + 1) + " is empty");
    }
    for (const Gate& g : segment_gates[i]) {
      validate_gate(g, qubit_count);
    }
    running += segment_gates[i].size();
    prefix_costs_.push_back(running);
    segments_.push_back(Segment{static_cast<int>(i + 1), std::move(segment_gates[i])});
  }
}

const Segment& QuantumProgram::segment(int index) const {
  if (index < 1 || index > segment_count()) {
    throw std::out_of_range("segment index " + std::to_string(index) + " out of range [1, " +
                            std::to_string(segment_count()) + "]");
  }
  return segments_[static_cast<std::size_t>(index) - 1];
}

std::uint64_t QuantumProgram::prefix_cost(int index) const {
  if (index < 1 || index > segment_count()) {
    throw std::out_of_range("segment index " + std::to_string(index) + " out of range [1, " +
                            std::to_string(segment_count()) + "]");
  }
  return prefix_costs_[static_cast<std::size_t>(index) - 1];
}

bool QuantumProgram::same_segmentation(const QuantumProgram& other) const {
  return qubit_count_ == other.qubit_count_ && prefix_costs_ == other.prefix_costs_;
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\f\v";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view token, int line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

QuantumProgram parse_program(std::string_view text) {
  int qubit_count = -1;
  std::vector<std::vector<Gate>> segments;
  bool in_segment = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto tokens = split_tokens(line);
    const std::string_view head = tokens.front();

    if (head == "qubits") {
      if (qubit_count >= 0) throw ParseError(line_no, "duplicate 'qubits' header");
      if (!segments.empty()) throw ParseError(line_no, "'qubits' must precede all segments");
      if (tokens.size() != 2) throw ParseError(line_no, "usage: qubits <n>");
      const int n = parse_int(tokens[1], line_no, "qubit count");
      if (n < 1) throw ParseError(line_no, "qubit count must be positive");
      qubit_count = n;
      continue;
    }
    if (qubit_count < 0) throw ParseError(line_no, "missing 'qubits <n>' header");

    if (head == "seg") {
      if (tokens.size() != 1) throw ParseError(line_no, "'seg' takes no arguments");
      if (in_segment && segments.back().empty()) {
        throw ParseError(line_no, "empty segment");
      }
      segments.emplace_back();
      in_segment = true;
      continue;
    }

    const auto kind = gate_from_name(head);
    if (!kind) throw ParseError(line_no, "unknown gate '" + std::string(head) + "'");
    if (!in_segment) throw ParseError(line_no, "gate before first 'seg'");

    Gate gate{*kind, {}};
    gate.qubits.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      gate.qubits.push_back(parse_int(tokens[i], line_no, "qubit index"));
    }
    try {
      validate_gate(gate, qubit_count);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    segments.back().push_back(std::move(gate));
  }

  if (qubit_count < 0) throw ParseError(line_no, "missing 'qubits <n>' header");
  if (in_segment && segments.back().empty()) throw ParseError(line_no, "empty segment");
  try {
    return QuantumProgram(qubit_count, std::move(segments));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string serialize_program(const QuantumProgram& program) {
  std::ostringstream out;
  out << "qubits " << program.qubit_count() << '\n';
  for (const Segment& seg : program.segments()) {
    out << "seg\n";
    for (const Gate& gate : seg.gates) {
      out << to_string(gate) << '\n';
    }
  }
  return out.str();
}

}  // namespace qloc
