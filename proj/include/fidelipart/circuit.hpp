#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fidelipart {

using Qubit = std::uint32_t;

enum class GateType : std::uint8_t { H, CNOT, SWAP, CCX, Other };

/// Gate catalog entry. Built-in kinds have a fixed arity; `Other` kinds carry
/// a declared name and arity.
class GateKind {
public:
  static GateKind h() { return {GateType::H, "h", 1}; }
  static GateKind cnot() { return {GateType::CNOT, "cx", 2}; }
  static GateKind swap() { return {GateType::SWAP, "swap", 2}; }
  static GateKind ccx() { return {GateType::CCX, "ccx", 3}; }
  /// Throws std::invalid_argument for arity 0 or a name containing whitespace.
  static GateKind other(std::string name, std::size_t arity);

  [[nodiscard]] GateType type() const noexcept { return type_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
  [[nodiscard]] bool is_multi_qubit() const noexcept { return arity_ > 1; }

  /// Human-readable class name used in listings ("HGate", "CNOTGate", ...).
  [[nodiscard]] std::string display_name() const;

  friend bool operator==(const GateKind&, const GateKind&) = default;
  friend auto operator<=>(const GateKind&, const GateKind&) = default;

private:
  GateKind(GateType type, std::string name, std::size_t arity)
      : type_(type), name_(std::move(name)), arity_(arity) {}

  GateType type_;
  std::string name_;
  std::size_t arity_;
};

/// A gate application. For CNOT the qubit tuple is (control, target).
class Gate {
public:
  /// Throws std::invalid_argument when the tuple length differs from the
  /// kind's arity or a qubit repeats.
  Gate(GateKind kind, std::vector<Qubit> qubits);

  static Gate h(Qubit q) { return {GateKind::h(), {q}}; }
  static Gate cnot(Qubit control, Qubit target) {
    return {GateKind::cnot(), {control, target}};
  }
  static Gate swap(Qubit a, Qubit b) { return {GateKind::swap(), {a, b}}; }
  static Gate ccx(Qubit a, Qubit b, Qubit c) {
    return {GateKind::ccx(), {a, b, c}};
  }

  [[nodiscard]] const GateKind& kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<Qubit>& qubits() const noexcept {
    return qubits_;
  }
  [[nodiscard]] bool acts_on(Qubit q) const noexcept;

  friend bool operator==(const Gate&, const Gate&) = default;
  friend auto operator<=>(const Gate&, const Gate&) = default;

private:
  GateKind kind_;
  std::vector<Qubit> qubits_;
};

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}
  /// Throws std::out_of_range if any gate touches a qubit >= num_qubits.
  Circuit(std::size_t num_qubits, std::vector<Gate> gates);

  /// Throws std::out_of_range if the gate touches a qubit >= num_qubits().
  void append(Gate gate);

  [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept {
    return gates_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
  [[nodiscard]] const Gate& operator[](std::size_t i) const {
    return gates_[i];
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

private:
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// Per-gate error rates used by both the hypergraph weighting and the
/// fidelity estimate.
struct ErrorModel {
  double eps_h = 0.001;
  double eps_cnot = 0.05;
  double eps_default_single = 0.001;
  double eps_default_multi = 0.05;
  std::size_t ccx_cnot_equivalents = 6;

  /// Throws std::invalid_argument unless every rate lies in (0, 1).
  void validate() const;
};

/// Longest chain under ASAP layering over qubit-sharing conflicts.
[[nodiscard]] std::size_t depth(const Circuit& circuit);

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Parses the line-oriented circuit text format:
///
///     qubits N
///     h q | cx c t | swap a b | ccx a b c | g <name> <arity> q...
///
/// `#` starts a comment and blank lines are ignored. Throws ParseError.
[[nodiscard]] Circuit parse_circuit(std::string_view text);
[[nodiscard]] std::string serialize_circuit(const Circuit& circuit);

enum class Benchmark { S, M, L };

/// Throws std::invalid_argument for anything other than s/m/l (any case).
[[nodiscard]] Benchmark parse_benchmark(std::string_view id);

/// S is the fixed 6-qubit/22-gate walkthrough circuit. M and L are
/// deterministic constructions with 10/55 and 24/88 qubits/gates.
[[nodiscard]] Circuit benchmark_circuit(Benchmark which);

}  // namespace fidelipart
