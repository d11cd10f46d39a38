#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fidelipart/circuit.hpp"

namespace fidelipart {

using NodeId = std::uint32_t;

enum class EdgeKind : std::uint8_t { GateLevel, TemporalChain, Unknown };

struct Hyperedge {
  std::vector<NodeId> pins;
  double weight = 1.0;
  EdgeKind kind = EdgeKind::Unknown;
  /// Set for temporal chains only.
  std::optional<Qubit> qubit;
};

/// Weighted hypergraph with one node per gate. Weights are kept unrounded;
/// they become integers only when written out or handed to the solver.
class Hypergraph {
public:
  Hypergraph() = default;
  explicit Hypergraph(std::vector<double> node_weights)
      : node_weights_(std::move(node_weights)) {}

  /// Drops empty edges. Throws std::out_of_range on a pin >= num_nodes().
  void add_edge(Hyperedge edge);

  [[nodiscard]] std::size_t num_nodes() const noexcept {
    return node_weights_.size();
  }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<double>& node_weights() const noexcept {
    return node_weights_;
  }
  [[nodiscard]] const std::vector<Hyperedge>& edges() const noexcept {
    return edges_;
  }
  [[nodiscard]] std::vector<Hyperedge>& mutable_edges() noexcept {
    return edges_;
  }

  /// Node and edge weights rounded to the nearest integer, as the solver and
  /// the file writers see them.
  [[nodiscard]] std::vector<std::int64_t> integral_node_weights() const;
  [[nodiscard]] std::vector<std::int64_t> integral_edge_weights() const;

  /// Structural equality: same node weights, and the same edges with equal
  /// pins and weights in order. Edge kinds are ignored since files lose them.
  [[nodiscard]] bool same_structure(const Hypergraph& other) const;

private:
  std::vector<double> node_weights_;
  std::vector<Hyperedge> edges_;
};

/// CNOT -> 10 / eps_cnot, H -> 1 / eps_h, anything else 1 / eps_default_single.
[[nodiscard]] double node_weight(const GateKind& kind, const ErrorModel& model);

/// 100 * arity / eps, for multi-qubit gates.
[[nodiscard]] double gate_level_edge_weight(std::size_t arity, double eps);

/// max(1, 100 * floor(m / 2) / eps_h) for a qubit hosting m gates.
[[nodiscard]] double temporal_edge_weight(std::size_t gates_on_qubit,
                                          const ErrorModel& model);

/// Builds the fidelity-aware hypergraph: one node per gate, one singleton
/// gate-level edge per multi-qubit gate (in gate order), then one temporal
/// chain per qubit with at least two gates (in qubit order).
[[nodiscard]] Hypergraph circuit_to_hypergraph(const Circuit& circuit,
                                               const ErrorModel& model = {});

/// Rescales edge weights to round(w * 1e6 / max_w), clamped to >= 1. Node
/// weights are untouched.
[[nodiscard]] Hypergraph normalize_weights(const Hypergraph& hg);

enum class HgrMode { PaperRaw, PaperNormalized, Standard };

[[nodiscard]] HgrMode parse_hgr_mode(std::string_view name);

/// PaperRaw / PaperNormalized: header `E N 1`, one `w p1 p2 ...` line per
/// edge (1-based pins), then one node weight per line. Standard: the same
/// body with normalized edge weights under the hMETIS `11` format code.
[[nodiscard]] std::string write_hgr(const Hypergraph& hg, HgrMode mode);

class HgrError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads any file produced by write_hgr, plus plain hMETIS with format codes
/// 0, 1, 10 and 11. Throws HgrError.
[[nodiscard]] Hypergraph read_hgr(std::string_view text);

}  // namespace fidelipart
