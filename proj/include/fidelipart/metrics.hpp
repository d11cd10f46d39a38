#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fidelipart/circuit.hpp"
#include "fidelipart/pipeline.hpp"

namespace fidelipart {

using PartitionPair = std::pair<std::size_t, std::size_t>;

/// Gate counts feeding the product-of-errors fidelity model.
struct GateTally {
  std::size_t h = 0;
  std::size_t cnot = 0;
  /// Circuit SWAP gates plus SWAPs attributed for inter-partition
  /// realignment; each costs three CNOTs.
  std::size_t swap = 0;
  std::size_t ccx = 0;
  std::size_t other_single = 0;
  /// Sum of (arity - 1) over multi-qubit gates of unknown kind.
  std::size_t other_multi_cnot_equivalents = 0;
};

[[nodiscard]] GateTally tally(const Circuit& circuit);

/// F = (1 - eps_h)^h * (1 - eps_cnot)^(cnot + 3 swap + c ccx + other_multi)
///     * (1 - eps_default_single)^other_single, with c the model's CCX
/// decomposition size. Evaluated in log space.
[[nodiscard]] double fidelity(const GateTally& counts,
                              const ErrorModel& model = {});
[[nodiscard]] double fidelity(std::size_t h_count, std::size_t cnot_count,
                              std::size_t swap_count,
                              const ErrorModel& model = {});

/// Product of per-partition fidelities (1 for none).
[[nodiscard]] double total_fidelity(std::span<const double> per_partition);

/// Global qubits present in two or more qubit maps.
[[nodiscard]] QubitSet cut_qubits(const std::vector<Partition>& parts);

/// Non-empty key intersections for every pair i < j.
[[nodiscard]] std::map<PartitionPair, QubitSet> pairwise_cuts(
    const std::vector<Partition>& parts);

struct SwapEstimate {
  std::size_t total = 0;
  std::map<PartitionPair, std::size_t> per_pair;
  /// Cost of pair (i, j) is credited to partition i.
  std::vector<std::size_t> per_partition;
  std::size_t waived = 0;
};

/// One SWAP per shared qubit whose local index differs between two
/// partitions. Pairs are visited lexicographically and shared qubits in
/// ascending order. With the teleportation heuristic on, once a qubit has
/// been misaligned more than three times, each further misalignment is
/// waived with probability 0.6 (splitmix64 stream seeded once per call).
[[nodiscard]] SwapEstimate estimate_swaps(const std::vector<Partition>& parts,
                                          bool heuristic_on = false,
                                          std::uint64_t seed = 42);

/// True iff the partitions hold exactly the original multiset of
/// (kind, global qubit tuple).
[[nodiscard]] bool validate_gate_counts(const Circuit& original,
                                        const std::vector<Partition>& parts);

struct PartitionMetrics {
  std::size_t gate_count = 0;
  std::size_t depth = 0;
  std::size_t h_count = 0;
  std::size_t cnot_count = 0;
  std::size_t swap_attributed = 0;
  double fidelity = 1.0;
  double error_rate = 0.0;
};

[[nodiscard]] PartitionMetrics partition_metrics(const Partition& part,
                                                 std::size_t swap_attributed,
                                                 const ErrorModel& model = {});

}  // namespace fidelipart
