#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fidelipart/metrics.hpp"

namespace fidelipart {

struct MetricsOptions {
  ErrorModel model;
  bool teleport_heuristic = false;
  std::uint64_t seed = 42;
};

/// One side of a comparison, before evaluation.
struct MethodInput {
  std::string name;
  std::vector<Partition> parts;
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> target_k;
  double seconds = 0.0;
};

struct MethodReport {
  std::string name;
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> target_k;
  std::vector<Partition> parts;
  QubitSet cut;
  std::map<PartitionPair, QubitSet> pairwise;
  SwapEstimate swaps;
  std::vector<PartitionMetrics> rows;
  double fidelity = 1.0;
  std::size_t max_depth = 0;
  bool gate_counts_valid = false;
  double seconds = 0.0;

  [[nodiscard]] std::size_t partition_count() const { return parts.size(); }
};

struct ComparisonReport {
  std::size_t num_qubits = 0;
  std::size_t num_gates = 0;
  MethodReport baseline;
  MethodReport fidelipart;

  [[nodiscard]] bool valid() const {
    return baseline.gate_counts_valid && fidelipart.gate_counts_valid;
  }
};

[[nodiscard]] MethodReport evaluate_method(const Circuit& original,
                                           MethodInput input,
                                           const MetricsOptions& options = {});

/// Evaluates both sides. A failed gate-count check is recorded on the
/// method, not thrown.
[[nodiscard]] ComparisonReport build_report(const Circuit& original,
                                            MethodInput baseline,
                                            MethodInput fidelipart,
                                            const MetricsOptions& options = {});

/// Stable key/value document. Wall-clock times live under "timings" only.
[[nodiscard]] nlohmann::ordered_json to_json(const ComparisonReport& report);
[[nodiscard]] nlohmann::ordered_json to_json(const MethodReport& method);
/// `{"qubit_map": [[global, local], ...], "gates": [...]}`.
[[nodiscard]] nlohmann::ordered_json to_json(const Partition& part);

/// Fixed-width summary table, one row per method.
void render_summary_table(std::ostream& out, const ComparisonReport& report);

/// Map and gate listing (local and original indices) for one partition.
void render_partition(std::ostream& out, std::size_t index,
                      const Partition& part);

/// Cut / SWAP summary and per-partition listing for one method.
void render_method_details(std::ostream& out, const MethodReport& method,
                           std::size_t circuit_qubits);

void render_text(std::ostream& out, const ComparisonReport& report);

}  // namespace fidelipart
