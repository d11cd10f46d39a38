#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fidelipart/baseline.hpp"
#include "fidelipart/hypergraph.hpp"
#include "fidelipart/partitioner.hpp"
#include "fidelipart/pipeline.hpp"
#include "fidelipart/report.hpp"

namespace fidelipart {

struct FidelipartOptions {
  std::size_t block_size = 4;
  /// Overrides dynamic_k when set.
  std::optional<std::size_t> k;
  /// Merge threshold; no merge pass when unset.
  std::optional<std::size_t> merge_threshold;
  SolverConfig solver;
  ErrorModel model;
  /// Replays a fixed label vector instead of calling the solver.
  std::optional<PartitionAssignment> labels;
};

struct FidelipartRun {
  Hypergraph hypergraph{std::vector<double>{}};
  std::size_t target_k = 0;
  PartitionAssignment assignment;
  std::vector<PartId> skipped;
  std::vector<Partition> parts;
  DependencyDag dag;
  double seconds = 0.0;
};

/// convert -> partition -> trim -> (merge) -> DAG.
[[nodiscard]] FidelipartRun run_fidelipart(const Circuit& circuit,
                                           const FidelipartOptions& options);

struct BaselineRun {
  GateGroups groups;
  std::vector<Partition> parts;
  double seconds = 0.0;
};

/// Streaming block partitioner, or the given fixture groups when present.
[[nodiscard]] BaselineRun run_baseline(
    const Circuit& circuit, std::size_t block_size,
    const std::optional<GateGroups>& fixture = std::nullopt);

}  // namespace fidelipart
