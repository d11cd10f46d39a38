#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fidelipart/circuit.hpp"
#include "fidelipart/pipeline.hpp"

namespace fidelipart {

using GateGroups = std::vector<std::vector<std::size_t>>;

struct BaselineConfig {
  std::size_t block_size = 4;
};

/// Streaming block grouping: each gate joins the earliest open block whose
/// qubit set stays within block_size and that no later block has touched on
/// the gate's qubits; otherwise it opens a new block. Throws
/// std::invalid_argument for block_size 0 or a gate wider than block_size.
[[nodiscard]] GateGroups block_partition(const Circuit& circuit,
                                         const BaselineConfig& config);

/// Local contiguous re-mapping of each group (see trim_groups).
[[nodiscard]] std::vector<Partition> remap_groups(const Circuit& circuit,
                                                  const GateGroups& groups);

/// Partition fixture document: `{"partitions": [[gate indices...], ...]}`
/// with an optional `"circuit"` note. Throws std::invalid_argument on
/// malformed input or indices that are out of range / repeated for `circuit`.
[[nodiscard]] GateGroups load_fixture(std::string_view text,
                                      const Circuit& circuit);
[[nodiscard]] std::string write_fixture(const GateGroups& groups,
                                        std::string_view circuit_note = {});

/// The six baseline partitions reported for the walkthrough circuit.
[[nodiscard]] const GateGroups& circuit_s_baseline_groups();
/// The label vector reported for the walkthrough circuit (k = 2).
[[nodiscard]] PartitionAssignment circuit_s_reference_labels();

}  // namespace fidelipart
