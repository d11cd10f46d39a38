#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fidelipart/circuit.hpp"
#include "fidelipart/partitioner.hpp"

namespace fidelipart {

/// {global qubit -> local physical qubit}. Ordered so that iteration follows
/// ascending global index.
using QubitMap = std::map<Qubit, Qubit>;
using QubitSet = std::set<Qubit>;

/// A trimmed subcircuit over local indices plus the map back to the original
/// circuit. The map is always the sorted contiguous re-mapping of the globals
/// the gates touch.
struct Partition {
  Circuit subcircuit;
  QubitMap qubit_map;

  /// Builds the partition for `gates` (given on global indices).
  static Partition from_global_gates(const std::vector<Gate>& gates);

  /// The subcircuit's gates translated back to global indices.
  [[nodiscard]] std::vector<Gate> global_gates() const;
  [[nodiscard]] QubitSet globals() const;
};

/// Sorted contiguous re-mapping of a set of global qubits.
[[nodiscard]] QubitMap contiguous_map(const QubitSet& globals);

/// Groups gates by label (ascending part id, original gate order inside a
/// part) and trims each group to its active qubits. Part ids with no gates
/// are skipped and reported through `skipped` when non-null. Throws
/// std::invalid_argument when label and gate counts differ.
[[nodiscard]] std::vector<Partition> create_trimmed_partitions(
    const Circuit& circuit, const PartitionAssignment& labels,
    std::vector<PartId>* skipped = nullptr);

/// Same as above for already-grouped gate indices (one partition per group,
/// in group order). Throws std::invalid_argument on an out-of-range or
/// repeated gate index.
[[nodiscard]] std::vector<Partition> trim_groups(
    const Circuit& circuit, const std::vector<std::vector<std::size_t>>& groups);

[[nodiscard]] QubitSet shared_qubits(const QubitMap& a, const QubitMap& b);

/// a's gates then b's gates over the union of their qubits.
[[nodiscard]] Partition combine_partitions(const Partition& a,
                                           const Partition& b);

/// Multi-pass greedy merge of partitions sharing at least `threshold` global
/// qubits. Throws std::invalid_argument when threshold is 0.
[[nodiscard]] std::vector<Partition> merge_partitions(
    std::vector<Partition> parts, std::size_t threshold);

struct DependencyEdge {
  std::size_t from;
  std::size_t to;
  QubitSet shared;

  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

struct DependencyDag {
  std::size_t num_partitions = 0;
  std::vector<DependencyEdge> edges;  // lexicographic (from, to)
};

[[nodiscard]] DependencyDag build_dependency_graph(
    const std::vector<Partition>& parts);

/// `{0, 1}` style rendering of a qubit set.
[[nodiscard]] std::string format_qubit_set(const QubitSet& qubits);
/// `{0: 0, 4: 1}` style rendering of a qubit map.
[[nodiscard]] std::string format_qubit_map(const QubitMap& map);

void print_dependencies(std::ostream& out, const DependencyDag& dag);

}  // namespace fidelipart
