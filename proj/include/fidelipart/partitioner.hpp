#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fidelipart/hypergraph.hpp"

namespace fidelipart {

using PartId = std::uint32_t;

struct PartitionAssignment {
  std::vector<PartId> labels;  // one per node
  std::size_t k = 1;

  /// Throws std::invalid_argument if a label is >= k or the label count does
  /// not match `num_nodes`.
  void validate(std::size_t num_nodes) const;

  friend bool operator==(const PartitionAssignment&,
                         const PartitionAssignment&) = default;
};

enum class SolverBackend { Internal, External };

struct SolverConfig {
  std::size_t k = 2;
  double imbalance = 0.05;
  std::uint64_t seed = 42;
  SolverBackend backend = SolverBackend::Internal;
  /// External backend only. Empty means: take FIDELIPART_SOLVER from the
  /// environment.
  std::filesystem::path solver_binary;
  /// Internal backend: feed the solver the normalized edge weights.
  bool normalize = true;
  /// Internal backend: number of seeded initial partitioning attempts at the
  /// coarsest level.
  std::size_t initial_runs = 20;
  /// Balance on gate count instead of node weight, i.e. read the node weights
  /// the way an hMETIS solver reads a file whose format code is "1".
  bool unit_node_weights = false;
};

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// max(2, min(floor(num_ops / block_size), floor(sqrt(num_qubits)))).
[[nodiscard]] std::size_t dynamic_k(std::size_t num_ops, std::size_t num_qubits,
                                    std::size_t block_size);

/// Connectivity objective: sum over edges of w(e) * (lambda(e) - 1), with
/// edge weights rounded to integers.
[[nodiscard]] std::int64_t km1(const Hypergraph& hg,
                               const PartitionAssignment& assignment);

/// Upper bound on a part's node weight: (1 + imbalance) * ceil(total / k).
[[nodiscard]] double max_part_weight(std::int64_t total_weight, std::size_t k,
                                     double imbalance);

[[nodiscard]] std::vector<std::int64_t> part_weights(
    const Hypergraph& hg, const PartitionAssignment& assignment);

[[nodiscard]] bool check_balance(const Hypergraph& hg,
                                 const PartitionAssignment& assignment,
                                 double imbalance);

/// Partitions `hg` into `config.k` parts minimizing km1 under the balance
/// constraint. Deterministic for a given (hg, config). When the node weights
/// admit no balanced assignment, the internal backend returns one whose
/// heaviest part is as light as it could find. Throws SolverError when k is
/// invalid or the external solver fails.
[[nodiscard]] PartitionAssignment partition(const Hypergraph& hg,
                                            const SolverConfig& config);

/// Command line used for the external backend (exposed for diagnostics).
[[nodiscard]] std::vector<std::string> external_solver_command(
    const std::filesystem::path& binary, const std::filesystem::path& input,
    const SolverConfig& config);

/// One label per line, blank lines skipped. Throws SolverError on junk.
[[nodiscard]] std::vector<PartId> parse_label_file(std::string_view text);

}  // namespace fidelipart
