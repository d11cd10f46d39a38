#include "fidelipart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "fidelipart/splitmix.hpp"

namespace fidelipart {

GateTally tally(const Circuit& circuit) {
  GateTally counts;
  for (const auto& gate : circuit.gates()) {
    switch (gate.kind().type()) {
      case GateType::H:
        ++counts.h;
        break;
      case GateType::CNOT:
        ++counts.cnot;
        break;
      case GateType::SWAP:
        ++counts.swap;
        break;
      case GateType::CCX:
        ++counts.ccx;
        break;
      case GateType::Other:
        if (gate.kind().is_multi_qubit()) {
          counts.other_multi_cnot_equivalents += gate.kind().arity() - 1;
        } else {
          ++counts.other_single;
        }
        break;
    }
  }
  return counts;
}

double fidelity(const GateTally& counts, const ErrorModel& model) {
  const double cnot_equivalents =
      static_cast<double>(counts.cnot) + 3.0 * static_cast<double>(counts.swap) +
      static_cast<double>(model.ccx_cnot_equivalents) *
          static_cast<double>(counts.ccx) +
      static_cast<double>(counts.other_multi_cnot_equivalents);
  const double log_f =
      static_cast<double>(counts.h) * std::log1p(-model.eps_h) +
      cnot_equivalents * std::log1p(-model.eps_cnot) +
      static_cast<double>(counts.other_single) *
          std::log1p(-model.eps_default_single);
  return std::exp(log_f);
}

double fidelity(std::size_t h_count, std::size_t cnot_count,
                std::size_t swap_count, const ErrorModel& model) {
  GateTally counts;
  counts.h = h_count;
  counts.cnot = cnot_count;
  counts.swap = swap_count;
  return fidelity(counts, model);
}

double total_fidelity(std::span<const double> per_partition) {
  double product = 1.0;
  for (double f : per_partition) {
    product *= f;
  }
  return product;
}

QubitSet cut_qubits(const std::vector<Partition>& parts) {
  std::map<Qubit, std::size_t> occurrences;
  for (const auto& part : parts) {
    for (const auto& [global, local] : part.qubit_map) {
      ++occurrences[global];
    }
  }
  QubitSet cut;
  for (const auto& [global, count] : occurrences) {
    if (count >= 2) {
      cut.insert(global);
    }
  }
  return cut;
}

std::map<PartitionPair, QubitSet> pairwise_cuts(
    const std::vector<Partition>& parts) {
  std::map<PartitionPair, QubitSet> cuts;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto shared = shared_qubits(parts[i].qubit_map, parts[j].qubit_map);
      if (!shared.empty()) {
        cuts.emplace(PartitionPair{i, j}, std::move(shared));
      }
    }
  }
  return cuts;
}

SwapEstimate estimate_swaps(const std::vector<Partition>& parts,
                            bool heuristic_on, std::uint64_t seed) {
  constexpr std::size_t kTeleportAfter = 3;
  constexpr double kWaiveProbability = 0.6;

  SplitMix64 rng(seed);
  SwapEstimate estimate;
  estimate.per_partition.assign(parts.size(), 0);
  std::map<Qubit, std::size_t> misalignments;

  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const auto& map_i = parts[i].qubit_map;
      const auto& map_j = parts[j].qubit_map;
      std::size_t pair_cost = 0;
      for (Qubit q : shared_qubits(map_i, map_j)) {
        if (map_i.at(q) == map_j.at(q)) {
          continue;
        }
        const std::size_t seen = ++misalignments[q];
        if (heuristic_on && seen > kTeleportAfter &&
            rng.uniform() < kWaiveProbability) {
          ++estimate.waived;
          continue;
        }
        ++pair_cost;
      }
      if (pair_cost > 0) {
        estimate.per_pair[{i, j}] = pair_cost;
        estimate.per_partition[i] += pair_cost;
        estimate.total += pair_cost;
      }
    }
  }
  return estimate;
}

bool validate_gate_counts(const Circuit& original,
                          const std::vector<Partition>& parts) {
  std::vector<Gate> expected = original.gates();
  std::vector<Gate> actual;
  for (const auto& part : parts) {
    auto gates = part.global_gates();
    actual.insert(actual.end(), std::make_move_iterator(gates.begin()),
                  std::make_move_iterator(gates.end()));
  }
  if (expected.size() != actual.size()) {
    return false;
  }
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  return expected == actual;
}

PartitionMetrics partition_metrics(const Partition& part,
                                   std::size_t swap_attributed,
                                   const ErrorModel& model) {
  GateTally counts = tally(part.subcircuit);
  PartitionMetrics m;
  m.gate_count = part.subcircuit.size();
  m.depth = depth(part.subcircuit);
  m.h_count = counts.h;
  m.cnot_count = counts.cnot;
  m.swap_attributed = swap_attributed;
  counts.swap += swap_attributed;
  m.fidelity = fidelity(counts, model);
  m.error_rate = 1.0 - m.fidelity;
  return m;
}

}  // namespace fidelipart
