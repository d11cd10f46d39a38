#include "fidelipart/baseline.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fidelipart {

GateGroups block_partition(const Circuit& circuit,
                           const BaselineConfig& config) {
  if (config.block_size == 0) {
    throw std::invalid_argument("block size must be >= 1");
  }
  struct Block {
    std::set<Qubit> qubits;
    std::vector<std::size_t> gates;
  };
  std::vector<Block> blocks;
  // Index + 1 of the last block that touched each qubit (0 = none).
  std::vector<std::size_t> last_block(circuit.num_qubits(), 0);

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const auto& qubits = circuit[i].qubits();
    if (qubits.size() > config.block_size) {
      throw std::invalid_argument(
          "gate " + std::to_string(i) + " acts on " +
          std::to_string(qubits.size()) + " qubits, more than block size " +
          std::to_string(config.block_size));
    }
    // Joining a block older than the newest block on any of the gate's
    // qubits would reorder the gate before an earlier dependency.
    std::size_t earliest = 0;
    for (Qubit q : qubits) {
      earliest = std::max(earliest, last_block[q] == 0 ? 0 : last_block[q] - 1);
    }
    std::size_t chosen = blocks.size();
    for (std::size_t b = earliest; b < blocks.size(); ++b) {
      std::size_t grown = blocks[b].qubits.size();
      for (Qubit q : qubits) {
        grown += blocks[b].qubits.contains(q) ? 0 : 1;
      }
      if (grown <= config.block_size) {
        chosen = b;
        break;
      }
    }
    if (chosen == blocks.size()) {
      blocks.emplace_back();
    }
    blocks[chosen].qubits.insert(qubits.begin(), qubits.end());
    blocks[chosen].gates.push_back(i);
    for (Qubit q : qubits) {
      last_block[q] = std::max(last_block[q], chosen + 1);
    }
  }

  GateGroups groups;
  groups.reserve(blocks.size());
  for (auto& block : blocks) {
    groups.push_back(std::move(block.gates));
  }
  return groups;
}

std::vector<Partition> remap_groups(const Circuit& circuit,
                                    const GateGroups& groups) {
  return trim_groups(circuit, groups);
}

GateGroups load_fixture(std::string_view text, const Circuit& circuit) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("fixture is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("partitions") ||
      !doc["partitions"].is_array()) {
    throw std::invalid_argument("fixture needs a \"partitions\" array");
  }
  GateGroups groups;
  std::vector<char> seen(circuit.size(), 0);
  for (const auto& entry : doc["partitions"]) {
    if (!entry.is_array()) {
      throw std::invalid_argument("each fixture partition must be an array");
    }
    std::vector<std::size_t> group;
    for (const auto& index : entry) {
      if (!index.is_number_unsigned()) {
        throw std::invalid_argument(
            "fixture gate indices must be non-negative integers");
      }
      const auto idx = index.get<std::size_t>();
      if (idx >= circuit.size()) {
        throw std::invalid_argument("fixture gate index " +
                                    std::to_string(idx) + " out of range for " +
                                    std::to_string(circuit.size()) +
                                    "-gate circuit");
      }
      if (seen[idx]) {
        throw std::invalid_argument("fixture gate index " +
                                    std::to_string(idx) + " repeated");
      }
      seen[idx] = 1;
      group.push_back(idx);
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

std::string write_fixture(const GateGroups& groups,
                          std::string_view circuit_note) {
  nlohmann::ordered_json doc;
  if (!circuit_note.empty()) {
    doc["circuit"] = circuit_note;
  }
  doc["partitions"] = groups;
  return doc.dump(2) + "\n";
}

const GateGroups& circuit_s_baseline_groups() {
  static const GateGroups groups = {
      {0, 2, 3, 4, 5, 6, 8, 9, 10, 11, 13},
      {7},
      {12, 15, 17, 19, 20},
      {1, 14},
      {16},
      {18, 21},
  };
  return groups;
}

PartitionAssignment circuit_s_reference_labels() {
  return {{0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1},
          2};
}

}  // namespace fidelipart
