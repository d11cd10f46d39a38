#include "fidelipart/pipeline.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace fidelipart {

namespace {

Gate relabel(const Gate& gate, const QubitMap& map) {
  std::vector<Qubit> qubits;
  qubits.reserve(gate.qubits().size());
  for (Qubit q : gate.qubits()) {
    qubits.push_back(map.at(q));
  }
  return Gate(gate.kind(), std::move(qubits));
}

QubitMap invert(const QubitMap& map) {
  QubitMap inverse;
  for (const auto& [global, local] : map) {
    inverse.emplace(local, global);
  }
  return inverse;
}

}  // namespace

QubitMap contiguous_map(const QubitSet& globals) {
  QubitMap map;
  Qubit local = 0;
  for (Qubit g : globals) {
    map.emplace(g, local++);
  }
  return map;
}

Partition Partition::from_global_gates(const std::vector<Gate>& gates) {
  QubitSet active;
  for (const auto& gate : gates) {
    active.insert(gate.qubits().begin(), gate.qubits().end());
  }
  Partition part{Circuit(active.size()), contiguous_map(active)};
  for (const auto& gate : gates) {
    part.subcircuit.append(relabel(gate, part.qubit_map));
  }
  return part;
}

std::vector<Gate> Partition::global_gates() const {
  const QubitMap to_global = invert(qubit_map);
  std::vector<Gate> out;
  out.reserve(subcircuit.size());
  for (const auto& gate : subcircuit.gates()) {
    out.push_back(relabel(gate, to_global));
  }
  return out;
}

QubitSet Partition::globals() const {
  QubitSet out;
  for (const auto& [global, local] : qubit_map) {
    out.insert(global);
  }
  return out;
}

std::vector<Partition> create_trimmed_partitions(
    const Circuit& circuit, const PartitionAssignment& labels,
    std::vector<PartId>* skipped) {
  if (labels.labels.size() != circuit.size()) {
    throw std::invalid_argument(
        "Number of labels does not match number of operations in circuit (" +
        std::to_string(labels.labels.size()) + " vs " +
        std::to_string(circuit.size()) + ")");
  }
  PartId max_label = 0;
  for (PartId p : labels.labels) {
    max_label = std::max(max_label, p);
  }
  const std::size_t num_ids =
      std::max<std::size_t>(labels.k, circuit.empty() ? 0 : max_label + 1);

  std::vector<std::vector<Gate>> buckets(num_ids);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    buckets[labels.labels[i]].push_back(circuit[i]);
  }
  std::vector<Partition> parts;
  for (PartId id = 0; id < buckets.size(); ++id) {
    if (buckets[id].empty()) {
      if (skipped != nullptr) {
        skipped->push_back(id);
      }
      continue;
    }
    parts.push_back(Partition::from_global_gates(buckets[id]));
  }
  return parts;
}

std::vector<Partition> trim_groups(
    const Circuit& circuit,
    const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<char> used(circuit.size(), 0);
  std::vector<Partition> parts;
  parts.reserve(groups.size());
  for (const auto& group : groups) {
    std::vector<Gate> gates;
    gates.reserve(group.size());
    for (std::size_t idx : group) {
      if (idx >= circuit.size()) {
        throw std::invalid_argument("gate index " + std::to_string(idx) +
                                    " out of range for " +
                                    std::to_string(circuit.size()) +
                                    "-gate circuit");
      }
      if (used[idx]) {
        throw std::invalid_argument("gate index " + std::to_string(idx) +
                                    " appears in more than one group");
      }
      used[idx] = 1;
      gates.push_back(circuit[idx]);
    }
    parts.push_back(Partition::from_global_gates(gates));
  }
  return parts;
}

QubitSet shared_qubits(const QubitMap& a, const QubitMap& b) {
  QubitSet out;
  for (const auto& [global, local] : a) {
    if (b.contains(global)) {
      out.insert(global);
    }
  }
  return out;
}

Partition combine_partitions(const Partition& a, const Partition& b) {
  QubitSet all = a.globals();
  const QubitSet other = b.globals();
  all.insert(other.begin(), other.end());

  Partition merged{Circuit(all.size()), contiguous_map(all)};
  for (const Partition* source : {&a, &b}) {
    for (const auto& gate : source->global_gates()) {
      merged.subcircuit.append(relabel(gate, merged.qubit_map));
    }
  }
  return merged;
}

std::vector<Partition> merge_partitions(std::vector<Partition> parts,
                                        std::size_t threshold) {
  if (threshold == 0) {
    throw std::invalid_argument("merge threshold must be >= 1");
  }
  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<Partition> next;
    std::vector<char> used(parts.size(), 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (used[i]) {
        continue;
      }
      std::size_t best_count = 0;
      std::optional<std::size_t> partner;
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        if (used[j]) {
          continue;
        }
        const std::size_t count =
            shared_qubits(parts[i].qubit_map, parts[j].qubit_map).size();
        if (count >= threshold && count > best_count) {
          best_count = count;
          partner = j;
        }
      }
      used[i] = 1;
      if (partner) {
        next.push_back(combine_partitions(parts[i], parts[*partner]));
        used[*partner] = 1;
        merged = true;
      } else {
        next.push_back(std::move(parts[i]));
      }
    }
    parts = std::move(next);
  }
  return parts;
}

DependencyDag build_dependency_graph(const std::vector<Partition>& parts) {
  DependencyDag dag;
  dag.num_partitions = parts.size();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto shared = shared_qubits(parts[i].qubit_map, parts[j].qubit_map);
      if (!shared.empty()) {
        dag.edges.push_back({i, j, std::move(shared)});
      }
    }
  }
  return dag;
}

std::string format_qubit_set(const QubitSet& qubits) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Qubit q : qubits) {
    out << (first ? "" : ", ") << q;
    first = false;
  }
  out << '}';
  return out.str();
}

std::string format_qubit_map(const QubitMap& map) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [global, local] : map) {
    out << (first ? "" : ", ") << global << ": " << local;
    first = false;
  }
  out << '}';
  return out.str();
}

void print_dependencies(std::ostream& out, const DependencyDag& dag) {
  out << "Dependency Graph:\n-----------------\n";
  for (const auto& edge : dag.edges) {
    out << "Partition " << edge.from << " -> Partition " << edge.to
        << " | Shared qubits: " << format_qubit_set(edge.shared) << '\n';
  }
  out << "\nTotal dependencies: " << dag.edges.size() << '\n';
  out << "Legend: Partition X -> Partition Y means X must execute before Y\n";
}

}  // namespace fidelipart
