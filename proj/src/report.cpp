#include "fidelipart/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace fidelipart {

MethodReport evaluate_method(const Circuit& original, MethodInput input,
                             const MetricsOptions& options) {
  MethodReport r;
  r.name = std::move(input.name);
  r.block_size = input.block_size;
  r.target_k = input.target_k;
  r.seconds = input.seconds;
  r.parts = std::move(input.parts);

  r.cut = cut_qubits(r.parts);
  r.pairwise = pairwise_cuts(r.parts);
  r.swaps = estimate_swaps(r.parts, options.teleport_heuristic, options.seed);
  std::vector<double> fidelities;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    r.rows.push_back(
        partition_metrics(r.parts[i], r.swaps.per_partition[i], options.model));
    fidelities.push_back(r.rows.back().fidelity);
    r.max_depth = std::max(r.max_depth, r.rows.back().depth);
  }
  r.fidelity = total_fidelity(fidelities);
  r.gate_counts_valid = validate_gate_counts(original, r.parts);
  return r;
}

ComparisonReport build_report(const Circuit& original, MethodInput baseline,
                              MethodInput fidelipart,
                              const MetricsOptions& options) {
  ComparisonReport report;
  report.num_qubits = original.num_qubits();
  report.num_gates = original.size();
  report.baseline = evaluate_method(original, std::move(baseline), options);
  report.fidelipart = evaluate_method(original, std::move(fidelipart), options);
  return report;
}

namespace {

nlohmann::ordered_json optional_count(const std::optional<std::size_t>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json gate_json(const Gate& local, const Gate& global) {
  nlohmann::ordered_json g;
  g["gate"] = local.kind().display_name();
  g["local"] = local.qubits();
  g["global"] = global.qubits();
  return g;
}

std::string fixed4(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

std::string index_list(const std::vector<Qubit>& qubits) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    out << (i ? ", " : "") << qubits[i];
  }
  out << ']';
  return out.str();
}

std::string qubit_tuple(const std::vector<Qubit>& qubits) {
  std::ostringstream out;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    out << (i ? ", " : "") << qubits[i];
  }
  return out.str();
}

}  // namespace

nlohmann::ordered_json to_json(const Partition& part) {
  nlohmann::ordered_json p;
  auto map = nlohmann::ordered_json::array();
  for (const auto& [global, local] : part.qubit_map) {
    map.push_back({global, local});
  }
  p["qubit_map"] = std::move(map);
  auto gates = nlohmann::ordered_json::array();
  const auto globals = part.global_gates();
  for (std::size_t g = 0; g < globals.size(); ++g) {
    gates.push_back(gate_json(part.subcircuit[g], globals[g]));
  }
  p["gates"] = std::move(gates);
  return p;
}

nlohmann::ordered_json to_json(const MethodReport& m) {
  nlohmann::ordered_json j;
  j["method"] = m.name;
  j["block_size"] = optional_count(m.block_size);
  j["target_k"] = optional_count(m.target_k);
  j["actual_k"] = m.partition_count();
  j["cut_qubit_count"] = m.cut.size();
  j["cut_qubits"] = m.cut;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [pair, shared] : m.pairwise) {
    pairs.push_back({{"pair", {pair.first, pair.second}}, {"shared", shared}});
  }
  j["pairwise_cuts"] = std::move(pairs);

  nlohmann::ordered_json swaps;
  swaps["total"] = m.swaps.total;
  swaps["waived"] = m.swaps.waived;
  swaps["per_partition"] = m.swaps.per_partition;
  auto per_pair = nlohmann::ordered_json::array();
  for (const auto& [pair, count] : m.swaps.per_pair) {
    per_pair.push_back({{"pair", {pair.first, pair.second}}, {"swaps", count}});
  }
  swaps["per_pair"] = std::move(per_pair);
  j["swaps"] = std::move(swaps);

  j["fidelity"] = m.fidelity;
  j["error_rate"] = 1.0 - m.fidelity;
  j["max_depth"] = m.max_depth;
  j["gate_counts_valid"] = m.gate_counts_valid;

  auto parts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.parts.size(); ++i) {
    const auto& part = m.parts[i];
    const auto& row = m.rows[i];
    nlohmann::ordered_json p;
    p["index"] = i;
    p.update(to_json(part));
    p["gate_count"] = row.gate_count;
    p["depth"] = row.depth;
    p["h_gates"] = row.h_count;
    p["cnot_gates"] = row.cnot_count;
    p["swap_gates"] = row.swap_attributed;
    p["fidelity"] = row.fidelity;
    p["error_rate"] = row.error_rate;
    parts.push_back(std::move(p));
  }
  j["partitions"] = std::move(parts);
  return j;
}

nlohmann::ordered_json to_json(const ComparisonReport& report) {
  nlohmann::ordered_json j;
  j["circuit"] = {{"qubits", report.num_qubits}, {"gates", report.num_gates}};
  j["methods"] = {to_json(report.baseline), to_json(report.fidelipart)};
  j["valid"] = report.valid();
  j["timings"] = {{"baseline_seconds", report.baseline.seconds},
                  {"fidelipart_seconds", report.fidelipart.seconds}};
  return j;
}

void render_summary_table(std::ostream& out, const ComparisonReport& report) {
  const auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("N/A");
  };
  out << "Circuit: " << report.num_qubits << " qubits, " << report.num_gates
      << " gates\n";
  out << std::left << std::setw(12) << "Method" << std::right << std::setw(5)
      << "BS" << std::setw(10) << "Target k" << std::setw(10) << "Actual k"
      << std::setw(12) << "Cut Qubits" << std::setw(12) << "SWAP Gates"
      << std::setw(10) << "Fid." << std::setw(11) << "Max Depth"
      << std::setw(10) << "Time (s)" << '\n';
  for (const MethodReport* m : {&report.baseline, &report.fidelipart}) {
    std::ostringstream seconds;
    seconds << std::fixed << std::setprecision(3) << m->seconds;
    out << std::left << std::setw(12) << m->name << std::right << std::setw(5)
        << opt(m->block_size) << std::setw(10) << opt(m->target_k)
        << std::setw(10) << m->partition_count() << std::setw(12)
        << m->cut.size() << std::setw(12) << m->swaps.total << std::setw(10)
        << fixed4(m->fidelity) << std::setw(11) << m->max_depth
        << std::setw(10) << seconds.str() << '\n';
  }
}

void render_partition(std::ostream& out, std::size_t index,
                      const Partition& part) {
  std::vector<Qubit> globals;
  std::vector<Qubit> locals;
  for (const auto& [global, local] : part.qubit_map) {
    globals.push_back(global);
    locals.push_back(local);
  }
  out << "Partition " << index << ":\n";
  out << "- Original Circuit Qubits Used: " << globals.size()
      << " (Indices: " << index_list(globals) << ")\n";
  out << "- Partition Qubits: " << locals.size()
      << " (Indices: " << index_list(locals) << ")\n";
  out << "- Qubit Map: " << format_qubit_map(part.qubit_map) << '\n';
  out << "- Gates:\n";
  const auto global_gates = part.global_gates();
  for (std::size_t g = 0; g < global_gates.size(); ++g) {
    const auto& local = part.subcircuit[g];
    out << "  " << (g + 1) << ". " << local.kind().display_name()
        << "@(Partition Qubits: " << qubit_tuple(local.qubits())
        << "; Original Circuit Qubits: "
        << qubit_tuple(global_gates[g].qubits()) << ")\n";
  }
}

void render_method_details(std::ostream& out, const MethodReport& m,
                           std::size_t circuit_qubits) {
  out << "--- " << m.name << " Partition Analysis ---\n";
  out << "Global cut qubits (original circuit indices): "
      << format_qubit_set(m.cut) << "\n\n";
  out << "Pairwise cut qubits (original circuit indices):\n";
  for (const auto& [pair, shared] : m.pairwise) {
    out << "Partitions " << pair.first << " <-> " << pair.second << ": "
        << format_qubit_set(shared) << '\n';
  }
  out << "Total SWAP gates needed: " << m.swaps.total << '\n';
  if (m.swaps.waived > 0) {
    out << "SWAP gates waived (teleportation heuristic): " << m.swaps.waived
        << '\n';
  }
  out << "Hardware Topology: linear\n";
  std::vector<Qubit> hw(circuit_qubits);
  for (std::size_t q = 0; q < circuit_qubits; ++q) {
    hw[q] = static_cast<Qubit>(q);
  }
  out << "Total Qubits in Hardware: " << circuit_qubits
      << " (Indices: " << index_list(hw) << ")\n\n";

  for (std::size_t i = 0; i < m.parts.size(); ++i) {
    const auto& part = m.parts[i];
    const auto& row = m.rows[i];
    render_partition(out, i, part);
    out << "- Number of Gates: " << row.gate_count << '\n';
    out << "- Depth: " << row.depth << '\n';
    out << "- H gates: " << row.h_count << '\n';
    out << "- CNOT gates: " << row.cnot_count << '\n';
    out << "- SWAP gates: " << row.swap_attributed
        << (row.swap_attributed > 0 ? " (Attributed)" : "") << '\n';
    out << "- Fidelity: " << fixed4(row.fidelity) << '\n';
    out << "- Error rate: " << fixed4(row.error_rate) << "\n\n";
  }
}

void render_text(std::ostream& out, const ComparisonReport& report) {
  render_summary_table(out, report);
  out << '\n';
  render_method_details(out, report.baseline, report.num_qubits);
  render_method_details(out, report.fidelipart, report.num_qubits);
  out << "Gate count validation: "
      << (report.valid() ? "passed" : "FAILED") << " (" << report.baseline.name
      << ": " << (report.baseline.gate_counts_valid ? "ok" : "mismatch")
      << ", " << report.fidelipart.name << ": "
      << (report.fidelipart.gate_counts_valid ? "ok" : "mismatch") << ")\n";
}

}  // namespace fidelipart
