#include "fidelipart/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fidelipart/workflow.hpp"

namespace fidelipart {

namespace {

struct RunConfig {
  std::string input;
  std::string bench;
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> k;
  bool merge = false;
  std::size_t merge_threshold = 2;
  std::string backend = "internal";
  std::string solver_path;
  std::uint64_t seed = 42;
  double imbalance = 0.05;
  bool teleport_heuristic = false;
  std::string format = "text";
  std::string out_path;
  std::string hgr_mode = "paper-normalized";
  std::string baseline_fixture;
  std::string labels_path;
  std::string node_weights = "weighted";
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    throw std::runtime_error("cannot write " + path);
  }
}

Circuit load_circuit(const RunConfig& config) {
  if (!config.bench.empty() && !config.input.empty()) {
    throw UsageError("--input and --bench are mutually exclusive");
  }
  if (!config.bench.empty()) {
    return benchmark_circuit(parse_benchmark(config.bench));
  }
  if (config.input.empty()) {
    throw UsageError("one of --input or --bench is required");
  }
  return parse_circuit(read_file(config.input));
}

FidelipartOptions fidelipart_options(const RunConfig& config,
                                     const Circuit& circuit) {
  FidelipartOptions options;
  if (!config.k && !config.block_size) {
    throw UsageError("--block-size is required unless --k is given");
  }
  options.block_size = config.block_size.value_or(0);
  options.k = config.k;
  if (config.merge) {
    options.merge_threshold = config.merge_threshold;
  }
  options.solver.seed = config.seed;
  options.solver.imbalance = config.imbalance;
  options.solver.unit_node_weights = config.node_weights == "unit";
  if (config.backend == "external") {
    options.solver.backend = SolverBackend::External;
    options.solver.solver_binary = config.solver_path;
  }
  if (!config.labels_path.empty()) {
    PartitionAssignment labels;
    labels.labels = parse_label_file(read_file(config.labels_path));
    PartId top = 0;
    for (PartId l : labels.labels) {
      top = std::max(top, l);
    }
    labels.k = labels.labels.empty() ? 1 : static_cast<std::size_t>(top) + 1;
    if (labels.labels.size() != circuit.size()) {
      throw std::invalid_argument(
          "Number of labels does not match number of gates (" +
          std::to_string(labels.labels.size()) + " vs " +
          std::to_string(circuit.size()) + ")");
    }
    options.labels = std::move(labels);
  }
  return options;
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out_path.empty()) {
    out << text;
  } else {
    write_file(config.out_path, text);
  }
}

int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Circuit circuit = load_circuit(config);
  const Hypergraph hg = circuit_to_hypergraph(circuit);
  const std::string text = write_hgr(hg, parse_hgr_mode(config.hgr_mode));
  if (config.out_path.empty()) {
    out << text;
    err << "nodes: " << hg.num_nodes() << ", edges: " << hg.num_edges() << '\n';
  } else {
    write_file(config.out_path, text);
    out << "nodes: " << hg.num_nodes() << ", edges: " << hg.num_edges()
        << " -> " << config.out_path << '\n';
  }
  return kExitOk;
}

int cmd_partition(const RunConfig& config, std::ostream& out,
                  std::ostream& err) {
  const Circuit circuit = load_circuit(config);
  const FidelipartRun run =
      run_fidelipart(circuit, fidelipart_options(config, circuit));
  const bool valid = validate_gate_counts(circuit, run.parts);

  std::ostringstream text;
  if (config.format == "json") {
    nlohmann::ordered_json doc;
    doc["circuit"] = {{"qubits", circuit.num_qubits()},
                      {"gates", circuit.size()}};
    doc["target_k"] = run.target_k;
    doc["labels"] = run.assignment.labels;
    doc["skipped_labels"] = run.skipped;
    doc["km1"] = km1(normalize_weights(run.hypergraph), run.assignment);
    auto parts = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < run.parts.size(); ++i) {
      nlohmann::ordered_json p;
      p["index"] = i;
      p.update(to_json(run.parts[i]));
      parts.push_back(std::move(p));
    }
    doc["partitions"] = std::move(parts);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : run.dag.edges) {
      edges.push_back({{"from", e.from}, {"to", e.to}, {"shared", e.shared}});
    }
    doc["dependencies"] = std::move(edges);
    doc["gate_counts_valid"] = valid;
    doc["timings"] = {{"fidelipart_seconds", run.seconds}};
    text << doc.dump(2) << '\n';
  } else {
    text << "Target k: " << run.target_k << '\n';
    text << "Partitions: " << run.parts.size() << '\n';
    if (!run.skipped.empty()) {
      text << "Empty labels skipped:";
      for (PartId id : run.skipped) {
        text << ' ' << id;
      }
      text << '\n';
    }
    text << '\n';
    for (std::size_t i = 0; i < run.parts.size(); ++i) {
      render_partition(text, i, run.parts[i]);
      text << '\n';
    }
    print_dependencies(text, run.dag);
    text << "Gate count validation: " << (valid ? "passed" : "FAILED") << '\n';
  }
  emit(config, out, text.str());
  if (!valid) {
    err << "error: gate-count validation failed\n";
    return kExitInvalid;
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  const Circuit circuit = load_circuit(config);
  if (!config.block_size) {
    throw UsageError("compare requires --block-size");
  }
  std::optional<GateGroups> fixture;
  if (!config.baseline_fixture.empty()) {
    fixture = load_fixture(read_file(config.baseline_fixture), circuit);
  }
  const BaselineRun baseline =
      run_baseline(circuit, *config.block_size, fixture);
  const FidelipartRun fidelipart =
      run_fidelipart(circuit, fidelipart_options(config, circuit));

  MetricsOptions metrics;
  metrics.teleport_heuristic = config.teleport_heuristic;
  metrics.seed = config.seed;
  const ComparisonReport report = build_report(
      circuit,
      MethodInput{"Quick", baseline.parts, config.block_size, std::nullopt,
                  baseline.seconds},
      MethodInput{"Fidelipart", fidelipart.parts, config.block_size,
                  fidelipart.target_k, fidelipart.seconds},
      metrics);

  std::ostringstream text;
  if (config.format == "json") {
    text << to_json(report).dump(2) << '\n';
  } else {
    render_text(text, report);
  }
  emit(config, out, text.str());
  if (!report.valid()) {
    err << "error: gate-count validation failed\n";
    return kExitInvalid;
  }
  return kExitOk;
}

void add_common(CLI::App& cmd, RunConfig& config) {
  auto* input = cmd.add_option("--input,-i", config.input, "Circuit file");
  cmd.add_option("--bench", config.bench, "Builtin benchmark")
      ->check(CLI::IsMember({"s", "m", "l", "S", "M", "L"}))
      ->excludes(input);
  cmd.add_option("--out,-o", config.out_path, "Write output to this path");
}

void add_partitioning(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--block-size", config.block_size,
                 "Qubits per block; sets the dynamic k")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--k", config.k, "Explicit number of parts")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--merge", config.merge, "Merge partitions after trimming");
  cmd.add_option("--merge-threshold", config.merge_threshold,
                 "Shared qubits needed to merge")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--backend", config.backend, "Hypergraph solver")
      ->check(CLI::IsMember({"internal", "external"}));
  cmd.add_option("--solver-path", config.solver_path,
                 std::string("External solver binary (default: $") +
                     kSolverEnv + ")");
  cmd.add_option("--seed", config.seed, "Solver and heuristic seed");
  cmd.add_option("--imbalance", config.imbalance, "Balance slack epsilon")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--node-weights", config.node_weights,
                 "Balance on fidelity node weights or on gate count")
      ->check(CLI::IsMember({"weighted", "unit"}));
  cmd.add_option("--labels", config.labels_path,
                 "Use this label file instead of running the solver");
  cmd.add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  CLI::App app{"Fidelity-aware quantum circuit partitioning", "fidelipart"};
  app.require_subcommand(1);

  auto* convert = app.add_subcommand("convert", "Write the circuit hypergraph");
  add_common(*convert, config);
  convert->add_option("--mode", config.hgr_mode, "hMETIS output mode")
      ->check(CLI::IsMember({"paper-raw", "paper-normalized", "standard"}));

  auto* part = app.add_subcommand("partition", "Partition, trim, merge, DAG");
  add_common(*part, config);
  add_partitioning(*part, config);

  auto* compare = app.add_subcommand("compare", "Compare against the baseline");
  add_common(*compare, config);
  add_partitioning(*compare, config);
  compare->add_option("--baseline-fixture", config.baseline_fixture,
                      "Baseline partition fixture (JSON)");
  compare->add_flag("--teleport-heuristic", config.teleport_heuristic,
                    "Waive some repeated SWAP misalignments");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*convert) {
      return cmd_convert(config, out, err);
    }
    if (*part) {
      return cmd_partition(config, out, err);
    }
    return cmd_compare(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace fidelipart
