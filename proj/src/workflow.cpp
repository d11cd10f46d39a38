#include "fidelipart/workflow.hpp"

#include <chrono>

namespace fidelipart {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

FidelipartRun run_fidelipart(const Circuit& circuit,
                             const FidelipartOptions& options) {
  FidelipartRun run;
  run.hypergraph = circuit_to_hypergraph(circuit, options.model);
  if (options.k) {
    run.target_k = *options.k;
  } else {
    if (options.block_size == 0) {
      throw std::invalid_argument("block size must be >= 1");
    }
    run.target_k =
        dynamic_k(circuit.size(), circuit.num_qubits(), options.block_size);
  }

  const auto start = std::chrono::steady_clock::now();
  if (options.labels) {
    run.assignment = *options.labels;
    run.assignment.validate(circuit.size());
  } else if (circuit.empty()) {
    run.assignment = PartitionAssignment{{}, run.target_k};
  } else {
    SolverConfig solver = options.solver;
    solver.k = run.target_k;
    run.assignment = partition(run.hypergraph, solver);
  }
  run.parts = create_trimmed_partitions(circuit, run.assignment, &run.skipped);
  if (options.merge_threshold) {
    run.parts = merge_partitions(std::move(run.parts), *options.merge_threshold);
  }
  run.seconds = seconds_since(start);
  run.dag = build_dependency_graph(run.parts);
  return run;
}

BaselineRun run_baseline(const Circuit& circuit, std::size_t block_size,
                         const std::optional<GateGroups>& fixture) {
  BaselineRun run;
  const auto start = std::chrono::steady_clock::now();
  run.groups = fixture ? *fixture : block_partition(circuit, {block_size});
  run.parts = remap_groups(circuit, run.groups);
  run.seconds = seconds_since(start);
  return run;
}

}  // namespace fidelipart
