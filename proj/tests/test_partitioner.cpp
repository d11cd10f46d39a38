#include <cstdlib>

#include <gtest/gtest.h>

#include "fidelipart/partitioner.hpp"
#include "support.hpp"

using namespace fidelipart;
namespace ts = testing_support;

namespace {

Hypergraph unit_graph(std::size_t n) {
  return Hypergraph(std::vector<double>(n, 1.0));
}

Hyperedge edge(std::vector<NodeId> pins, double w) {
  return {std::move(pins), w, EdgeKind::Unknown, std::nullopt};
}

std::vector<ts::OracleEdge> raw_edges(const Hypergraph& hg) {
  std::vector<ts::OracleEdge> out;
  for (const auto& e : hg.edges()) {
    out.push_back({static_cast<std::int64_t>(e.weight), e.pins});
  }
  return out;
}

}  // namespace

TEST(DynamicK, Examples) {
  EXPECT_EQ(dynamic_k(22, 6, 4), 2u);
  EXPECT_EQ(dynamic_k(55, 10, 6), 3u);
  EXPECT_EQ(dynamic_k(88, 24, 8), 4u);
  EXPECT_EQ(dynamic_k(5, 100, 10), 2u);
  EXPECT_EQ(dynamic_k(1000, 16, 1), 4u);
  EXPECT_EQ(dynamic_k(1000, 15, 1), 3u);
  EXPECT_THROW((void)dynamic_k(10, 4, 0), std::invalid_argument);
  EXPECT_THROW((void)dynamic_k(10, 0, 2), std::invalid_argument);
}

TEST(Km1, Examples) {
  Hypergraph hg = unit_graph(2);
  hg.add_edge(edge({0, 1}, 5));
  EXPECT_EQ(km1(hg, {{0, 1}, 2}), 5);
  EXPECT_EQ(km1(hg, {{1, 1}, 2}), 0);
  Hypergraph three = unit_graph(4);
  three.add_edge(edge({0, 1, 2, 3}, 7));
  EXPECT_EQ(km1(three, {{0, 1, 2, 2}, 3}), 14);
  EXPECT_THROW((void)km1(hg, {{0, 2}, 2}), std::invalid_argument);
  EXPECT_THROW((void)km1(hg, {{0}, 2}), std::invalid_argument);
}

TEST(Km1, CircuitSReferenceLabelsAgainstOracle) {
  const Hypergraph hg = circuit_to_hypergraph(ts::circuit_s_reference());
  const auto oracle =
      ts::km1_oracle(ts::normalized_oracle_edges(hg), ts::reference_labels(), 2);
  EXPECT_EQ(km1(normalize_weights(hg), {ts::reference_labels(), 2}), oracle);
  EXPECT_EQ(km1(hg, {ts::reference_labels(), 2}),
            ts::km1_oracle(raw_edges(hg), ts::reference_labels(), 2));
}

TEST(Balance, Examples) {
  const Hypergraph hg = unit_graph(4);
  EXPECT_TRUE(check_balance(hg, {{0, 0, 1, 1}, 2}, 0.05));
  EXPECT_FALSE(check_balance(hg, {{0, 0, 0, 1}, 2}, 0.05));
  EXPECT_DOUBLE_EQ(max_part_weight(4, 2, 0.05), 2.1);
  EXPECT_DOUBLE_EQ(max_part_weight(5, 2, 0.0), 3.0);
}

TEST(Balance, CircuitSReferenceLabelsUnderNodeWeights) {
  // Summed from the listing's node-weight column: part 0 holds eight H and
  // three CNOT gates (8600), part 1 four H and seven CNOT gates (5400). The
  // cap is 1.05 * 7000 = 7350, so the split is not balanced by node weight.
  const Hypergraph hg = circuit_to_hypergraph(ts::circuit_s_reference());
  const bool oracle = ts::balance_oracle(hg.integral_node_weights(),
                                         ts::reference_labels(), 2, 0.05);
  EXPECT_FALSE(oracle);
  EXPECT_EQ(check_balance(hg, {ts::reference_labels(), 2}, 0.05), oracle);
  EXPECT_EQ(part_weights(hg, {ts::reference_labels(), 2}),
            (std::vector<std::int64_t>{8600, 5400}));
  // By gate count (11 / 11) it is perfectly balanced.
  EXPECT_TRUE(check_balance(unit_graph(22), {ts::reference_labels(), 2}, 0.05));
}

TEST(Partition, TrivialCases) {
  Hypergraph hg = unit_graph(5);
  hg.add_edge(edge({0, 1, 2}, 3));
  const auto one = partition(hg, {.k = 1});
  EXPECT_EQ(one.labels, std::vector<PartId>(5, 0));
  EXPECT_EQ(one.k, 1u);

  Hypergraph pair = unit_graph(2);
  pair.add_edge(edge({0, 1}, 9));
  const auto two = partition(pair, {.k = 2});
  EXPECT_NE(two.labels[0], two.labels[1]);
  EXPECT_EQ(km1(pair, two), 9);

  EXPECT_THROW((void)partition(pair, {.k = 3}), SolverError);
  EXPECT_THROW((void)partition(pair, {.k = 0}), SolverError);
  EXPECT_THROW((void)partition(pair, {.k = 2, .imbalance = -0.1}), SolverError);
  EXPECT_EQ(partition(unit_graph(0), {.k = 1}).labels.size(), 0u);
}

TEST(Partition, CircuitSQualityBound) {
  const Hypergraph hg = circuit_to_hypergraph(ts::circuit_s_reference());
  const auto result = partition(hg, {.k = 2, .imbalance = 0.05, .seed = 42});
  const Hypergraph norm = normalize_weights(hg);
  EXPECT_TRUE(ts::balance_oracle(norm.integral_node_weights(), result.labels, 2,
                                 0.05));
  const auto ours = ts::km1_oracle(ts::normalized_oracle_edges(hg), result.labels, 2);
  const auto reference =
      ts::km1_oracle(ts::normalized_oracle_edges(hg), ts::reference_labels(), 2);
  EXPECT_LE(ours, reference);
}

TEST(Partition, UnitNodeWeightsRecoverReferenceLabels) {
  // Balancing on gate count, the walkthrough labels are the unique optimum
  // (up to swapping the two parts).
  const Hypergraph hg = circuit_to_hypergraph(ts::circuit_s_reference());
  const auto result = partition(
      hg, {.k = 2, .imbalance = 0.05, .seed = 42, .unit_node_weights = true});
  std::vector<PartId> flipped = result.labels;
  for (auto& l : flipped) l = 1 - l;
  EXPECT_TRUE(result.labels == ts::reference_labels() || flipped == ts::reference_labels());
}

TEST(Partition, Deterministic) {
  const Hypergraph hg = circuit_to_hypergraph(benchmark_circuit(Benchmark::L));
  const SolverConfig config{.k = 4, .seed = 7};
  EXPECT_EQ(partition(hg, config), partition(hg, config));
}

TEST(LabelFile, Parse) {
  EXPECT_EQ(parse_label_file("0\n1\n\n2\r\n"), (std::vector<PartId>{0, 1, 2}));
  EXPECT_TRUE(parse_label_file("").empty());
  EXPECT_THROW((void)parse_label_file("0\nx\n"), SolverError);
  EXPECT_THROW((void)parse_label_file("-1\n"), SolverError);
}

TEST(External, CommandLine) {
  const auto cmd = external_solver_command("/bin/mtk", "/tmp/a.hgr",
                                           {.k = 3, .imbalance = 0.05, .seed = 42});
  const std::vector<std::string> expected = {
      "/bin/mtk", "-h",       "/tmp/a.hgr", "-k",     "3",
      "-e",       "0.05",     "-o",         "km1",    "-m",
      "direct",   "--preset-type", "default", "--seed", "42",
      "--write-partition-file=true"};
  EXPECT_EQ(cmd, expected);
}

class ExternalSolver : public ::testing::Test {
protected:
  void TearDown() override { unsetenv("FAKE_SOLVER_MODE"); }
  SolverConfig config(std::size_t k) {
    SolverConfig c;
    c.k = k;
    c.backend = SolverBackend::External;
    c.solver_binary = FIDELIPART_FAKE_SOLVER;
    return c;
  }
  Hypergraph hg = circuit_to_hypergraph(ts::circuit_s_reference());
};

TEST_F(ExternalSolver, ReadsPartitionFile) {
  const auto result = partition(hg, config(3));
  ASSERT_EQ(result.labels.size(), 22u);
  for (std::size_t i = 0; i < 22; ++i) {
    EXPECT_EQ(result.labels[i], i % 3);
  }
}

TEST_F(ExternalSolver, EnvironmentOverride) {
  SolverConfig c = config(2);
  c.solver_binary.clear();
  setenv("FIDELIPART_SOLVER", FIDELIPART_FAKE_SOLVER, 1);
  EXPECT_EQ(partition(hg, c).labels.size(), 22u);
  unsetenv("FIDELIPART_SOLVER");
  EXPECT_THROW((void)partition(hg, c), SolverError);
}

TEST_F(ExternalSolver, FailurePaths) {
  for (const char* mode : {"fail", "none", "short", "junk"}) {
    setenv("FAKE_SOLVER_MODE", mode, 1);
    EXPECT_THROW((void)partition(hg, config(2)), SolverError) << mode;
  }
  SolverConfig missing = config(2);
  missing.solver_binary = "/nonexistent/solver";
  unsetenv("FAKE_SOLVER_MODE");
  EXPECT_THROW((void)partition(hg, missing), SolverError);
}
