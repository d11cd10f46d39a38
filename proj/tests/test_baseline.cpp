#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fidelipart/baseline.hpp"
#include "support.hpp"

using namespace fidelipart;
namespace ts = testing_support;

namespace {

std::string shipped_fixture() {
  std::ifstream in(std::string(FIDELIPART_DATA_DIR) + "/quick_s.json");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(BlockPartition, Examples) {
  EXPECT_EQ(block_partition(Circuit(2, {Gate::h(0), Gate::h(1), Gate::cnot(0, 1)}),
                            {2}),
            (GateGroups{{0, 1, 2}}));
  EXPECT_EQ(block_partition(Circuit(4, {Gate::cnot(0, 1), Gate::cnot(2, 3)}), {2}),
            (GateGroups{{0}, {1}}));
  EXPECT_EQ(block_partition(Circuit(3, {Gate::cnot(0, 1), Gate::cnot(1, 2),
                                        Gate::cnot(0, 1)}),
                            {2}),
            (GateGroups{{0}, {1}, {2}}));
}

TEST(BlockPartition, JoinsEarliestFeasibleBlock) {
  // Gate 2 (H(0)) may rejoin block 0: block 1 never touched qubit 0.
  const Circuit c(4, {Gate::cnot(0, 1), Gate::cnot(2, 3), Gate::h(0)});
  EXPECT_EQ(block_partition(c, {2}), (GateGroups{{0, 2}, {1}}));
}

TEST(BlockPartition, Errors) {
  EXPECT_THROW((void)block_partition(Circuit(2), {0}), std::invalid_argument);
  EXPECT_THROW((void)block_partition(Circuit(3, {Gate::ccx(0, 1, 2)}), {2}),
               std::invalid_argument);
  EXPECT_TRUE(block_partition(Circuit(2), {2}).empty());
}

TEST(Fixture, ShippedFileMatchesListings) {
  const Circuit s = ts::circuit_s_reference();
  const GateGroups from_listing = ts::match_listing(s, ts::baseline_listing());
  ASSERT_EQ(from_listing.size(), 6u);
  const GateGroups loaded = load_fixture(shipped_fixture(), s);
  EXPECT_EQ(loaded, from_listing);
  EXPECT_EQ(circuit_s_baseline_groups(), from_listing);
  std::vector<std::size_t> sizes;
  for (const auto& g : loaded) sizes.push_back(g.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{11, 1, 5, 2, 1, 2}));
}

TEST(Fixture, RemappedMaps) {
  const auto parts = remap_groups(ts::circuit_s_reference(), circuit_s_baseline_groups());
  ASSERT_EQ(parts.size(), 6u);
  EXPECT_EQ(parts[0].qubit_map, (QubitMap{{0, 0}, {1, 1}, {2, 2}, {5, 3}}));
  EXPECT_EQ(parts[1].qubit_map, (QubitMap{{4, 0}, {5, 1}}));
  EXPECT_EQ(parts[2].qubit_map, (QubitMap{{0, 0}, {4, 1}}));
  EXPECT_EQ(parts[3].qubit_map, (QubitMap{{0, 0}, {3, 1}}));
  EXPECT_EQ(parts[4].qubit_map, (QubitMap{{0, 0}, {5, 1}}));
  EXPECT_EQ(parts[5].qubit_map, (QubitMap{{1, 0}, {4, 1}, {5, 2}}));
  EXPECT_EQ(parts[5].subcircuit.size(), 2u);
  // Listing: "CNOTGate@(Partition Qubits: 3, 0; Original Circuit Qubits: 5, 0)".
  EXPECT_EQ(parts[0].subcircuit[1], Gate::cnot(3, 0));
  EXPECT_EQ(parts[5].subcircuit[1], Gate::cnot(1, 2));
}

TEST(Fixture, WholeCircuitGroup) {
  const Circuit c(5, {Gate::h(4), Gate::cnot(1, 4)});
  const auto parts = remap_groups(c, {{0, 1}});
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].qubit_map, (QubitMap{{1, 0}, {4, 1}}));
}

TEST(Fixture, LoadErrorsAndEmpty) {
  const Circuit s = ts::circuit_s_reference();
  EXPECT_TRUE(load_fixture(R"({"partitions": []})", s).empty());
  EXPECT_THROW((void)load_fixture(R"({"partitions": [[99]]})", s), std::invalid_argument);
  EXPECT_THROW((void)load_fixture(R"({"partitions": [[1], [1]]})", s),
               std::invalid_argument);
  EXPECT_THROW((void)load_fixture(R"({"partitions": [[-1]]})", s), std::invalid_argument);
  EXPECT_THROW((void)load_fixture(R"({"parts": []})", s), std::invalid_argument);
  EXPECT_THROW((void)load_fixture(R"({"partitions": [3]})", s), std::invalid_argument);
  EXPECT_THROW((void)load_fixture("not json", s), std::invalid_argument);
}

TEST(Fixture, WriteRoundTrip) {
  const Circuit s = ts::circuit_s_reference();
  const std::string text = write_fixture(circuit_s_baseline_groups(), "S");
  EXPECT_EQ(load_fixture(text, s), circuit_s_baseline_groups());
  EXPECT_EQ(text.substr(0, 18), "{\n  \"circuit\": \"S\"");
}

TEST(ReferenceLabels, MatchTranscription) {
  const auto labels = circuit_s_reference_labels();
  EXPECT_EQ(labels.labels, ts::reference_labels());
  EXPECT_EQ(labels.k, 2u);
}
