// Shared test helpers: transcribed reference data, independent oracles and
// hand-rolled random generators. Nothing here calls into the code under test
// except to build inputs.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fidelipart/circuit.hpp"
#include "fidelipart/hypergraph.hpp"
#include "fidelipart/partitioner.hpp"
#include "fidelipart/pipeline.hpp"

namespace testing_support {

using fidelipart::Circuit;
using fidelipart::Gate;
using fidelipart::Qubit;

// ---------------------------------------------------------------------------
// Reference data, transcribed by hand from the walkthrough listings.

struct RefGate {
  char kind;  // 'h' or 'c'
  std::vector<Qubit> qubits;
};

inline const std::vector<RefGate>& circuit_s_listing() {
  static const std::vector<RefGate> gates = {
      {'h', {0}},    {'h', {3}},    {'c', {5, 0}}, {'h', {0}},
      {'c', {1, 5}}, {'c', {0, 2}}, {'h', {1}},    {'c', {5, 4}},
      {'h', {0}},    {'h', {2}},    {'c', {1, 0}}, {'h', {2}},
      {'c', {0, 4}}, {'h', {2}},    {'c', {3, 0}}, {'h', {4}},
      {'c', {0, 5}}, {'h', {4}},    {'c', {1, 5}}, {'h', {4}},
      {'h', {4}},    {'c', {4, 5}},
  };
  return gates;
}

inline Gate to_gate(const RefGate& g) {
  return g.kind == 'h' ? Gate::h(g.qubits[0])
                       : Gate::cnot(g.qubits[0], g.qubits[1]);
}

inline Circuit circuit_s_reference() {
  Circuit c(6);
  for (const auto& g : circuit_s_listing()) {
    c.append(to_gate(g));
  }
  return c;
}

inline const std::vector<std::uint32_t>& reference_labels() {
  static const std::vector<std::uint32_t> labels = {
      0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1};
  return labels;
}

// Six baseline partitions as listed (gate kind + original qubits, in order).
inline const std::vector<std::vector<RefGate>>& baseline_listing() {
  static const std::vector<std::vector<RefGate>> parts = {
      {{'h', {0}},
       {'c', {5, 0}},
       {'h', {0}},
       {'c', {1, 5}},
       {'c', {0, 2}},
       {'h', {1}},
       {'h', {0}},
       {'h', {2}},
       {'c', {1, 0}},
       {'h', {2}},
       {'h', {2}}},
      {{'c', {5, 4}}},
      {{'c', {0, 4}}, {'h', {4}}, {'h', {4}}, {'h', {4}}, {'h', {4}}},
      {{'h', {3}}, {'c', {3, 0}}},
      {{'c', {0, 5}}},
      {{'c', {1, 5}}, {'c', {4, 5}}},
  };
  return parts;
}

// Recovers gate indices for a listed partition by matching kind and qubits
// against the circuit in order (each circuit gate used at most once).
inline std::vector<std::vector<std::size_t>> match_listing(
    const Circuit& circuit, const std::vector<std::vector<RefGate>>& listing) {
  std::vector<char> used(circuit.size(), 0);
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& part : listing) {
    std::vector<std::size_t> group;
    std::size_t from = 0;
    for (const auto& ref : part) {
      const Gate want = to_gate(ref);
      std::size_t i = from;
      while (i < circuit.size() && (used[i] || !(circuit[i] == want))) {
        ++i;
      }
      if (i == circuit.size()) {
        return {};
      }
      used[i] = 1;
      group.push_back(i);
      from = i + 1;
    }
    groups.push_back(group);
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Oracles.

// Straight evaluation of the product formula with std::pow.
inline double fidelity_oracle(double h, double cnot, double swap,
                              double eps_h = 0.001, double eps_cnot = 0.05) {
  return std::pow(1.0 - eps_h, h) * std::pow(1.0 - eps_cnot, cnot + 3.0 * swap);
}

struct OracleEdge {
  std::int64_t weight;
  std::vector<std::uint32_t> pins;
};

// Sum of w * (number of distinct labels among pins - 1), counting parts by
// enumerating every label value.
inline std::int64_t km1_oracle(const std::vector<OracleEdge>& edges,
                               const std::vector<std::uint32_t>& labels,
                               std::uint32_t k) {
  std::int64_t total = 0;
  for (const auto& e : edges) {
    std::int64_t lambda = 0;
    for (std::uint32_t part = 0; part < k; ++part) {
      bool present = false;
      for (auto p : e.pins) {
        present = present || labels[p] == part;
      }
      lambda += present ? 1 : 0;
    }
    if (lambda > 0) {
      total += e.weight * (lambda - 1);
    }
  }
  return total;
}

// Edges of a hypergraph in oracle form with normalized integer weights,
// computed from scratch with w * 1e6 / max rounded half away from zero.
inline std::vector<OracleEdge> normalized_oracle_edges(
    const fidelipart::Hypergraph& hg) {
  double max_w = 0;
  for (const auto& e : hg.edges()) {
    max_w = std::max(max_w, e.weight);
  }
  std::vector<OracleEdge> out;
  for (const auto& e : hg.edges()) {
    auto w = static_cast<std::int64_t>(std::floor(e.weight * 1e6 / max_w + 0.5));
    out.push_back({std::max<std::int64_t>(1, w), e.pins});
  }
  return out;
}

// Depth by repeated relaxation: level(g) = 1 + max level of an earlier gate
// that shares a qubit.
inline std::size_t depth_oracle(const Circuit& c) {
  std::vector<std::size_t> level(c.size(), 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      bool shares = false;
      for (Qubit q : c[i].qubits()) {
        shares = shares || c[j].acts_on(q);
      }
      if (shares) {
        level[i] = std::max(level[i], level[j] + 1);
      }
    }
    best = std::max(best, level[i]);
  }
  return best;
}

// Reference splitmix64, written out from the published constants.
inline std::uint64_t splitmix_oracle(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Part weights and the balance predicate, from integer node weights.
inline bool balance_oracle(const std::vector<std::int64_t>& node_w,
                           const std::vector<std::uint32_t>& labels,
                           std::uint32_t k, double eps) {
  std::vector<std::int64_t> w(k, 0);
  std::int64_t total = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    w[labels[v]] += node_w[v];
    total += node_w[v];
  }
  const double cap = (1.0 + eps) * std::ceil(static_cast<double>(total) / k);
  for (auto x : w) {
    if (static_cast<double>(x) > cap + 1e-9) {
      return false;
    }
  }
  return true;
}

// Shared global qubits between two partitions, from their gates.
inline std::set<Qubit> qubits_of(const std::vector<Gate>& gates) {
  std::set<Qubit> out;
  for (const auto& g : gates) {
    out.insert(g.qubits().begin(), g.qubits().end());
  }
  return out;
}

// SWAP count with the heuristic off: for each pair, shared globals whose rank
// among each side's sorted globals differs.
inline std::size_t swap_oracle(const std::vector<std::set<Qubit>>& globals) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < globals.size(); ++i) {
    for (std::size_t j = i + 1; j < globals.size(); ++j) {
      for (Qubit q : globals[i]) {
        if (!globals[j].contains(q)) {
          continue;
        }
        const auto ri = std::distance(globals[i].begin(), globals[i].find(q));
        const auto rj = std::distance(globals[j].begin(), globals[j].find(q));
        total += ri != rj ? 1 : 0;
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Random generators.

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
  }
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
  std::mt19937_64& engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

inline std::vector<Qubit> distinct_qubits(Rng& rng, std::size_t n,
                                          std::size_t count) {
  std::vector<Qubit> all(n);
  for (std::size_t i = 0; i < n; ++i) {
    all[i] = static_cast<Qubit>(i);
  }
  std::shuffle(all.begin(), all.end(), rng.engine());
  all.resize(count);
  return all;
}

// Random circuit over all gate kinds (Other kinds with arity 1..3).
inline Circuit random_circuit(Rng& rng, std::size_t max_qubits = 8,
                              std::size_t max_gates = 40,
                              bool allow_other = true) {
  const std::size_t n = rng.range(1, max_qubits);
  const std::size_t m = rng.range(0, max_gates);
  Circuit c(n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t pick = rng.below(allow_other ? 6 : 4);
    if (pick == 0 || n < 2) {
      c.append(Gate::h(static_cast<Qubit>(rng.below(n))));
    } else if (pick == 1 || pick == 2) {
      auto q = distinct_qubits(rng, n, 2);
      c.append(Gate::cnot(q[0], q[1]));
    } else if (pick == 3) {
      auto q = distinct_qubits(rng, n, 2);
      c.append(Gate::swap(q[0], q[1]));
    } else if (pick == 4 && n >= 3) {
      auto q = distinct_qubits(rng, n, 3);
      c.append(Gate::ccx(q[0], q[1], q[2]));
    } else {
      const std::size_t arity = rng.range(1, std::min<std::size_t>(3, n));
      const std::string name = arity == 1 ? "rz" : (arity == 2 ? "cz" : "cswap");
      c.append(Gate(fidelipart::GateKind::other(name, arity),
                    distinct_qubits(rng, n, arity)));
    }
  }
  return c;
}

inline std::vector<std::uint32_t> random_labels(Rng& rng, std::size_t n,
                                                std::uint32_t k) {
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) {
    l = static_cast<std::uint32_t>(rng.below(k));
  }
  return labels;
}

inline fidelipart::Hypergraph random_hypergraph(Rng& rng, std::size_t min_nodes,
                                                std::size_t max_nodes,
                                                bool unit_nodes = false) {
  const std::size_t n = rng.range(min_nodes, max_nodes);
  std::vector<double> w(n);
  for (auto& x : w) {
    x = unit_nodes ? 1.0 : static_cast<double>(rng.range(1, 10));
  }
  fidelipart::Hypergraph hg(w);
  const std::size_t m = rng.range(1, 2 * n);
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t size = rng.range(1, std::min<std::size_t>(n, 6));
    std::vector<fidelipart::NodeId> pins;
    for (auto q : distinct_qubits(rng, n, size)) {
      pins.push_back(q);
    }
    std::sort(pins.begin(), pins.end());
    hg.add_edge({pins, static_cast<double>(rng.range(1, 1000)),
                 fidelipart::EdgeKind::Unknown, std::nullopt});
  }
  return hg;
}

}  // namespace testing_support
