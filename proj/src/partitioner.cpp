#include "fidelipart/partitioner.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "fidelipart/splitmix.hpp"

namespace fidelipart {

void PartitionAssignment::validate(std::size_t num_nodes) const {
  if (labels.size() != num_nodes) {
    throw std::invalid_argument("assignment has " +
                                std::to_string(labels.size()) +
                                " labels for " + std::to_string(num_nodes) +
                                " nodes");
  }
  for (PartId p : labels) {
    if (p >= k) {
      throw std::invalid_argument("label " + std::to_string(p) +
                                  " out of range for k=" + std::to_string(k));
    }
  }
}

std::size_t dynamic_k(std::size_t num_ops, std::size_t num_qubits,
                      std::size_t block_size) {
  if (block_size == 0) {
    throw std::invalid_argument("block size must be >= 1");
  }
  if (num_qubits == 0) {
    throw std::invalid_argument("qubit count must be >= 1");
  }
  auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(num_qubits)));
  while (root * root > num_qubits) --root;
  while ((root + 1) * (root + 1) <= num_qubits) ++root;
  return std::max<std::size_t>(2, std::min(num_ops / block_size, root));
}

std::int64_t km1(const Hypergraph& hg, const PartitionAssignment& assignment) {
  assignment.validate(hg.num_nodes());
  std::vector<char> seen(assignment.k, 0);
  std::int64_t total = 0;
  for (const auto& edge : hg.edges()) {
    std::fill(seen.begin(), seen.end(), 0);
    std::int64_t lambda = 0;
    for (NodeId pin : edge.pins) {
      auto& s = seen[assignment.labels[pin]];
      if (s == 0) {
        s = 1;
        ++lambda;
      }
    }
    total += std::llround(edge.weight) * (lambda - 1);
  }
  return total;
}

double max_part_weight(std::int64_t total_weight, std::size_t k,
                       double imbalance) {
  const auto kk = static_cast<std::int64_t>(k);
  const std::int64_t ceil_share = (total_weight + kk - 1) / kk;
  return (1.0 + imbalance) * static_cast<double>(ceil_share);
}

std::vector<std::int64_t> part_weights(const Hypergraph& hg,
                                       const PartitionAssignment& assignment) {
  assignment.validate(hg.num_nodes());
  std::vector<std::int64_t> weights(assignment.k, 0);
  const auto node_w = hg.integral_node_weights();
  for (std::size_t v = 0; v < node_w.size(); ++v) {
    weights[assignment.labels[v]] += node_w[v];
  }
  return weights;
}

bool check_balance(const Hypergraph& hg, const PartitionAssignment& assignment,
                   double imbalance) {
  const auto weights = part_weights(hg, assignment);
  const std::int64_t total =
      std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  const double limit = max_part_weight(total, assignment.k, imbalance);
  return std::all_of(weights.begin(), weights.end(), [&](std::int64_t w) {
    return static_cast<double>(w) <= limit + 1e-9;
  });
}

namespace {

// Solver-side hypergraph: integral weights, only edges with >= 2 pins.
struct Graph {
  std::vector<std::int64_t> node_w;
  std::vector<std::vector<NodeId>> pins;
  std::vector<std::int64_t> edge_w;
  std::vector<std::vector<std::uint32_t>> incident;

  [[nodiscard]] std::size_t n() const { return node_w.size(); }
  [[nodiscard]] std::size_t m() const { return pins.size(); }
  [[nodiscard]] std::int64_t total_weight() const {
    return std::accumulate(node_w.begin(), node_w.end(), std::int64_t{0});
  }

  void build_incidence() {
    incident.assign(n(), {});
    for (std::uint32_t e = 0; e < m(); ++e) {
      for (NodeId v : pins[e]) {
        incident[v].push_back(e);
      }
    }
  }
};

Graph to_solver_graph(const Hypergraph& hg, bool normalize) {
  const Hypergraph source = normalize ? normalize_weights(hg) : hg;
  Graph g;
  g.node_w = source.integral_node_weights();
  const auto edge_w = source.integral_edge_weights();
  for (std::size_t e = 0; e < source.num_edges(); ++e) {
    auto pins = source.edges()[e].pins;
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2 || edge_w[e] <= 0) {
      continue;  // can never be cut
    }
    g.pins.push_back(std::move(pins));
    g.edge_w.push_back(edge_w[e]);
  }
  g.build_incidence();
  return g;
}

void shuffle(std::vector<NodeId>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// ---------------------------------------------------------------------------
// Coarsening

struct CoarseLevel {
  Graph graph;
  std::vector<NodeId> fine_to_coarse;
};

constexpr std::size_t kRatingEdgeSizeCap = 1000;

// One round of heavy-connectivity matching followed by contraction. Returns
// nothing when the round would shrink the graph by less than 3%.
std::optional<CoarseLevel> coarsen_once(const Graph& g,
                                        std::int64_t max_cluster_weight,
                                        SplitMix64& rng) {
  const std::size_t n = g.n();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  shuffle(order, rng);

  constexpr NodeId kUnmatched = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> partner(n, kUnmatched);
  std::vector<double> score(n, 0.0);
  std::vector<NodeId> touched;

  for (NodeId u : order) {
    if (partner[u] != kUnmatched) {
      continue;
    }
    touched.clear();
    for (std::uint32_t e : g.incident[u]) {
      const auto& pins = g.pins[e];
      if (pins.size() > kRatingEdgeSizeCap) {
        continue;
      }
      const double r = static_cast<double>(g.edge_w[e]) /
                       static_cast<double>(pins.size() - 1);
      for (NodeId v : pins) {
        if (v == u || partner[v] != kUnmatched) {
          continue;
        }
        if (score[v] == 0.0) {
          touched.push_back(v);
        }
        score[v] += r;
      }
    }
    NodeId best = kUnmatched;
    double best_score = 0.0;
    for (NodeId v : touched) {
      const bool fits = g.node_w[u] + g.node_w[v] <= max_cluster_weight;
      if (fits && (score[v] > best_score ||
                   (score[v] == best_score && best != kUnmatched && v < best))) {
        best = v;
        best_score = score[v];
      }
      score[v] = 0.0;
    }
    if (best != kUnmatched) {
      partner[u] = best;
      partner[best] = u;
    } else {
      partner[u] = u;
    }
  }

  CoarseLevel level;
  level.fine_to_coarse.assign(n, kUnmatched);
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (level.fine_to_coarse[v] == kUnmatched) {
      level.fine_to_coarse[v] = next;
      level.fine_to_coarse[partner[v]] = next;
      ++next;
    }
  }
  if (static_cast<double>(next) > 0.97 * static_cast<double>(n)) {
    return std::nullopt;
  }

  Graph& coarse = level.graph;
  coarse.node_w.assign(next, 0);
  for (NodeId v = 0; v < n; ++v) {
    coarse.node_w[level.fine_to_coarse[v]] += g.node_w[v];
  }
  std::map<std::vector<NodeId>, std::size_t> edge_index;
  for (std::size_t e = 0; e < g.m(); ++e) {
    std::vector<NodeId> pins;
    pins.reserve(g.pins[e].size());
    for (NodeId v : g.pins[e]) {
      pins.push_back(level.fine_to_coarse[v]);
    }
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2) {
      continue;
    }
    const auto [it, inserted] = edge_index.try_emplace(pins, coarse.m());
    if (inserted) {
      coarse.pins.push_back(std::move(pins));
      coarse.edge_w.push_back(g.edge_w[e]);
    } else {
      coarse.edge_w[it->second] += g.edge_w[e];
    }
  }
  coarse.build_incidence();
  return level;
}

// ---------------------------------------------------------------------------
// Refinement state: pin counts per (edge, part) and part weights.

class State {
public:
  State(const Graph& g, std::vector<PartId> labels, std::size_t k)
      : g_(g), k_(k), labels_(std::move(labels)), phi_(g.m() * k, 0),
        part_w_(k, 0) {
    for (NodeId v = 0; v < g.n(); ++v) {
      part_w_[labels_[v]] += g.node_w[v];
    }
    for (std::size_t e = 0; e < g.m(); ++e) {
      for (NodeId v : g.pins[e]) {
        ++phi_[e * k_ + labels_[v]];
      }
    }
  }

  [[nodiscard]] const std::vector<PartId>& labels() const { return labels_; }
  [[nodiscard]] std::vector<PartId> take_labels() { return std::move(labels_); }
  [[nodiscard]] PartId label(NodeId v) const { return labels_[v]; }
  [[nodiscard]] std::int64_t part_weight(PartId p) const { return part_w_[p]; }
  [[nodiscard]] std::size_t k() const { return k_; }

  // out[p] = km1 reduction when moving v to p (out[label(v)] is meaningless).
  // Returns whether v sits on the boundary.
  bool gains(NodeId v, std::int64_t* out) const {
    const PartId from = labels_[v];
    std::int64_t benefit = 0;
    std::int64_t incident_w = 0;
    bool boundary = false;
    std::fill(out, out + k_, 0);
    for (std::uint32_t e : g_.incident[v]) {
      const std::int64_t w = g_.edge_w[e];
      const std::uint32_t* row = &phi_[e * k_];
      incident_w += w;
      if (row[from] == 1) {
        benefit += w;
      }
      if (row[from] != g_.pins[e].size()) {
        boundary = true;
      }
      for (std::size_t p = 0; p < k_; ++p) {
        if (row[p] > 0) {
          out[p] += w;  // edge already present in p: no new connectivity
        }
      }
    }
    for (std::size_t p = 0; p < k_; ++p) {
      out[p] = benefit - (incident_w - out[p]);
    }
    return boundary;
  }

  void move(NodeId v, PartId to) {
    const PartId from = labels_[v];
    for (std::uint32_t e : g_.incident[v]) {
      --phi_[e * k_ + from];
      ++phi_[e * k_ + to];
    }
    part_w_[from] -= g_.node_w[v];
    part_w_[to] += g_.node_w[v];
    labels_[v] = to;
  }

  [[nodiscard]] std::int64_t objective() const {
    std::int64_t total = 0;
    for (std::size_t e = 0; e < g_.m(); ++e) {
      std::int64_t lambda = 0;
      for (std::size_t p = 0; p < k_; ++p) {
        lambda += phi_[e * k_ + p] > 0 ? 1 : 0;
      }
      total += g_.edge_w[e] * (lambda - 1);
    }
    return total;
  }

  [[nodiscard]] bool balanced(std::int64_t limit) const {
    return std::all_of(part_w_.begin(), part_w_.end(),
                       [&](std::int64_t w) { return w <= limit; });
  }

private:
  const Graph& g_;
  std::size_t k_;
  std::vector<PartId> labels_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::int64_t> part_w_;
};

// Moves nodes out of overweight parts, best km1 gain first, until every part
// fits under `limit`. Returns false if it gets stuck.
bool rebalance(const Graph& g, State& state, std::int64_t limit) {
  std::vector<std::int64_t> gains(state.k());
  while (true) {
    PartId heaviest = 0;
    for (PartId p = 1; p < state.k(); ++p) {
      if (state.part_weight(p) > state.part_weight(heaviest)) {
        heaviest = p;
      }
    }
    if (state.part_weight(heaviest) <= limit) {
      return true;
    }
    std::optional<std::pair<NodeId, PartId>> best;
    std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
    for (NodeId v = 0; v < g.n(); ++v) {
      if (state.label(v) != heaviest) {
        continue;
      }
      state.gains(v, gains.data());
      for (PartId p = 0; p < state.k(); ++p) {
        if (p == heaviest || state.part_weight(p) + g.node_w[v] > limit) {
          continue;
        }
        if (gains[p] > best_gain) {
          best_gain = gains[p];
          best = {v, p};
        }
      }
    }
    if (!best) {
      return false;
    }
    state.move(best->first, best->second);
  }
}

constexpr std::size_t kFruitlessMoveLimit = 200;

// One Fiduccia-Mattheyses pass: repeatedly apply the best feasible move of an
// unlocked boundary node (gain may be negative), lock it, then roll back to
// the best prefix. Ties prefer the lower node index, then the lower part.
// Returns the km1 improvement kept.
std::int64_t fm_pass(const Graph& g, State& state, std::int64_t limit) {
  const std::size_t n = g.n();
  const std::size_t k = state.k();
  std::vector<std::int64_t> gain_cache(n * k);
  std::vector<char> boundary(n, 0);
  std::vector<char> dirty(n, 1);
  std::vector<char> locked(n, 0);
  std::vector<std::pair<NodeId, PartId>> moves;  // (node, previous part)

  std::int64_t cumulative = 0;
  std::int64_t best = 0;
  std::size_t best_len = 0;
  std::size_t fruitless = 0;

  while (true) {
    std::optional<std::pair<NodeId, PartId>> pick;
    std::int64_t pick_gain = std::numeric_limits<std::int64_t>::min();
    for (NodeId v = 0; v < n; ++v) {
      if (locked[v]) {
        continue;
      }
      if (dirty[v]) {
        boundary[v] = state.gains(v, &gain_cache[v * k]) ? 1 : 0;
        dirty[v] = 0;
      }
      if (!boundary[v]) {
        continue;
      }
      const PartId from = state.label(v);
      for (PartId p = 0; p < k; ++p) {
        if (p == from || state.part_weight(p) + g.node_w[v] > limit) {
          continue;
        }
        if (gain_cache[v * k + p] > pick_gain) {
          pick_gain = gain_cache[v * k + p];
          pick = {v, p};
        }
      }
    }
    if (!pick) {
      break;
    }
    const auto [v, to] = *pick;
    moves.emplace_back(v, state.label(v));
    state.move(v, to);
    locked[v] = 1;
    for (std::uint32_t e : g.incident[v]) {
      for (NodeId u : g.pins[e]) {
        dirty[u] = 1;
      }
    }
    cumulative += pick_gain;
    if (cumulative > best) {
      best = cumulative;
      best_len = moves.size();
      fruitless = 0;
    } else if (++fruitless > kFruitlessMoveLimit) {
      break;
    }
  }
  while (moves.size() > best_len) {
    state.move(moves.back().first, moves.back().second);
    moves.pop_back();
  }
  return best;
}

void refine(const Graph& g, State& state, std::int64_t limit) {
  if (!state.balanced(limit)) {
    rebalance(g, state, limit);
  }
  while (fm_pass(g, state, limit) > 0) {
  }
}

// ---------------------------------------------------------------------------
// Initial partitioning

// Greedy hypergraph growing inside `subset`: seed block 0 with a random node
// and keep adding the node with the best km1 gain until block 0 reaches its
// share of the subset weight.
void bisect(const Graph& g, const std::vector<NodeId>& subset, std::size_t k,
            PartId first_part, std::vector<PartId>& labels, SplitMix64& rng) {
  if (k == 1 || subset.empty()) {
    for (NodeId v : subset) {
      labels[v] = first_part;
    }
    return;
  }
  const std::size_t k0 = k / 2;
  std::int64_t subset_w = 0;
  for (NodeId v : subset) {
    subset_w += g.node_w[v];
  }
  const double target0 = static_cast<double>(subset_w) *
                         static_cast<double>(k0) / static_cast<double>(k);

  std::vector<char> in_subset(g.n(), 0);
  std::vector<char> in0(g.n(), 0);
  for (NodeId v : subset) {
    in_subset[v] = 1;
  }
  // Pin counts restricted to the subset: inside block 0 and outside it.
  std::vector<std::uint32_t> count0(g.m(), 0);
  std::vector<std::uint32_t> count1(g.m(), 0);
  for (NodeId v : subset) {
    for (std::uint32_t e : g.incident[v]) {
      ++count1[e];
    }
  }

  std::int64_t weight0 = 0;
  std::size_t size0 = 0;
  auto add = [&](NodeId v) {
    in0[v] = 1;
    weight0 += g.node_w[v];
    ++size0;
    for (std::uint32_t e : g.incident[v]) {
      --count1[e];
      ++count0[e];
    }
  };
  add(subset[static_cast<std::size_t>(rng.below(subset.size()))]);

  while (static_cast<double>(weight0) < target0 && size0 + 1 < subset.size()) {
    std::optional<NodeId> best;
    std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
    for (NodeId v : subset) {
      if (in0[v]) {
        continue;
      }
      // Overshooting the target by more than half the node's weight is
      // worse than stopping short.
      if (static_cast<double>(weight0) + 0.5 * static_cast<double>(g.node_w[v]) >
          target0) {
        continue;
      }
      std::int64_t gain = 0;
      for (std::uint32_t e : g.incident[v]) {
        if (count1[e] == 1 && count0[e] > 0) gain += g.edge_w[e];
        if (count0[e] == 0 && count1[e] > 1) gain -= g.edge_w[e];
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    if (!best) {
      break;
    }
    add(*best);
  }

  std::vector<NodeId> side0;
  std::vector<NodeId> side1;
  for (NodeId v : subset) {
    (in0[v] ? side0 : side1).push_back(v);
  }
  bisect(g, side0, k0, first_part, labels, rng);
  bisect(g, side1, k - k0, first_part + static_cast<PartId>(k0), labels, rng);
}

std::vector<PartId> recursive_bisection(const Graph& g, std::size_t k,
                                        SplitMix64& rng) {
  std::vector<PartId> labels(g.n(), 0);
  std::vector<NodeId> all(g.n());
  std::iota(all.begin(), all.end(), NodeId{0});
  bisect(g, all, k, 0, labels, rng);
  return labels;
}

// Heaviest node first into the currently lightest part.
std::vector<PartId> greedy_weight_assignment(const Graph& g, std::size_t k) {
  std::vector<NodeId> order(g.n());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return g.node_w[a] > g.node_w[b];
  });
  std::vector<std::int64_t> load(k, 0);
  std::vector<PartId> labels(g.n(), 0);
  for (NodeId v : order) {
    const auto p = static_cast<PartId>(
        std::min_element(load.begin(), load.end()) - load.begin());
    labels[v] = p;
    load[p] += g.node_w[v];
  }
  return labels;
}

// Branch and bound over part loads, heaviest node first, minimizing the
// heaviest part. Stops as soon as it fits under `limit` or after `budget`
// search steps; `exact` reports whether the search finished.
std::vector<PartId> min_max_assignment(const Graph& g, std::size_t k,
                                       std::int64_t limit, std::size_t budget,
                                       bool& exact) {
  std::vector<NodeId> order(g.n());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return g.node_w[a] > g.node_w[b];
  });
  std::vector<PartId> best = greedy_weight_assignment(g, k);
  std::vector<std::int64_t> best_load(k, 0);
  for (NodeId v = 0; v < g.n(); ++v) best_load[best[v]] += g.node_w[v];
  std::int64_t best_max = *std::max_element(best_load.begin(), best_load.end());

  std::vector<PartId> labels(g.n(), 0);
  std::vector<std::int64_t> load(k, 0);
  std::size_t steps = 0;
  exact = true;
  const auto search = [&](auto&& self, std::size_t i, std::int64_t current_max) -> bool {
    if (best_max <= limit) return true;
    if (++steps > budget) {
      exact = false;
      return true;
    }
    if (i == order.size()) {
      best = labels;
      best_max = current_max;
      return best_max <= limit;
    }
    const NodeId v = order[i];
    std::set<std::int64_t> tried;  // parts with equal load are interchangeable
    for (PartId p = 0; p < k; ++p) {
      const std::int64_t next = load[p] + g.node_w[v];
      if (next >= best_max || !tried.insert(load[p]).second) continue;
      load[p] = next;
      labels[v] = p;
      const bool stop = self(self, i + 1, std::max(current_max, next));
      load[p] -= g.node_w[v];
      if (stop) return true;
    }
    return false;
  };
  search(search, 0, 0);
  return best;
}

struct Candidate {
  std::vector<PartId> labels;
  bool balanced = false;
  std::int64_t objective = 0;
};

bool better(const Candidate& a, const std::optional<Candidate>& incumbent) {
  if (!incumbent) return true;
  if (a.balanced != incumbent->balanced) return a.balanced;
  return a.objective < incumbent->objective;
}

Candidate evaluate(State& state, std::int64_t limit) {
  Candidate c;
  c.balanced = state.balanced(limit);
  c.objective = state.objective();
  c.labels = state.labels();
  return c;
}

Candidate initial_partition(const Graph& g, std::size_t k, std::int64_t limit,
                            std::size_t runs, SplitMix64& rng) {
  std::optional<Candidate> best;
  for (std::size_t r = 0; r < std::max<std::size_t>(runs, 1); ++r) {
    State state(g, recursive_bisection(g, k, rng), k);
    refine(g, state, limit);
    auto c = evaluate(state, limit);
    if (better(c, best)) {
      best = std::move(c);
    }
  }
  State fallback(g, greedy_weight_assignment(g, k), k);
  refine(g, fallback, limit);
  auto c = evaluate(fallback, limit);
  if (better(c, best)) {
    best = std::move(c);
  }
  return std::move(*best);
}

constexpr std::size_t kPackingBudget = 2'000'000;

PartitionAssignment partition_internal(const Hypergraph& hg,
                                       const SolverConfig& config) {
  const std::size_t k = config.k;
  Graph finest = to_solver_graph(hg, config.normalize);
  const auto limit = static_cast<std::int64_t>(std::floor(
      max_part_weight(finest.total_weight(), k, config.imbalance) + 1e-9));

  SplitMix64 rng(config.seed);

  // Coarsen.
  const std::size_t contraction_limit = 20 * k;
  const std::int64_t max_cluster_weight = std::max<std::int64_t>(
      1, finest.total_weight() / static_cast<std::int64_t>(4 * k));
  std::vector<CoarseLevel> levels;
  const Graph* current = &finest;
  while (current->n() > contraction_limit) {
    auto next = coarsen_once(*current, max_cluster_weight, rng);
    if (!next) {
      break;
    }
    levels.push_back(std::move(*next));
    current = &levels.back().graph;
  }

  Candidate coarse =
      initial_partition(*current, k, limit, config.initial_runs, rng);

  // Uncoarsen: project and refine on every finer level.
  std::vector<PartId> labels = std::move(coarse.labels);
  for (std::size_t i = levels.size(); i-- > 0;) {
    const Graph& fine = i == 0 ? finest : levels[i - 1].graph;
    std::vector<PartId> projected(fine.n());
    for (NodeId v = 0; v < fine.n(); ++v) {
      projected[v] = labels[levels[i].fine_to_coarse[v]];
    }
    State state(fine, std::move(projected), k);
    refine(fine, state, limit);
    labels = state.take_labels();
  }

  State result(finest, std::move(labels), k);
  if (!result.balanced(limit)) {
    State fallback(finest, greedy_weight_assignment(finest, k), k);
    refine(finest, fallback, limit);
    if (fallback.balanced(limit)) {
      return {fallback.take_labels(), k};
    }
    // No balanced assignment seen yet: search for one, or for the smallest
    // heaviest part when the weights admit none, and refine under that load.
    bool exact = false;
    auto packed = min_max_assignment(finest, k, limit, kPackingBudget, exact);
    std::int64_t packed_max = 0;
    {
      State probe(finest, packed, k);
      for (PartId p = 0; p < k; ++p) {
        packed_max = std::max(packed_max, probe.part_weight(p));
      }
    }
    State best(finest, std::move(packed), k);
    refine(finest, best, std::max(limit, packed_max));
    return {best.take_labels(), k};
  }
  return {result.take_labels(), k};
}

// ---------------------------------------------------------------------------
// External backend

std::string shell_quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

std::string format_epsilon(double eps) {
  std::ostringstream out;
  out << eps;
  return out.str();
}

PartitionAssignment partition_external(const Hypergraph& hg,
                                       const SolverConfig& config) {
  namespace fs = std::filesystem;
  fs::path binary = config.solver_binary;
  if (binary.empty()) {
    if (const char* env = std::getenv("FIDELIPART_SOLVER")) {
      binary = env;
    }
  }
  if (binary.empty()) {
    throw SolverError(
        "external solver requested but no binary configured (set "
        "FIDELIPART_SOLVER or pass a solver path)");
  }

  std::string dir_template =
      (fs::temp_directory_path() / "fidelipart-XXXXXX").string();
  if (mkdtemp(dir_template.data()) == nullptr) {
    throw SolverError("could not create a working directory for the solver");
  }
  const fs::path work_dir = dir_template;
  struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{work_dir};

  const fs::path input = work_dir / "circuit.hgr";
  {
    std::ofstream out(input, std::ios::binary);
    out << write_hgr(hg, HgrMode::Standard);
    if (!out) {
      throw SolverError("could not write " + input.string());
    }
  }

  std::string command;
  for (const auto& arg : external_solver_command(binary, input, config)) {
    if (!command.empty()) command += ' ';
    command += shell_quote(arg);
  }
  command += " 2>&1";

  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    throw SolverError("could not launch external solver: " + binary.string());
  }
  std::array<char, 4096> buffer{};
  while (const std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw SolverError("external solver failed: " + output);
  }

  // The partition file lands next to the input; take the newest one.
  std::optional<fs::path> newest;
  fs::file_time_type newest_time{};
  for (const auto& entry : fs::directory_iterator(work_dir)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || name.find(".part") == std::string::npos) {
      continue;
    }
    const auto t = entry.last_write_time();
    if (!newest || t > newest_time) {
      newest = entry.path();
      newest_time = t;
    }
  }
  if (!newest) {
    throw SolverError("partition file not found next to " + input.string());
  }
  std::ifstream in(*newest, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();

  PartitionAssignment result{parse_label_file(text.str()), config.k};
  if (result.labels.size() != hg.num_nodes()) {
    throw SolverError("partition file has " +
                      std::to_string(result.labels.size()) + " labels for " +
                      std::to_string(hg.num_nodes()) + " nodes");
  }
  try {
    result.validate(hg.num_nodes());
  } catch (const std::invalid_argument& e) {
    throw SolverError(e.what());
  }
  return result;
}

}  // namespace

std::vector<std::string> external_solver_command(
    const std::filesystem::path& binary, const std::filesystem::path& input,
    const SolverConfig& config) {
  return {binary.string(),
          "-h",
          input.string(),
          "-k",
          std::to_string(config.k),
          "-e",
          format_epsilon(config.imbalance),
          "-o",
          "km1",
          "-m",
          "direct",
          "--preset-type",
          "default",
          "--seed",
          std::to_string(config.seed),
          "--write-partition-file=true"};
}

std::vector<PartId> parse_label_file(std::string_view text) {
  std::vector<PartId> labels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    PartId label = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + line.size(), label);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw SolverError("label file line " + std::to_string(line_no) +
                        ": expected a non-negative integer");
    }
    labels.push_back(label);
  }
  return labels;
}

PartitionAssignment partition(const Hypergraph& hg, const SolverConfig& config) {
  if (config.k == 0) {
    throw SolverError("k must be >= 1");
  }
  if (config.imbalance < 0.0) {
    throw SolverError("imbalance must be >= 0");
  }
  if (config.k > hg.num_nodes() && !(config.k == 1 && hg.num_nodes() == 0)) {
    throw SolverError("k=" + std::to_string(config.k) + " exceeds node count " +
                      std::to_string(hg.num_nodes()));
  }
  if (config.k == 1) {
    return {std::vector<PartId>(hg.num_nodes(), 0), 1};
  }
  if (config.unit_node_weights) {
    Hypergraph unit(std::vector<double>(hg.num_nodes(), 1.0));
    for (const auto& edge : hg.edges()) {
      unit.add_edge(edge);
    }
    SolverConfig inner = config;
    inner.unit_node_weights = false;
    return partition(unit, inner);
  }
  if (config.backend == SolverBackend::External) {
    return partition_external(hg, config);
  }
  return partition_internal(hg, config);
}

}  // namespace fidelipart
