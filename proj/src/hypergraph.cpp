#include "fidelipart/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fidelipart {

void Hypergraph::add_edge(Hyperedge edge) {
  if (edge.pins.empty()) {
    return;
  }
  for (NodeId pin : edge.pins) {
    if (pin >= num_nodes()) {
      throw std::out_of_range("hyperedge pin " + std::to_string(pin) +
                              " >= node count " + std::to_string(num_nodes()));
    }
  }
  edges_.push_back(std::move(edge));
}

std::vector<std::int64_t> Hypergraph::integral_node_weights() const {
  std::vector<std::int64_t> out;
  out.reserve(node_weights_.size());
  for (double w : node_weights_) {
    out.push_back(std::llround(w));
  }
  return out;
}

std::vector<std::int64_t> Hypergraph::integral_edge_weights() const {
  std::vector<std::int64_t> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) {
    out.push_back(std::llround(e.weight));
  }
  return out;
}

bool Hypergraph::same_structure(const Hypergraph& other) const {
  if (node_weights_ != other.node_weights_ ||
      edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].pins != other.edges_[i].pins ||
        edges_[i].weight != other.edges_[i].weight) {
      return false;
    }
  }
  return true;
}

double node_weight(const GateKind& kind, const ErrorModel& model) {
  switch (kind.type()) {
    case GateType::CNOT:
      return 10.0 * (1.0 / model.eps_cnot);
    case GateType::H:
      return 1.0 * (1.0 / model.eps_h);
    default:
      return 1.0 * (1.0 / model.eps_default_single);
  }
}

double gate_level_edge_weight(std::size_t arity, double eps) {
  return 100.0 * static_cast<double>(arity) * (1.0 / eps);
}

double temporal_edge_weight(std::size_t gates_on_qubit,
                            const ErrorModel& model) {
  const double density =
      100.0 * static_cast<double>(gates_on_qubit / 2) * (1.0 / model.eps_h);
  return std::max(1.0, density);
}

Hypergraph circuit_to_hypergraph(const Circuit& circuit,
                                 const ErrorModel& model) {
  std::vector<double> weights;
  weights.reserve(circuit.size());
  for (const auto& gate : circuit.gates()) {
    weights.push_back(node_weight(gate.kind(), model));
  }
  Hypergraph hg(std::move(weights));

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const auto& kind = circuit[i].kind();
    if (!kind.is_multi_qubit()) {
      continue;
    }
    const double eps = kind.type() == GateType::CNOT ? model.eps_cnot
                                                     : model.eps_default_multi;
    hg.add_edge({{static_cast<NodeId>(i)},
                 gate_level_edge_weight(kind.arity(), eps),
                 EdgeKind::GateLevel,
                 std::nullopt});
  }

  std::vector<std::vector<NodeId>> per_qubit(circuit.num_qubits());
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    for (Qubit q : circuit[i].qubits()) {
      per_qubit[q].push_back(static_cast<NodeId>(i));
    }
  }
  for (std::size_t q = 0; q < per_qubit.size(); ++q) {
    if (per_qubit[q].size() < 2) {
      continue;
    }
    const double w = temporal_edge_weight(per_qubit[q].size(), model);
    hg.add_edge({std::move(per_qubit[q]), w, EdgeKind::TemporalChain,
                 static_cast<Qubit>(q)});
  }
  return hg;
}

Hypergraph normalize_weights(const Hypergraph& hg) {
  Hypergraph out = hg;
  double max_w = 0.0;
  for (const auto& e : out.edges()) {
    max_w = std::max(max_w, e.weight);
  }
  if (max_w <= 0.0) {
    return out;
  }
  for (auto& e : out.mutable_edges()) {
    e.weight = std::max(1.0, std::round(e.weight * 1e6 / max_w));
  }
  return out;
}

HgrMode parse_hgr_mode(std::string_view name) {
  if (name == "paper-raw") return HgrMode::PaperRaw;
  if (name == "paper-normalized") return HgrMode::PaperNormalized;
  if (name == "standard") return HgrMode::Standard;
  throw std::invalid_argument("unknown hgr mode '" + std::string(name) +
                              "' (expected paper-raw, paper-normalized or "
                              "standard)");
}

std::string write_hgr(const Hypergraph& hg, HgrMode mode) {
  Hypergraph normalized;
  const Hypergraph* src = &hg;
  if (mode != HgrMode::PaperRaw) {
    normalized = normalize_weights(hg);
    src = &normalized;
  }

  std::ostringstream out;
  out << src->num_edges() << ' ' << src->num_nodes() << ' '
      << (mode == HgrMode::Standard ? "11" : "1") << '\n';
  const auto edge_weights = src->integral_edge_weights();
  for (std::size_t e = 0; e < src->num_edges(); ++e) {
    out << edge_weights[e];
    for (NodeId pin : src->edges()[e].pins) {
      out << ' ' << (pin + 1);
    }
    out << '\n';
  }
  for (std::int64_t w : src->integral_node_weights()) {
    out << w << '\n';
  }
  return out.str();
}

namespace {

struct LineReader {
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next line that is neither blank nor a `%` comment.
  std::optional<std::string_view> next() {
    while (pos_ < text_.size()) {
      const std::size_t eol = std::min(text_.find('\n', pos_), text_.size());
      std::string_view line = text_.substr(pos_, eol - pos_);
      pos_ = eol + 1;
      ++line_no_;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos || line[first] == '%') {
        continue;
      }
      return line.substr(first);
    }
    return std::nullopt;
  }

  [[nodiscard]] std::size_t line_no() const { return line_no_; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::int64_t> parse_ints(std::string_view line,
                                     std::size_t line_no) {
  std::vector<std::int64_t> values;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
      ++i;
    }
    if (i >= line.size()) {
      break;
    }
    std::int64_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() ||
        (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
      throw HgrError("line " + std::to_string(line_no) +
                     ": expected integers");
    }
    values.push_back(v);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return values;
}

}  // namespace

Hypergraph read_hgr(std::string_view text) {
  LineReader reader(text);
  const auto header_line = reader.next();
  if (!header_line) {
    throw HgrError("missing header line");
  }
  const auto header = parse_ints(*header_line, reader.line_no());
  if (header.size() < 2 || header.size() > 3 || header[0] < 0 ||
      header[1] < 0) {
    throw HgrError("malformed header: expected 'E N [fmt]'");
  }
  const auto num_edges = static_cast<std::size_t>(header[0]);
  const auto num_nodes = static_cast<std::size_t>(header[1]);
  const std::int64_t fmt = header.size() == 3 ? header[2] : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    throw HgrError("unsupported format code " + std::to_string(fmt));
  }
  const bool edge_weighted = fmt == 1 || fmt == 11;

  std::vector<Hyperedge> edges;
  edges.reserve(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    const auto line = reader.next();
    if (!line) {
      throw HgrError("expected " + std::to_string(num_edges) +
                     " hyperedges, found " + std::to_string(e));
    }
    const auto values = parse_ints(*line, reader.line_no());
    const std::size_t first_pin = edge_weighted ? 1 : 0;
    if (values.size() <= first_pin) {
      throw HgrError("line " + std::to_string(reader.line_no()) +
                     ": hyperedge without pins");
    }
    Hyperedge edge;
    edge.weight = edge_weighted ? static_cast<double>(values[0]) : 1.0;
    if (edge.weight < 1.0) {
      throw HgrError("line " + std::to_string(reader.line_no()) +
                     ": hyperedge weight must be positive");
    }
    for (std::size_t i = first_pin; i < values.size(); ++i) {
      if (values[i] < 1 || static_cast<std::size_t>(values[i]) > num_nodes) {
        throw HgrError("line " + std::to_string(reader.line_no()) +
                       ": node index " + std::to_string(values[i]) +
                       " out of range");
      }
      edge.pins.push_back(static_cast<NodeId>(values[i] - 1));
    }
    edges.push_back(std::move(edge));
  }

  // The weighted-node dialect (format 1) appends node weights; plain hMETIS format 1
  // has none, in which case nodes get unit weight.
  std::vector<double> node_weights;
  node_weights.reserve(num_nodes);
  while (node_weights.size() < num_nodes) {
    const auto line = reader.next();
    if (!line) {
      break;
    }
    const auto values = parse_ints(*line, reader.line_no());
    if (values.size() != 1 || values[0] < 1) {
      throw HgrError("line " + std::to_string(reader.line_no()) +
                     ": expected a single positive node weight");
    }
    node_weights.push_back(static_cast<double>(values[0]));
  }
  const bool node_weighted = fmt == 10 || fmt == 11 ||
                             (fmt == 1 && !node_weights.empty());
  if (node_weighted && node_weights.size() != num_nodes) {
    throw HgrError("missing node weights: expected " +
                   std::to_string(num_nodes) + ", found " +
                   std::to_string(node_weights.size()));
  }
  if (!node_weighted) {
    if (!node_weights.empty()) {
      throw HgrError("unexpected trailing lines after hyperedges");
    }
    node_weights.assign(num_nodes, 1.0);
  }
  if (reader.next()) {
    throw HgrError("unexpected trailing lines after node weights");
  }

  Hypergraph hg(std::move(node_weights));
  for (auto& e : edges) {
    hg.add_edge(std::move(e));
  }
  return hg;
}

}  // namespace fidelipart
