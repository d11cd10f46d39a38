#include "fidelipart/circuit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

namespace fidelipart {

GateKind GateKind::other(std::string name, std::size_t arity) {
  if (arity == 0) {
    throw std::invalid_argument("gate kind '" + name + "' has arity 0");
  }
  if (name.empty() ||
      std::any_of(name.begin(), name.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; })) {
    throw std::invalid_argument("invalid gate name '" + name + "'");
  }
  return {GateType::Other, std::move(name), arity};
}

std::string GateKind::display_name() const {
  switch (type_) {
    case GateType::H:
      return "HGate";
    case GateType::CNOT:
      return "CNOTGate";
    case GateType::SWAP:
      return "SwapGate";
    case GateType::CCX:
      return "CCXGate";
    case GateType::Other:
      break;
  }
  return name_;
}

Gate::Gate(GateKind kind, std::vector<Qubit> qubits)
    : kind_(std::move(kind)), qubits_(std::move(qubits)) {
  if (qubits_.size() != kind_.arity()) {
    throw std::invalid_argument(
        kind_.name() + " expects " + std::to_string(kind_.arity()) +
        " qubits, got " + std::to_string(qubits_.size()));
  }
  auto sorted = qubits_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(kind_.name() + " repeats a qubit");
  }
}

bool Gate::acts_on(Qubit q) const noexcept {
  return std::find(qubits_.begin(), qubits_.end(), q) != qubits_.end();
}

Circuit::Circuit(std::size_t num_qubits, std::vector<Gate> gates)
    : num_qubits_(num_qubits) {
  gates_.reserve(gates.size());
  for (auto& g : gates) {
    append(std::move(g));
  }
}

void Circuit::append(Gate gate) {
  for (Qubit q : gate.qubits()) {
    if (q >= num_qubits_) {
      throw std::out_of_range("qubit " + std::to_string(q) +
                              " out of range for " +
                              std::to_string(num_qubits_) + "-qubit circuit");
    }
  }
  gates_.push_back(std::move(gate));
}

void ErrorModel::validate() const {
  const auto check = [](double eps, const char* name) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
    }
  };
  check(eps_h, "eps_h");
  check(eps_cnot, "eps_cnot");
  check(eps_default_single, "eps_default_single");
  check(eps_default_multi, "eps_default_multi");
}

std::size_t depth(const Circuit& circuit) {
  std::vector<std::size_t> layer(circuit.num_qubits(), 0);
  std::size_t deepest = 0;
  for (const auto& gate : circuit.gates()) {
    std::size_t start = 0;
    for (Qubit q : gate.qubits()) {
      start = std::max(start, layer[q]);
    }
    const std::size_t mine = start + 1;
    for (Qubit q : gate.qubits()) {
      layer[q] = mine;
    }
    deepest = std::max(deepest, mine);
  }
  return deepest;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const std::size_t begin = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > begin) {
      tokens.push_back(line.substr(begin, i - begin));
    }
  }
  return tokens;
}

std::size_t parse_count(std::string_view token, std::size_t line_no) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, "expected a non-negative integer, got '" +
                                  std::string(token) + "'");
  }
  return value;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      continue;
    }

    if (!circuit) {
      if (tokens[0] != "qubits" || tokens.size() != 2) {
        throw ParseError(line_no, "expected 'qubits N' header");
      }
      circuit.emplace(parse_count(tokens[1], line_no));
      continue;
    }

    const auto op = tokens[0];
    std::optional<GateKind> kind;
    std::size_t first_qubit = 1;
    if (op == "h") {
      kind = GateKind::h();
    } else if (op == "cx") {
      kind = GateKind::cnot();
    } else if (op == "swap") {
      kind = GateKind::swap();
    } else if (op == "ccx") {
      kind = GateKind::ccx();
    } else if (op == "g") {
      if (tokens.size() < 3) {
        throw ParseError(line_no, "expected 'g <name> <arity> q...'");
      }
      try {
        kind = GateKind::other(std::string(tokens[1]),
                               parse_count(tokens[2], line_no));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      first_qubit = 3;
    } else {
      throw ParseError(line_no, "unknown gate '" + std::string(op) + "'");
    }

    if (tokens.size() - first_qubit != kind->arity()) {
      throw ParseError(line_no, "arity mismatch: " + kind->name() + " takes " +
                                    std::to_string(kind->arity()) +
                                    " qubits");
    }
    std::vector<Qubit> qubits;
    for (std::size_t t = first_qubit; t < tokens.size(); ++t) {
      const std::size_t q = parse_count(tokens[t], line_no);
      if (q >= circuit->num_qubits()) {
        throw ParseError(line_no, "qubit " + std::to_string(q) +
                                      " out of range (circuit has " +
                                      std::to_string(circuit->num_qubits()) +
                                      " qubits)");
      }
      qubits.push_back(static_cast<Qubit>(q));
    }
    try {
      circuit->append(Gate(std::move(*kind), std::move(qubits)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!circuit) {
    throw ParseError(line_no, "missing 'qubits N' header");
  }
  return std::move(*circuit);
}

std::string serialize_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits() << '\n';
  for (const auto& gate : circuit.gates()) {
    const auto& kind = gate.kind();
    if (kind.type() == GateType::Other) {
      out << "g " << kind.name() << ' ' << kind.arity();
    } else {
      out << kind.name();
    }
    for (Qubit q : gate.qubits()) {
      out << ' ' << q;
    }
    out << '\n';
  }
  return out.str();
}

Benchmark parse_benchmark(std::string_view id) {
  if (id == "s" || id == "S") return Benchmark::S;
  if (id == "m" || id == "M") return Benchmark::M;
  if (id == "l" || id == "L") return Benchmark::L;
  throw std::invalid_argument("unknown benchmark '" + std::string(id) +
                              "' (expected s, m or l)");
}

namespace {

Circuit circuit_s() {
  return Circuit(6, {
                        Gate::h(0),        Gate::h(3),    Gate::cnot(5, 0),
                        Gate::h(0),        Gate::cnot(1, 5), Gate::cnot(0, 2),
                        Gate::h(1),        Gate::cnot(5, 4), Gate::h(0),
                        Gate::h(2),        Gate::cnot(1, 0), Gate::h(2),
                        Gate::cnot(0, 4),  Gate::h(2),    Gate::cnot(3, 0),
                        Gate::h(4),        Gate::cnot(0, 5), Gate::h(4),
                        Gate::cnot(1, 5),  Gate::h(4),    Gate::h(4),
                        Gate::cnot(4, 5),
                    });
}

// H on every qubit, then a nearest-neighbour CNOT chain.
void add_entangling_prefix(Circuit& c) {
  const auto n = static_cast<Qubit>(c.num_qubits());
  for (Qubit q = 0; q < n; ++q) {
    c.append(Gate::h(q));
  }
  for (Qubit q = 0; q + 1 < n; ++q) {
    c.append(Gate::cnot(q, q + 1));
  }
}

// CNOT(c, c + s mod n) with c cycling over the qubits and s cycling over
// `strides`.
template <std::size_t N>
void add_stride_cnots(Circuit& c, std::size_t count,
                      const std::array<Qubit, N>& strides) {
  const auto n = static_cast<Qubit>(c.num_qubits());
  for (std::size_t t = 0; t < count; ++t) {
    const auto control = static_cast<Qubit>(t % n);
    const Qubit target = (control + strides[t % N]) % n;
    c.append(Gate::cnot(control, target));
  }
}

Circuit circuit_m() {
  Circuit c(10);
  add_entangling_prefix(c);  // 10 + 9
  add_stride_cnots(c, 36, std::array<Qubit, 4>{2, 3, 4, 5});
  return c;
}

Circuit circuit_l() {
  Circuit c(24);
  add_entangling_prefix(c);  // 24 + 23
  for (Qubit offset : {0u, 1u}) {
    for (Qubit q = offset; q + 2 < 24; q += 3) {
      c.append(Gate::ccx(q, q + 1, q + 2));
    }
  }  // 8 + 7
  add_stride_cnots(c, 26, std::array<Qubit, 4>{3, 5, 7, 11});
  return c;
}

}  // namespace

Circuit benchmark_circuit(Benchmark which) {
  switch (which) {
    case Benchmark::S:
      return circuit_s();
    case Benchmark::M:
      return circuit_m();
    case Benchmark::L:
      return circuit_l();
  }
  throw std::invalid_argument("unknown benchmark");
}

}  // namespace fidelipart
