#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/circuit.hpp"
#include "fiveq/transpiler/coupling_map.hpp"
#include "fiveq/transpiler/rewrites.hpp"

namespace fiveq {

/// Routing result. `layout[l]` is the physical qubit holding logical qubit l
/// after the last gate; measurements have already been moved through it.
struct RoutedCircuit {
  Circuit circuit;
  std::vector<int> layout;

  bool identity_layout() const {
    for (std::size_t l = 0; l < layout.size(); ++l)
      if (layout[l] != static_cast<int>(l)) return false;
    return true;
  }
};

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace route_detail {

inline void emit_cx(Circuit& out, const CouplingMap& map, int control, int target) {
  if (map.has_edge(control, target)) {
    out.add(gates::cx(control, target));
  } else if (map.has_edge(target, control)) {
    out.add(reverse_cx(control, target));
  } else {
    throw RoutingError("no coupling between physical qubits " + std::to_string(control) + " and " +
                       std::to_string(target));
  }
}

inline void emit_swap(Circuit& out, const CouplingMap& map, int a, int b) {
  // Orient the outer pair of CXs along the native edge.
  const auto seq = map.has_edge(a, b) ? swap_decomposition(a, b) : swap_decomposition(b, a);
  for (const auto& g : seq) emit_cx(out, map, g.control(), g.target());
}

}  // namespace route_detail

/// Rewrites `circuit` so every CX is an edge of `map`: reversed pairs get the
/// four-Hadamard flip, distant pairs get a greedy SWAP chain along the
/// lowest-index shortest path. Logical qubit l starts on physical qubit l.
inline RoutedCircuit route(const Circuit& circuit, const CouplingMap& map) {
  using namespace route_detail;
  if (circuit.num_qubits() > map.num_qubits())
    throw RoutingError("circuit needs " + std::to_string(circuit.num_qubits()) +
                       " qubits but the coupling map has " + std::to_string(map.num_qubits()));

  std::vector<int> phys(static_cast<std::size_t>(circuit.num_qubits()));
  std::iota(phys.begin(), phys.end(), 0);
  std::vector<int> logical(static_cast<std::size_t>(map.num_qubits()), -1);
  for (std::size_t l = 0; l < phys.size(); ++l) logical[static_cast<std::size_t>(phys[l])] = static_cast<int>(l);

  auto swap_physical = [&](int a, int b) {
    const int la = logical[static_cast<std::size_t>(a)];
    const int lb = logical[static_cast<std::size_t>(b)];
    logical[static_cast<std::size_t>(a)] = lb;
    logical[static_cast<std::size_t>(b)] = la;
    if (la >= 0) phys[static_cast<std::size_t>(la)] = b;
    if (lb >= 0) phys[static_cast<std::size_t>(lb)] = a;
  };

  Circuit out(map.num_qubits());
  for (const auto& g : circuit.gates()) {
    if (g.arity() == 1) {
      GateInstance moved = g;
      moved.qubits[0] = phys[static_cast<std::size_t>(g.qubit())];
      out.add(moved);
      continue;
    }
    const int pc = phys[static_cast<std::size_t>(g.control())];
    const int pt = phys[static_cast<std::size_t>(g.target())];
    if (!map.adjacent(pc, pt)) {
      auto path = map.shortest_path(pc, pt);
      if (!path)
        throw RoutingError("coupling map does not connect physical qubits " + std::to_string(pc) +
                           " and " + std::to_string(pt));
      for (std::size_t i = 0; i + 2 < path->size(); ++i) {
        emit_swap(out, map, (*path)[i], (*path)[i + 1]);
        swap_physical((*path)[i], (*path)[i + 1]);
      }
    }
    emit_cx(out, map, phys[static_cast<std::size_t>(g.control())], phys[static_cast<std::size_t>(g.target())]);
  }
  for (const auto& m : circuit.measurements())
    out.measure(phys[static_cast<std::size_t>(m.qubit)], m.cbit, m.basis);
  return {std::move(out), std::move(phys)};
}

struct Violation {
  std::size_t gate_index;
  int control;
  int target;

  std::string describe() const {
    return "gate " + std::to_string(gate_index) + ": cx " + std::to_string(control) + " -> " +
           std::to_string(target) + " is not a coupling-map edge";
  }
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every CX that is not an edge of `map`.
inline std::vector<Violation> validate(const Circuit& circuit, const CouplingMap& map) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    const auto& g = circuit.gates()[i];
    if (g.kind == GateKind::CX && !map.has_edge(g.control(), g.target()))
      out.push_back({i, g.control(), g.target()});
  }
  return out;
}

}  // namespace fiveq
