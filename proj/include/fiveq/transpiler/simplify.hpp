#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "fiveq/circuit.hpp"

namespace fiveq {

namespace simplify_detail {

inline bool cancels(const GateInstance& a, const GateInstance& b) {
  if (a.arity() != b.arity() || a.qubits[0] != b.qubits[0]) return false;
  if (a.arity() == 2) return a.kind == GateKind::CX && b.kind == GateKind::CX && a.qubits[1] == b.qubits[1];
  if (a.kind == GateKind::Rz) return false;  // merged instead
  if (is_self_inverse(a.kind)) return a.kind == b.kind;
  return inverse(a).kind == b.kind;
}

}  // namespace simplify_detail

/// Peephole pass: removes adjacent inverse pairs acting on the same operands
/// (H H, X X, Y Y, Z Z, S Sdg, T Tdg, identical CX) and merges adjacent Rz on
/// the same qubit, dropping rotations that land on a multiple of 2 pi.
/// Cancellation cascades, so one pass reaches the fixed point.
inline Circuit simplify(const Circuit& circuit) {
  using namespace simplify_detail;
  std::vector<std::optional<GateInstance>> kept;
  std::vector<std::vector<std::size_t>> top(static_cast<std::size_t>(circuit.num_qubits()));

  auto last_on = [&](int q) -> std::optional<std::size_t> {
    auto& stack = top[static_cast<std::size_t>(q)];
    if (stack.empty()) return std::nullopt;
    return stack.back();
  };
  auto drop = [&](std::size_t idx) {
    const auto& g = *kept[idx];
    for (int k = 0; k < g.arity(); ++k) top[static_cast<std::size_t>(g.qubits[k])].pop_back();
    kept[idx].reset();
  };

  for (const auto& g : circuit.gates()) {
    auto prev = last_on(g.qubits[0]);
    bool shared = prev.has_value();
    if (shared && g.arity() == 2) shared = last_on(g.qubits[1]) == prev;
    if (shared) {
      auto& p = *kept[*prev];
      if (cancels(p, g)) {
        drop(*prev);
        continue;
      }
      if (p.kind == GateKind::Rz && g.kind == GateKind::Rz && p.qubit() == g.qubit()) {
        p.angle += g.angle;
        if (std::abs(canonical_angle(p.angle)) < 1e-12) drop(*prev);
        continue;
      }
    }
    kept.emplace_back(g);
    for (int k = 0; k < g.arity(); ++k) top[static_cast<std::size_t>(g.qubits[k])].push_back(kept.size() - 1);
  }

  Circuit out(circuit.num_qubits());
  for (const auto& g : kept)
    if (g) out.add(*g);
  for (const auto& m : circuit.measurements()) out.measure(m.qubit, m.cbit, m.basis);
  return out;
}

}  // namespace fiveq
