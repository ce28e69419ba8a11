#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/gate.hpp"

// Gate identities used to express circuits in the native {1-qubit, CX}
// set. Each function returns a gate list in application order.

namespace fiveq {

using GateList = std::vector<GateInstance>;

/// CX c->t realised with the physical CX t->c and four Hadamards.
inline GateList reverse_cx(int control, int target) {
  using namespace gates;
  return {h(control), h(target), cx(target, control), h(control), h(target)};
}

/// Flips `target` when `control` is |0>.
inline GateList zero_controlled_cx(int control, int target) {
  using namespace gates;
  return {x(control), cx(control, target), x(control)};
}

/// SWAP as three CX with the middle one reversed.
inline GateList swap_decomposition(int a, int b) {
  using namespace gates;
  return {cx(a, b), cx(b, a), cx(a, b)};
}

/// Controlled-Z; symmetric in (a, b) as a unitary.
inline GateList cz_decomposition(int a, int b) {
  using namespace gates;
  return {h(b), cx(a, b), h(b)};
}

/// Toffoli (controls c1, c2; target t) over {H, T, Tdg, CX} with six CX.
inline GateList toffoli_decomposition(int c1, int c2, int t) {
  if (c1 == c2 || c1 == t || c2 == t)
    throw std::invalid_argument("toffoli: qubits must be distinct (" + std::to_string(c1) + ", " +
                                std::to_string(c2) + ", " + std::to_string(t) + ")");
  using namespace gates;
  return {h(t),     cx(c2, t), tdg(t), cx(c1, t), gates::t(t), cx(c2, t), tdg(t),
          cx(c1, t), gates::t(c2), gates::t(t), h(t), cx(c1, c2), gates::t(c1), tdg(c2),
          cx(c1, c2)};
}

/// Toffoli that fires when both controls are |0>.
inline GateList zero_controlled_toffoli(int c1, int c2, int t) {
  using namespace gates;
  GateList out{x(c1), x(c2)};
  auto core = toffoli_decomposition(c1, c2, t);
  out.insert(out.end(), core.begin(), core.end());
  out.push_back(x(c1));
  out.push_back(x(c2));
  return out;
}

/// Controlled-Rz(lambda) = diag(1, 1, 1, e^{i lambda}) over {Rz, CX}. The
/// target-side Rz/CX sandwich alone leaves a conditional phase e^{-i lambda/2}
/// on the control; the trailing Rz(lambda/2) on the control cancels it.
inline GateList decompose_crz(int control, int target, double lambda) {
  if (control == target)
    throw std::invalid_argument("controlled-rz: control equals target (" + std::to_string(control) + ")");
  using namespace gates;
  return {rz(target, lambda / 2.0), cx(control, target), rz(target, -lambda / 2.0),
          cx(control, target), rz(control, lambda / 2.0)};
}

}  // namespace fiveq
