#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fiveq/circuit.hpp"
#include "fiveq/gate.hpp"

namespace fiveq {

/// Dense 2^n amplitude vector. Qubit q is bit q of the amplitude index, so
/// the bitstring "j_{n-1}...j_1 j_0" names index sum(j_q << q).
///
/// Nothing here renormalizes; norm drift is left visible to callers.
class StateVector {
 public:
  explicit StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
      throw std::invalid_argument("state width must be in [1, " + std::to_string(kMaxQubits) +
                                  "], got " + std::to_string(num_qubits));
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
  }

  StateVector(int num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
      throw std::invalid_argument("state width out of range");
    if (amps_.size() != (std::size_t{1} << num_qubits))
      throw std::invalid_argument("amplitude array length must be 2^num_qubits");
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
  }

  void apply(const GateInstance& g) {
    check(g);
    if (g.kind == GateKind::CX) {
      apply_cx(g.control(), g.target());
      return;
    }
    const int q = g.qubit();
    switch (g.kind) {
      case GateKind::X: apply_x(q); return;
      case GateKind::Z:
      case GateKind::S:
      case GateKind::Sdg:
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::Rz: apply_phase(q, single_qubit_matrix(g)[3]); return;
      default: apply_matrix(q, single_qubit_matrix(g)); return;
    }
  }

  void apply_matrix(int q, const Matrix2& m) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const Complex a = amps_[i];
      const Complex b = amps_[i | bit];
      amps_[i] = m[0] * a + m[1] * b;
      amps_[i | bit] = m[2] * a + m[3] * b;
    }
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  void check(const GateInstance& g) const {
    for (int k = 0; k < g.arity(); ++k) {
      if (g.qubits[k] < 0 || g.qubits[k] >= num_qubits_)
        throw std::out_of_range("gate qubit " + std::to_string(g.qubits[k]) +
                                " out of range for " + std::to_string(num_qubits_) +
                                "-qubit state");
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1])
      throw std::invalid_argument("cx: control equals target");
  }

  void apply_x(int q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }

  void apply_phase(int q, Complex phase) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (i & bit) amps_[i] *= phase;
  }

  void apply_cx(int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }

  int num_qubits_;
  std::vector<Complex> amps_;
};

/// Index of a bitstring written most-significant (highest qubit) first.
inline std::size_t bitstring_index(std::string_view bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("bitstring may only contain 0 and 1: '" + std::string(bits) + "'");
    idx = (idx << 1) | static_cast<std::size_t>(c - '0');
  }
  return idx;
}

inline std::string index_bitstring(std::size_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int k = 0; k < width; ++k)
    if ((index >> k) & 1U) s[static_cast<std::size_t>(width - 1 - k)] = '1';
  return s;
}

inline StateVector init_basis_state(int num_qubits, std::string_view bits) {
  if (bits.size() != static_cast<std::size_t>(num_qubits))
    throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                " does not match " + std::to_string(num_qubits) + " qubits");
  StateVector s(num_qubits);
  s[0] = 0.0;
  s[bitstring_index(bits)] = 1.0;
  return s;
}

inline StateVector apply_gate(StateVector state, const GateInstance& g) {
  state.apply(g);
  return state;
}

inline void run_circuit_in_place(const Circuit& circuit, StateVector& state) {
  if (circuit.num_qubits() != state.num_qubits())
    throw std::invalid_argument("run_circuit: circuit has " + std::to_string(circuit.num_qubits()) +
                                " qubits, state has " + std::to_string(state.num_qubits()));
  if (circuit.has_measurements())
    throw std::invalid_argument("run_circuit: circuit contains measurements; use sample()");
  for (const auto& g : circuit.gates()) state.apply(g);
}

inline StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  run_circuit_in_place(circuit, initial);
  return initial;
}

inline StateVector run_circuit(const Circuit& circuit) {
  return run_circuit(circuit, StateVector(circuit.num_qubits()));
}

inline Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("inner_product: width mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// |<a|b>|, insensitive to global phase.
inline double overlap(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

}  // namespace fiveq
