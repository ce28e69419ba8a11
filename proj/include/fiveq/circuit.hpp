#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/gate.hpp"

namespace fiveq {

inline constexpr int kMaxQubits = 24;

enum class Basis : std::uint8_t { Z, X, Y };

inline constexpr char basis_letter(Basis b) {
  switch (b) {
    case Basis::Z: return 'z';
    case Basis::X: return 'x';
    case Basis::Y: return 'y';
  }
  return '?';
}

/// Terminal measurement of `qubit` into classical bit `cbit`. The basis is
/// metadata: execution lowers it to a gate prefix followed by a Z readout.
struct Measurement {
  int qubit = 0;
  int cbit = 0;
  Basis basis = Basis::Z;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Gates that rotate `basis` onto the computational basis. X -> [H],
/// Y -> [Sdg, H] (so the composed operator is H*Sdg), Z -> [].
inline std::vector<GateInstance> basis_prefix(Basis basis, int qubit) {
  switch (basis) {
    case Basis::Z: return {};
    case Basis::X: return {gates::h(qubit)};
    case Basis::Y: return {gates::sdg(qubit), gates::h(qubit)};
  }
  return {};
}

/// Ordered gate list over `num_qubits` qubits plus terminal measurements.
///
/// Every mutating call validates its arguments, so a Circuit that exists is
/// always well formed: indices are in range, CX operands differ, classical
/// bits are written once and no gate follows a measurement on its qubit.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
      throw std::invalid_argument("circuit width must be in [1, " +
                                  std::to_string(kMaxQubits) + "], got " +
                                  std::to_string(num_qubits));
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<GateInstance>& gates() const { return gates_; }
  const std::vector<Measurement>& measurements() const { return measurements_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  bool has_measurements() const { return !measurements_.empty(); }

  Circuit& add(const GateInstance& g) {
    check_qubit(g.qubits[0]);
    if (g.arity() == 2) {
      check_qubit(g.qubits[1]);
      if (g.qubits[0] == g.qubits[1])
        throw std::invalid_argument("cx: control equals target (" +
                                    std::to_string(g.qubits[0]) + ")");
    }
    if (g.kind == GateKind::Rz && !std::isfinite(g.angle))
      throw std::invalid_argument("rz: angle must be finite");
    for (int k = 0; k < g.arity(); ++k) {
      if (is_measured(g.qubits[k]))
        throw std::invalid_argument("gate on qubit " + std::to_string(g.qubits[k]) +
                                    " after its measurement");
    }
    gates_.push_back(g);
    return *this;
  }

  Circuit& add(const std::vector<GateInstance>& gs) {
    for (const auto& g : gs) add(g);
    return *this;
  }

  Circuit& measure(int qubit, int cbit, Basis basis = Basis::Z) {
    check_qubit(qubit);
    if (cbit < 0) throw std::invalid_argument("classical bit index must be >= 0");
    for (const auto& m : measurements_) {
      if (m.cbit == cbit)
        throw std::invalid_argument("classical bit c" + std::to_string(cbit) +
                                    " written twice");
      if (m.qubit == qubit)
        throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                    " measured twice");
    }
    measurements_.push_back({qubit, cbit, basis});
    return *this;
  }

  bool is_measured(int qubit) const {
    return std::any_of(measurements_.begin(), measurements_.end(),
                       [&](const Measurement& m) { return m.qubit == qubit; });
  }

  /// Measurements sorted by classical bit. Histogram keys print the highest
  /// classical bit first.
  std::vector<Measurement> measurements_by_cbit() const {
    auto ms = measurements_;
    std::sort(ms.begin(), ms.end(),
              [](const Measurement& a, const Measurement& b) { return a.cbit < b.cbit; });
    return ms;
  }

  Circuit without_measurements() const {
    Circuit c = *this;
    c.measurements_.clear();
    return c;
  }

  std::size_t count(GateKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        gates_.begin(), gates_.end(), [&](const GateInstance& g) { return g.kind == kind; }));
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_)
      throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                              std::to_string(num_qubits_) + "-qubit circuit");
  }

  int num_qubits_ = 1;
  std::vector<GateInstance> gates_;
  std::vector<Measurement> measurements_;
};

/// Gates of `a` followed by gates and measurements of `b`.
inline Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("compose: width mismatch (" + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()) + ")");
  Circuit out = a;  // add() rejects gates of b on qubits a already measured
  out.add(b.gates());
  for (const auto& m : b.measurements()) out.measure(m.qubit, m.cbit, m.basis);
  return out;
}

/// A measurement-free circuit with every basis prefix appended, plus the
/// qubits to read out in classical-bit order.
struct LoweredCircuit {
  Circuit circuit;
  std::vector<int> measured;
};

inline LoweredCircuit lower_measurements(const Circuit& c) {
  LoweredCircuit out{c.without_measurements(), {}};
  for (const auto& m : c.measurements_by_cbit()) {
    out.circuit.add(basis_prefix(m.basis, m.qubit));
    out.measured.push_back(m.qubit);
  }
  return out;
}

}  // namespace fiveq
