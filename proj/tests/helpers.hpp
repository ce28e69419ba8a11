#pragma once

#include <random>
#include <vector>

#include "fiveq.hpp"
#include "oracles.hpp"

namespace testing {

// The oracle's matrix for a library gate, built from the oracle tables.
inline oracle::Dense oracle_gate(int n, const fiveq::GateInstance& g) {
  using fiveq::GateKind;
  switch (g.kind) {
    case GateKind::H: return oracle::single(n, g.qubit(), oracle::H());
    case GateKind::X: return oracle::single(n, g.qubit(), oracle::X());
    case GateKind::Y: return oracle::single(n, g.qubit(), oracle::Y());
    case GateKind::Z: return oracle::single(n, g.qubit(), oracle::Z());
    case GateKind::S: return oracle::single(n, g.qubit(), oracle::S());
    case GateKind::Sdg: return oracle::single(n, g.qubit(), oracle::Sdg());
    case GateKind::T: return oracle::single(n, g.qubit(), oracle::T());
    case GateKind::Tdg: return oracle::single(n, g.qubit(), oracle::Tdg());
    case GateKind::Rz: return oracle::single(n, g.qubit(), oracle::Rz(g.angle));
    case GateKind::CX: return oracle::cx(n, g.control(), g.target());
  }
  return oracle::Dense::identity(std::size_t{1} << n);
}

inline oracle::Dense oracle_unitary(int n, const std::vector<fiveq::GateInstance>& gates) {
  auto u = oracle::Dense::identity(std::size_t{1} << n);
  for (const auto& g : gates) u = oracle::mul(oracle_gate(n, g), u);
  return u;
}

inline oracle::Dense oracle_unitary(const fiveq::Circuit& c) { return oracle_unitary(c.num_qubits(), c.gates()); }

inline std::vector<oracle::C> amplitudes(const fiveq::StateVector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

inline double max_diff(const std::vector<oracle::C>& a, const std::vector<oracle::C>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// |<a|b>|
inline double overlap(const std::vector<oracle::C>& a, const std::vector<oracle::C>& b) {
  oracle::C acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::abs(acc);
}

inline fiveq::GateInstance random_gate(std::mt19937_64& rng, int n, bool allow_cx = true) {
  using fiveq::GateKind;
  std::uniform_int_distribution<int> kind(0, allow_cx ? 9 : 8);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  const auto k = static_cast<GateKind>(kind(rng));
  if (k == GateKind::CX && n > 1) {
    const int c = qubit(rng);
    int t = qubit(rng);
    while (t == c) t = qubit(rng);
    return fiveq::gates::cx(c, t);
  }
  if (k == GateKind::CX) return fiveq::gates::h(0);
  if (k == GateKind::Rz) return fiveq::gates::rz(qubit(rng), angle(rng));
  return fiveq::gates::single(k, qubit(rng));
}

inline fiveq::Circuit random_circuit(std::mt19937_64& rng, int n, int depth) {
  fiveq::Circuit c(n);
  for (int i = 0; i < depth; ++i) c.add(random_gate(rng, n));
  return c;
}

}  // namespace testing
