#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fiveq {

using Complex = std::complex<double>;

// Native gate set of the 5Q devices. Rz(l) is diag(1, e^{il}).
enum class GateKind : std::uint8_t { H, X, Y, Z, S, Sdg, T, Tdg, Rz, CX };

inline constexpr std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::Rz: return "rz";
    case GateKind::CX: return "cx";
  }
  return "?";
}

inline constexpr bool is_two_qubit(GateKind kind) { return kind == GateKind::CX; }

inline constexpr bool is_self_inverse(GateKind kind) {
  return kind == GateKind::H || kind == GateKind::X || kind == GateKind::Y ||
         kind == GateKind::Z || kind == GateKind::CX;
}

/// Maps an angle onto (-pi, pi]. Used for comparisons only; gates keep the
/// angle they were built with.
inline double canonical_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

/// One gate application. For CX, `qubits[0]` is the control and `qubits[1]`
/// the target; single-qubit gates use `qubits[0]` only.
struct GateInstance {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};
  double angle = 0.0;

  int arity() const { return is_two_qubit(kind) ? 2 : 1; }
  int qubit() const { return qubits[0]; }
  int control() const { return qubits[0]; }
  int target() const { return qubits[1]; }

  bool touches(int q) const {
    return qubits[0] == q || (arity() == 2 && qubits[1] == q);
  }

  friend bool operator==(const GateInstance& a, const GateInstance& b) {
    if (a.kind != b.kind || a.qubits[0] != b.qubits[0]) return false;
    if (a.arity() == 2 && a.qubits[1] != b.qubits[1]) return false;
    if (a.kind == GateKind::Rz) return a.angle == b.angle;
    return true;
  }
};

namespace gates {

inline GateInstance single(GateKind kind, int q) {
  if (is_two_qubit(kind) || kind == GateKind::Rz)
    throw std::invalid_argument("gates::single: not a fixed 1-qubit gate");
  return GateInstance{kind, {q, -1}, 0.0};
}
inline GateInstance h(int q) { return single(GateKind::H, q); }
inline GateInstance x(int q) { return single(GateKind::X, q); }
inline GateInstance y(int q) { return single(GateKind::Y, q); }
inline GateInstance z(int q) { return single(GateKind::Z, q); }
inline GateInstance s(int q) { return single(GateKind::S, q); }
inline GateInstance sdg(int q) { return single(GateKind::Sdg, q); }
inline GateInstance t(int q) { return single(GateKind::T, q); }
inline GateInstance tdg(int q) { return single(GateKind::Tdg, q); }

inline GateInstance rz(int q, double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("rz: angle must be finite");
  return GateInstance{GateKind::Rz, {q, -1}, angle};
}

inline GateInstance cx(int control, int target) {
  if (control == target) throw std::invalid_argument("cx: control equals target");
  return GateInstance{GateKind::CX, {control, target}, 0.0};
}

}  // namespace gates

using Matrix2 = std::array<Complex, 4>;  // row-major

/// 2x2 unitary of a single-qubit gate.
inline Matrix2 single_qubit_matrix(const GateInstance& g) {
  using namespace std::complex_literals;
  constexpr double r = std::numbers::sqrt2 / 2.0;
  const Complex eipi4 = std::polar(1.0, std::numbers::pi / 4.0);
  switch (g.kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -1i, 1i, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S: return {1.0, 0.0, 0.0, 1i};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -1i};
    case GateKind::T: return {1.0, 0.0, 0.0, eipi4};
    case GateKind::Tdg: return {1.0, 0.0, 0.0, std::conj(eipi4)};
    case GateKind::Rz: return {1.0, 0.0, 0.0, std::polar(1.0, g.angle)};
    case GateKind::CX: break;
  }
  throw std::invalid_argument("single_qubit_matrix: CX is a two-qubit gate");
}

/// Inverse gate in the native set.
inline GateInstance inverse(const GateInstance& g) {
  GateInstance inv = g;
  switch (g.kind) {
    case GateKind::S: inv.kind = GateKind::Sdg; break;
    case GateKind::Sdg: inv.kind = GateKind::S; break;
    case GateKind::T: inv.kind = GateKind::Tdg; break;
    case GateKind::Tdg: inv.kind = GateKind::T; break;
    case GateKind::Rz: inv.angle = -g.angle; break;
    default: break;
  }
  return inv;
}

}  // namespace fiveq
