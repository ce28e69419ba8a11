#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/circuit.hpp"
#include "fiveq/noise.hpp"
#include "fiveq/sampling.hpp"
#include "fiveq/state.hpp"

namespace fiveq {

/// Signed tensor product of single-qubit Paulis. `factors[q]` acts on qubit
/// q; the text form prints the highest qubit first ("YXX" = Y on qubit 2).
struct PauliString {
  std::vector<char> factors;
  double coefficient = 1.0;

  static PauliString parse(std::string_view letters, double coefficient = 1.0) {
    if (letters.empty()) throw std::invalid_argument("empty Pauli string");
    if (coefficient == 0.0) throw std::invalid_argument("Pauli coefficient must be nonzero");
    PauliString p;
    p.coefficient = coefficient;
    p.factors.resize(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(letters[i])));
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw std::invalid_argument(std::string("bad Pauli letter '") + letters[i] + "'");
      p.factors[letters.size() - 1 - i] = c;
    }
    return p;
  }

  int num_qubits() const { return static_cast<int>(factors.size()); }
  char at(int q) const { return factors[static_cast<std::size_t>(q)]; }

  std::string letters() const { return {factors.rbegin(), factors.rend()}; }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int q = 0; q < num_qubits(); ++q)
      if (at(q) != 'I') s.push_back(q);
    return s;
  }

  int count(char letter) const {
    return static_cast<int>(std::count(factors.begin(), factors.end(), letter));
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Parity expectation from counts: each outcome contributes +1 when the
/// bits at `support` (key positions, 0 = rightmost) have even parity and -1
/// otherwise, weighted by frequency.
inline double expectation(const CountsHistogram& counts, const std::vector<int>& support) {
  if (counts.empty()) throw std::domain_error("expectation of an empty histogram");
  for (int b : support)
    if (b < 0 || b >= counts.num_bits()) throw std::out_of_range("support bit out of range");
  double acc = 0.0;
  for (const auto& [key, n] : counts.counts()) {
    const std::size_t idx = bitstring_index(key);
    int parity = 0;
    for (int b : support) parity ^= static_cast<int>((idx >> b) & 1U);
    acc += (parity ? -1.0 : 1.0) * static_cast<double>(n);
  }
  return acc / static_cast<double>(counts.shots());
}

inline double expectation(const CountsHistogram& counts) {
  std::vector<int> all(static_cast<std::size_t>(counts.num_bits()));
  for (int b = 0; b < counts.num_bits(); ++b) all[static_cast<std::size_t>(b)] = b;
  return expectation(counts, all);
}

/// Standard error of a +-1 parity estimator with mean `value` over `shots`.
inline double parity_standard_error(double value, std::uint64_t shots) {
  return std::sqrt(std::max(0.0, 1.0 - value * value) / static_cast<double>(shots));
}

/// <psi| P |psi> computed directly on the amplitudes, coefficient included.
inline double expectation_exact(const StateVector& state, const PauliString& pauli) {
  if (pauli.num_qubits() != state.num_qubits())
    throw std::invalid_argument("Pauli string width does not match the state");
  std::size_t flip = 0;
  std::size_t phase_mask = 0;  // qubits contributing a sign from Z or Y
  int y_count = 0;
  for (int q = 0; q < pauli.num_qubits(); ++q) {
    const char c = pauli.at(q);
    if (c == 'X' || c == 'Y') flip |= std::size_t{1} << q;
    if (c == 'Z' || c == 'Y') phase_mask |= std::size_t{1} << q;
    if (c == 'Y') ++y_count;
  }
  // P|i> = i^{#Y} (-1)^{popcount(i & phase_mask)} |i ^ flip>
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex global = kIPow[y_count % 4];
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const double sign = (std::popcount(i & phase_mask) & 1) ? -1.0 : 1.0;
    acc += std::conj(state[i ^ flip]) * state[i] * sign;
  }
  return pauli.coefficient * (global * acc).real();
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Appends the basis rotation for every non-identity factor, executes the
/// circuit on `device`, and returns coefficient * parity expectation.
inline Estimate measure_pauli(const Circuit& prep, const PauliString& pauli, std::uint64_t shots,
                              std::uint64_t seed, const Device& device = {}) {
  if (prep.has_measurements()) throw std::invalid_argument("measure_pauli: preparation already measures");
  if (pauli.num_qubits() != prep.num_qubits())
    throw std::invalid_argument("measure_pauli: Pauli string width does not match the circuit");
  const auto support = pauli.support();
  if (support.empty()) return {pauli.coefficient, 0.0};

  Circuit c = prep;
  for (std::size_t k = 0; k < support.size(); ++k) {
    const char f = pauli.at(support[k]);
    c.measure(support[k], static_cast<int>(k), f == 'X' ? Basis::X : f == 'Y' ? Basis::Y : Basis::Z);
  }
  const auto counts = execute(c, device, shots, seed);
  const double e = expectation(counts);
  return {pauli.coefficient * e, std::abs(pauli.coefficient) * parity_standard_error(e, shots)};
}

inline Estimate measure_pauli(const Circuit& prep, const PauliString& pauli, std::uint64_t shots,
                              std::uint64_t seed, const NoiseModel& model) {
  return measure_pauli(prep, pauli, shots, seed, Device{std::nullopt, model});
}

// ---------------------------------------------------------------------------
// Mermin polynomials

struct MerminPolynomial {
  int n = 3;
  std::vector<PauliString> terms;
  double lr_bound = 0.0;
  double qm_value = 0.0;
};

namespace mermin_detail {

// Sign of the terms with k sigma_y factors. Odd n uses Im prod(X + iY); n=4
// uses Re + Im, whose maximum sits on (|0000> + e^{i pi/4}|1111>)/sqrt2.
inline int term_sign(int n, int k) {
  if (n % 2 == 1) return (k % 2 == 0) ? 0 : ((k / 2) % 2 == 0 ? 1 : -1);
  switch (k % 4) {
    case 0: return 1;
    case 1: return 1;
    case 2: return -1;
    default: return -1;
  }
}

}  // namespace mermin_detail

/// Mermin polynomial for n in {3, 4, 5}. Terms are grouped by sigma_y count;
/// within a group, Y on higher qubits comes first (YXX, XYX, XXY).
inline MerminPolynomial mermin_polynomial(int n) {
  MerminPolynomial m;
  m.n = n;
  switch (n) {
    case 3: m.lr_bound = 2.0; m.qm_value = 4.0; break;
    case 4: m.lr_bound = 4.0; m.qm_value = 8.0 * std::numbers::sqrt2; break;
    case 5: m.lr_bound = 4.0; m.qm_value = 16.0; break;
    default: throw std::invalid_argument("Mermin polynomial defined for n = 3, 4, 5 only, got " + std::to_string(n));
  }
  for (int k = 0; k <= n; ++k) {
    const int sign = mermin_detail::term_sign(n, k);
    if (sign == 0) continue;
    // Masks with k bits set, in decreasing order so high-qubit Ys come first.
    for (int mask = (1 << n) - 1; mask >= 0; --mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != k) continue;
      PauliString p;
      p.coefficient = sign;
      p.factors.resize(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) p.factors[static_cast<std::size_t>(q)] = ((mask >> q) & 1) ? 'Y' : 'X';
      m.terms.push_back(p);
    }
  }
  return m;
}

inline double mermin_exact(const MerminPolynomial& poly, const StateVector& state) {
  double acc = 0.0;
  for (const auto& t : poly.terms) acc += expectation_exact(state, t);
  return acc;
}

enum class MerminMode { PerTerm, Symmetric };

struct MerminEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<std::pair<std::string, Estimate>> measured;  // term letters -> estimate (coefficient included)
};

/// Sampled <M_n>. PerTerm runs one circuit per term. Symmetric runs one
/// representative per sigma_y-count class and scales it by the class size,
/// assuming invariance under qubit exchange. Errors add in quadrature.
inline MerminEstimate evaluate_mermin(const MerminPolynomial& poly, const Circuit& prep, MerminMode mode,
                                      std::uint64_t shots, std::uint64_t seed, const Device& device = {}) {
  if (prep.num_qubits() != poly.n)
    throw std::invalid_argument("evaluate_mermin: preparation has " + std::to_string(prep.num_qubits()) +
                                " qubits, polynomial needs " + std::to_string(poly.n));
  MerminEstimate out;
  double var = 0.0;
  if (mode == MerminMode::PerTerm) {
    for (std::size_t i = 0; i < poly.terms.size(); ++i) {
      const auto e = measure_pauli(prep, poly.terms[i], shots, derive_seed(seed, {i}), device);
      out.value += e.value;
      var += e.std_error * e.std_error;
      out.measured.emplace_back(poly.terms[i].letters(), e);
    }
  } else {
    for (int k = 0; k <= poly.n; ++k) {
      std::vector<const PauliString*> cls;
      for (const auto& t : poly.terms)
        if (t.count('Y') == k) cls.push_back(&t);
      if (cls.empty()) continue;
      const auto e = measure_pauli(prep, *cls.front(), shots, derive_seed(seed, {static_cast<std::uint64_t>(k)}), device);
      const double size = static_cast<double>(cls.size());
      out.value += size * e.value;
      var += size * size * e.std_error * e.std_error;
      out.measured.emplace_back(cls.front()->letters(), e);
    }
  }
  out.std_error = std::sqrt(var);
  return out;
}

/// GHZ-type preparation: H on the top qubit, a CX ladder downwards, then a
/// phase gate on qubit 0 giving (|0..0> + e^{i phi}|1..1>)/sqrt2 with
/// phi = pi/2 (S) for n = 3, 5 and pi/4 (T) for n = 4.
inline Circuit mermin_state_prep(int n) {
  if (n < 3 || n > 5) throw std::invalid_argument("Mermin state defined for n = 3, 4, 5 only");
  Circuit c(n);
  c.add(gates::h(n - 1));
  for (int q = n - 1; q > 0; --q) c.add(gates::cx(q, q - 1));
  c.add(n == 4 ? gates::t(0) : gates::s(0));
  return c;
}

/// (|0..0> + e^{i phi}|1..1>)/sqrt2 built directly from amplitudes.
inline StateVector ghz_state(int n, double phi) {
  StateVector s(n);
  s[0] = 1.0 / std::numbers::sqrt2;
  s[s.dimension() - 1] = std::polar(1.0 / std::numbers::sqrt2, phi);
  return s;
}

}  // namespace fiveq
