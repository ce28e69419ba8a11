#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fiveq/experiments/common.hpp"
#include "fiveq/experiments/primes.hpp"
#include "fiveq/observables.hpp"
#include "fiveq/transpiler/rewrites.hpp"

namespace fiveq {

inline constexpr int kMaxPrimeStateQubits = 12;

/// Equal superposition of the primes below 2^n, built from amplitudes.
inline StateVector prime_state_direct(int n) {
  if (n < 2 || n > kMaxPrimeStateQubits)
    throw std::invalid_argument("prime_state_direct: n must be in 2.." + std::to_string(kMaxPrimeStateQubits));
  const std::uint64_t top = (std::uint64_t{1} << n) - 1;
  const auto is_prime = prime_sieve(top);
  std::vector<Complex> amps(std::size_t{1} << n);
  double count = 0.0;
  for (std::uint64_t k = 0; k <= top; ++k)
    if (is_prime[k]) count += 1.0;
  for (std::uint64_t k = 0; k <= top; ++k)
    if (is_prime[k]) amps[k] = 1.0 / std::sqrt(count);
  return StateVector(n, std::move(amps));
}

/// |p3> on qubits 2..0 with qubit 3 as an ancilla that stays in |0>.
/// X q0 and H on q1, q2 give the odd numbers 1, 3, 5, 7; a Toffoli
/// conditioned on q2 = q1 = 0 sends 1 to 0, and a CX conditioned on q0 = 0
/// sends 0 to 2.
inline Circuit prime_state_circuit() {
  Circuit c(4);
  c.add({gates::x(0), gates::h(1), gates::h(2)});
  c.add(zero_controlled_toffoli(2, 1, 0));
  c.add(zero_controlled_cx(0, 1));
  return c;
}

/// Prime-state circuit with the three data qubits read out into c2..c0.
inline Circuit prime_state_measured() {
  Circuit c = prime_state_circuit();
  for (int q = 2; q >= 0; --q) c.measure(q, q);
  return c;
}

inline const std::array<std::string, 4>& prime_outcomes() {
  static const std::array<std::string, 4> k{"010", "011", "101", "111"};
  return k;
}

/// <sigma_z^1>, <sigma_x^1> and <sigma_x^2 sigma_x^1 + sigma_y^2 sigma_y^1>
/// on an n-qubit state, qubit 1 being the second least significant.
struct PrimeObservables {
  Estimate sz1;
  Estimate sx1;
  Estimate xx_yy;
};

namespace prime_detail {
inline PauliString on_qubits(int n, std::initializer_list<std::pair<int, char>> factors) {
  PauliString p;
  p.factors.assign(static_cast<std::size_t>(n), 'I');
  for (auto [q, c] : factors) p.factors[static_cast<std::size_t>(q)] = c;
  return p;
}
}  // namespace prime_detail

inline PrimeObservables prime_observables_exact(const StateVector& state) {
  using prime_detail::on_qubits;
  const int n = state.num_qubits();
  if (n < 3) throw std::invalid_argument("prime observables need at least 3 qubits");
  PrimeObservables o;
  o.sz1 = {expectation_exact(state, on_qubits(n, {{1, 'Z'}})), 0.0};
  o.sx1 = {expectation_exact(state, on_qubits(n, {{1, 'X'}})), 0.0};
  o.xx_yy = {expectation_exact(state, on_qubits(n, {{2, 'X'}, {1, 'X'}})) +
                 expectation_exact(state, on_qubits(n, {{2, 'Y'}, {1, 'Y'}})),
             0.0};
  return o;
}

/// Sampled observables on the prime-state circuit, one circuit per Pauli
/// string. The two-term sum adds its standard errors in quadrature.
inline PrimeObservables prime_observables(std::uint64_t shots, std::uint64_t seed, const Device& device = {}) {
  using prime_detail::on_qubits;
  const auto prep = prime_state_circuit();
  const int n = prep.num_qubits();
  PrimeObservables o;
  o.sz1 = measure_pauli(prep, on_qubits(n, {{1, 'Z'}}), shots, derive_seed(seed, {0}), device);
  o.sx1 = measure_pauli(prep, on_qubits(n, {{1, 'X'}}), shots, derive_seed(seed, {1}), device);
  const auto xx = measure_pauli(prep, on_qubits(n, {{2, 'X'}, {1, 'X'}}), shots, derive_seed(seed, {2}), device);
  const auto yy = measure_pauli(prep, on_qubits(n, {{2, 'Y'}, {1, 'Y'}}), shots, derive_seed(seed, {3}), device);
  o.xx_yy = {xx.value + yy.value, std::sqrt(xx.std_error * xx.std_error + yy.std_error * yy.std_error)};
  return o;
}

/// Closed forms in terms of prime counts up to N = 2^n - 1:
/// <sigma_z^1> = (pi41 - pi43 - 1)/pi, <sigma_x^1> = 2 pi2_1/pi and
/// <sigma_x sigma_x + sigma_y sigma_y> = 4 pi2_3/pi.
struct PrimeClosedForms {
  double sz1;
  double sx1;
  double xx_yy;
};

inline PrimeClosedForms prime_closed_forms(const PrimeCounts& c) {
  const double pi = static_cast<double>(c.pi);
  return {static_cast<double>(c.pi41 - c.pi43 - 1) / pi, 2.0 * static_cast<double>(c.pi2_1) / pi,
          4.0 * static_cast<double>(c.pi2_3) / pi};
}

inline ExperimentReport prime_state_report(const RunSettings& s) {
  using namespace experiment_detail;
  s.check();
  auto report = blank_report("prime-state", s);
  const auto theory = prime_closed_forms(prime_counts(7));

  std::vector<std::vector<double>> outcome(8);
  std::vector<double> prime_total;
  std::vector<double> sz1, sx1, xx_yy;
  for (int r = 0; r < s.runs; ++r) {
    const auto seed = s.run_seed(r);
    const auto hist = execute(prime_state_measured(), s.device, s.shots, derive_seed(seed, {0}));
    const auto dist = hist.distribution();
    double total = 0.0;
    for (std::size_t k = 0; k < 8; ++k) outcome[k].push_back(dist[k]);
    for (const auto& key : prime_outcomes()) total += hist.frequency(key);
    prime_total.push_back(total);
    const auto obs = prime_observables(s.shots, derive_seed(seed, {1}), s.device);
    sz1.push_back(obs.sz1.value);
    sx1.push_back(obs.sx1.value);
    xx_yy.push_back(obs.xx_yy.value);
  }

  for (std::size_t k = 0; k < 8; ++k) {
    const auto key = index_bitstring(k, 3);
    bool prime = false;
    for (const auto& p : prime_outcomes()) prime = prime || p == key;
    report.entries.push_back(make_entry("P[p3->" + key + "]", outcome[k], prime ? 0.25 : 0.0));
  }
  report.entries.push_back(make_entry("prime_outcome", prime_total, 1.0, 0.725, 0.007));
  report.entries.push_back(make_entry("sigma_z1", sz1, theory.sz1, -0.301, 0.007));
  report.entries.push_back(make_entry("sigma_x1", sx1, theory.sx1, 0.435, 0.006));
  report.entries.push_back(make_entry("xx_plus_yy", xx_yy, theory.xx_yy, 0.641, 0.022));
  const auto& z = report.entry("sigma_z1");
  report.entries.push_back({"sigma_z1_relative_error", std::abs(z.mean - theory.sz1) / std::abs(theory.sz1),
                            z.std / std::abs(theory.sz1), 0.0,
                            std::abs(-0.301 - theory.sz1) / std::abs(theory.sz1), std::nullopt});
  return report;
}

}  // namespace fiveq
