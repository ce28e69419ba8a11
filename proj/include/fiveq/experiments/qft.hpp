#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fiveq/experiments/common.hpp"
#include "fiveq/transpiler/rewrites.hpp"

namespace fiveq {

inline constexpr int kMaxQftQubits = 5;

/// Product-form QFT. Qubit q of QFT|j> carries the phase 2 pi (j mod 2^m)/2^m
/// with m = n - q, so qubit 0 holds the full binary fraction 0.j_{n-1}..j_0.
/// The usual H + controlled-phase cascade leaves that order reversed; the
/// terminal SWAPs put it back.
inline Circuit qft_circuit(int n) {
  if (n < 1 || n > kMaxQftQubits)
    throw std::invalid_argument("qft_circuit: n must be in 1.." + std::to_string(kMaxQftQubits));
  Circuit c(n);
  for (int j = n - 1; j >= 0; --j) {
    c.add(gates::h(j));
    for (int k = j - 1; k >= 0; --k) c.add(decompose_crz(k, j, std::numbers::pi / std::ldexp(1.0, j - k)));
  }
  for (int i = 0; i < n / 2; ++i) c.add(swap_decomposition(i, n - 1 - i));
  return c;
}

namespace qft_detail {

inline void check_input(const std::string& input) {
  if (input.empty() || input.size() > static_cast<std::size_t>(kMaxQftQubits))
    throw std::invalid_argument("QFT input must have 1.." + std::to_string(kMaxQftQubits) + " bits");
  for (char ch : input)
    if (ch != '0' && ch != '1') throw std::invalid_argument("QFT input must be a bitstring, got '" + input + "'");
}

// Qubit q after QFT|j> is (|0> + e^{i 2 pi r / 2^m}|1>)/sqrt2, r = j mod 2^m.
// Rotating by lambda = k pi - 2 pi r / 2^m lands on |+> (k even) or |->
// (k odd), with k the closest integer to 2 r / 2^m (ties round up).
struct Unwind {
  double lambda;
  int bit;
};

inline Unwind unwind(std::size_t j, int n, int q) {
  const int m = n - q;
  const std::size_t mod = std::size_t{1} << m;
  const std::size_t r = j % mod;
  const std::size_t k = (4 * r + mod) / (2 * mod);
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(mod);
  return {static_cast<double>(k) * std::numbers::pi - phase, static_cast<int>(k % 2)};
}

}  // namespace qft_detail

/// Prepares |input>, applies the QFT, unwinds each qubit onto the X basis and
/// measures qubit q into c_q.
inline Circuit qft_verification_circuit(const std::string& input) {
  qft_detail::check_input(input);
  const int n = static_cast<int>(input.size());
  const std::size_t j = bitstring_index(input);
  Circuit c(n);
  for (int q = 0; q < n; ++q)
    if ((j >> q) & 1U) c.add(gates::x(q));
  c.add(qft_circuit(n).gates());
  for (int q = 0; q < n; ++q) {
    const double lambda = qft_detail::unwind(j, n, q).lambda;
    if (std::abs(canonical_angle(lambda)) > 1e-15) c.add(gates::rz(q, lambda));
  }
  for (int q = 0; q < n; ++q) c.measure(q, q, Basis::X);
  return c;
}

/// The deterministic outcome of qft_verification_circuit(input).
inline std::string qft_expected_outcome(const std::string& input) {
  qft_detail::check_input(input);
  const int n = static_cast<int>(input.size());
  const std::size_t j = bitstring_index(input);
  std::size_t out = 0;
  for (int q = 0; q < n; ++q) out |= static_cast<std::size_t>(qft_detail::unwind(j, n, q).bit) << q;
  return index_bitstring(out, n);
}

inline CountsHistogram qft_verification(const std::string& input, std::uint64_t shots, std::uint64_t seed,
                                        const Device& device = {}) {
  return execute(qft_verification_circuit(input), device, shots, seed);
}

namespace qft_reference {
inline constexpr double k000[8] = {0.748, 0.076, 0.053, 0.020, 0.055, 0.025, 0.016, 0.008};
inline constexpr double k011[8] = {0.042, 0.104, 0.026, 0.043, 0.078, 0.615, 0.020, 0.071};
}  // namespace qft_reference

/// Entries "P[<input>-><outcome>]" over all 2^n outcomes for each input.
inline ExperimentReport qft_report(const RunSettings& s, const std::vector<std::string>& inputs = {"000", "011"}) {
  using namespace experiment_detail;
  s.check();
  if (inputs.empty()) throw std::invalid_argument("qft_report: no inputs");
  auto report = blank_report("qft", s);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& in = inputs[i];
    const int n = static_cast<int>(in.size());
    const auto expected = qft_expected_outcome(in);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<double>> freq(dim);
    for (int r = 0; r < s.runs; ++r) {
      const auto hist = qft_verification(in, s.shots, derive_seed(s.run_seed(r), {i}), s.device);
      const auto dist = hist.distribution();
      for (std::size_t o = 0; o < dim; ++o) freq[o].push_back(dist[o]);
    }
    const double* reference = in == "000" ? qft_reference::k000 : in == "011" ? qft_reference::k011 : nullptr;
    for (std::size_t o = 0; o < dim; ++o) {
      const auto key = index_bitstring(o, n);
      std::optional<double> p;
      if (reference) p = reference[o];
      report.entries.push_back(make_entry("P[" + in + "->" + key + "]", freq[o], key == expected ? 1.0 : 0.0, p));
    }
  }
  return report;
}

}  // namespace fiveq
