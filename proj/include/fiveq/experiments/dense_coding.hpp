#pragma once

#include <array>
#include <string>
#include <vector>

#include "fiveq/experiments/common.hpp"
#include "fiveq/transpiler/rewrites.hpp"

namespace fiveq {

inline void check_message(const std::string& message) {
  if (message.size() != 2 || (message[0] != '0' && message[0] != '1') || (message[1] != '0' && message[1] != '1'))
    throw std::invalid_argument("dense coding message must be one of 00, 01, 10, 11, got '" + message + "'");
}

/// Four-qubit dense coding. q3, q2 hold Alice's classical bits x1, x0; q1 is
/// Alice's half of the pair and q0 is Bob's. Alice applies X^{x0} Z^{x1} as
/// controlled operations, Bob disentangles and reads (q1, q0) into (c1, c0).
inline Circuit dense_coding_circuit(const std::string& message) {
  check_message(message);
  Circuit c(4);
  if (message[0] == '1') c.add(gates::x(3));
  if (message[1] == '1') c.add(gates::x(2));
  c.add(gates::h(1));
  c.add(gates::cx(1, 0));
  c.add(gates::cx(2, 1));
  c.add(cz_decomposition(3, 1));
  c.add(gates::cx(1, 0));
  c.add(gates::h(1));
  c.measure(1, 1);
  c.measure(0, 0);
  return c;
}

inline CountsHistogram dense_coding(const std::string& message, std::uint64_t shots, std::uint64_t seed,
                                    const Device& device = {}) {
  return execute(dense_coding_circuit(message), device, shots, seed);
}

inline const std::array<std::string, 4>& two_bit_strings() {
  static const std::array<std::string, 4> k{"00", "01", "10", "11"};
  return k;
}

namespace dense_coding_reference {
// Hardware frequencies, rows = message, columns = decoded outcome 00..11.
inline constexpr double kMean[4][4] = {{0.826, 0.041, 0.111, 0.023},
                                       {0.114, 0.744, 0.039, 0.101},
                                       {0.159, 0.025, 0.778, 0.038},
                                       {0.044, 0.097, 0.114, 0.746}};
inline constexpr double kStd[4][4] = {{0.003, 0.002, 0.004, 0.003},
                                      {0.007, 0.005, 0.003, 0.006},
                                      {0.025, 0.001, 0.025, 0.002},
                                      {0.005, 0.010, 0.003, 0.013}};
}  // namespace dense_coding_reference

/// All four messages, every run; entries "P[<message>-><outcome>]".
inline ExperimentReport dense_coding_report(const RunSettings& s) {
  using namespace experiment_detail;
  s.check();
  auto report = blank_report("dense-coding", s);
  const auto& keys = two_bit_strings();
  std::vector<std::vector<std::vector<double>>> freq(4, std::vector<std::vector<double>>(4));
  for (int r = 0; r < s.runs; ++r)
    for (std::size_t m = 0; m < 4; ++m) {
      const auto hist = dense_coding(keys[m], s.shots, derive_seed(s.run_seed(r), {m}), s.device);
      for (std::size_t o = 0; o < 4; ++o) freq[m][o].push_back(hist.frequency(keys[o]));
    }
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t o = 0; o < 4; ++o)
      report.entries.push_back(make_entry("P[" + keys[m] + "->" + keys[o] + "]", freq[m][o], m == o ? 1.0 : 0.0,
                                          dense_coding_reference::kMean[m][o], dense_coding_reference::kStd[m][o]));
  std::vector<double> success(static_cast<std::size_t>(s.runs), 0.0);
  for (std::size_t r = 0; r < success.size(); ++r)
    for (std::size_t m = 0; m < 4; ++m) success[r] += freq[m][m][r] / 4.0;
  report.entries.push_back(make_entry("mean_success", success, 1.0, (0.826 + 0.744 + 0.778 + 0.746) / 4.0));
  return report;
}

}  // namespace fiveq
