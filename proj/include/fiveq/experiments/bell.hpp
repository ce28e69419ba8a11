#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fiveq/experiments/common.hpp"
#include "fiveq/observables.hpp"

namespace fiveq {

/// Measurement directions in the X-Y plane: a = 0, b = pi/3, c = 2 pi/3.
namespace bell_angles {
inline constexpr double a = 0.0;
inline constexpr double b = std::numbers::pi / 3.0;
inline constexpr double c = 2.0 * std::numbers::pi / 3.0;
}  // namespace bell_angles

struct BellSetting {
  std::string name;  // "ab", "ac", "bc"
  double theta1;     // direction measured on qubit 1
  double theta0;     // direction measured on qubit 0
};

inline const std::array<BellSetting, 3>& bell_settings() {
  static const std::array<BellSetting, 3> k{{{"ab", bell_angles::a, bell_angles::b},
                                             {"ac", bell_angles::a, bell_angles::c},
                                             {"bc", bell_angles::b, bell_angles::c}}};
  return k;
}

/// |psi-> = (|01> - |10>)/sqrt2 prepared from |11>.
inline Circuit singlet_circuit() {
  Circuit c(2);
  c.add({gates::x(0), gates::x(1), gates::h(1), gates::cx(1, 0)});
  return c;
}

/// Singlet preparation followed by Rz(-theta) on each qubit, so that an X
/// measurement reads the spin along (cos theta, sin theta, 0).
inline Circuit bell_rotated_circuit(const BellSetting& s) {
  Circuit c = singlet_circuit();
  if (s.theta1 != 0.0) c.add(gates::rz(1, -s.theta1));
  if (s.theta0 != 0.0) c.add(gates::rz(0, -s.theta0));
  return c;
}

inline Circuit bell_measurement_circuit(const BellSetting& s) {
  Circuit c = bell_rotated_circuit(s);
  c.measure(1, 1, Basis::X);
  c.measure(0, 0, Basis::X);
  return c;
}

/// Exact correlation <(sigma.n1) x (sigma.n0)> from the state vector.
inline double bell_correlation_exact(const BellSetting& s) {
  return expectation_exact(run_circuit(bell_rotated_circuit(s)), PauliString::parse("XX"));
}

struct BellResult {
  ValueWithError ab, ac, bc;  // mean and spread over runs
  ValueWithError statistic;   // |ab - ac| - bc, run spreads propagated
  double std_error = 0.0;     // shot-noise standard error of the statistic's mean
};

inline BellResult bell_exact() {
  BellResult r;
  r.ab = {bell_correlation_exact(bell_settings()[0]), 0.0};
  r.ac = {bell_correlation_exact(bell_settings()[1]), 0.0};
  r.bc = {bell_correlation_exact(bell_settings()[2]), 0.0};
  r.statistic = bell_statistic(r.ab, r.ac, r.bc);
  return r;
}

/// Sampled Bell test. Each run measures the three settings; the statistic's
/// std_error combines the binomial parity errors of the three run-averaged
/// correlations.
inline BellResult bell_test(const RunSettings& s) {
  s.check();
  std::array<std::vector<double>, 3> per_run;
  for (int r = 0; r < s.runs; ++r)
    for (std::size_t k = 0; k < 3; ++k) {
      const auto hist = execute(bell_measurement_circuit(bell_settings()[k]), s.device, s.shots,
                                derive_seed(s.run_seed(r), {k}));
      per_run[k].push_back(expectation(hist));
    }
  BellResult out;
  out.ab = aggregate(per_run[0]);
  out.ac = aggregate(per_run[1]);
  out.bc = aggregate(per_run[2]);
  out.statistic = bell_statistic(out.ab, out.ac, out.bc);
  const auto total = s.shots * static_cast<std::uint64_t>(s.runs);
  out.std_error = error_propagation({{0.0, parity_standard_error(out.ab.value, total)},
                                     {0.0, parity_standard_error(out.ac.value, total)},
                                     {0.0, parity_standard_error(out.bc.value, total)}})
                      .std;
  return out;
}

inline ExperimentReport bell_report(const RunSettings& s) {
  auto report = experiment_detail::blank_report("bell", s);
  const auto exact = bell_exact();
  const auto res = bell_test(s);
  report.entries.push_back({"P(a,b)", res.ab.value, res.ab.std, exact.ab.value, -0.392, 0.014});
  report.entries.push_back({"P(a,c)", res.ac.value, res.ac.std, exact.ac.value, 0.401, 0.009});
  report.entries.push_back({"P(b,c)", res.bc.value, res.bc.std, exact.bc.value, -0.389, 0.012});
  report.entries.push_back({"statistic", res.statistic.value, res.statistic.std, exact.statistic.value, 1.182, 0.020});
  report.entries.push_back({"statistic_std_error", res.std_error, 0.0, std::nullopt, std::nullopt, std::nullopt});
  report.flags["violation"] = res.statistic.value - 3.0 * std::max(res.statistic.std, res.std_error) > 1.0;
  return report;
}

}  // namespace fiveq
