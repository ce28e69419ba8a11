#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "fiveq/noise.hpp"
#include "fiveq/report.hpp"
#include "fiveq/rng.hpp"

namespace fiveq {

/// Shared knobs for every experiment. Run r draws from derive_seed(seed, r).
struct RunSettings {
  std::uint64_t shots = 8192;
  int runs = 5;
  std::uint64_t seed = 2017;
  Device device;

  void check() const {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    device.noise.check();
  }
  std::uint64_t run_seed(int r) const { return derive_seed(seed, {static_cast<std::uint64_t>(r)}); }
};

namespace experiment_detail {

inline ExperimentReport blank_report(const std::string& name, const RunSettings& s) {
  ExperimentReport r;
  r.experiment = name;
  r.backend = s.device.backend_name();
  if (!s.device.noise.is_ideal()) r.noise = s.device.noise;
  r.seed = s.seed;
  r.runs = s.runs;
  r.shots = s.shots;
  return r;
}

inline ReportEntry make_entry(std::string name, const std::vector<double>& per_run, std::optional<double> ideal,
                              std::optional<double> reference = std::nullopt,
                              std::optional<double> reference_std = std::nullopt) {
  const auto a = aggregate(per_run);
  return {std::move(name), a.value, a.std, ideal, reference, reference_std};
}

}  // namespace experiment_detail

}  // namespace fiveq
