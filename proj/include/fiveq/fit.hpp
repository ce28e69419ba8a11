#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/noise.hpp"

namespace fiveq {

/// A measured circuit and the outcome distribution observed for it,
/// indexed by the integer value of the outcome key.
struct FitTarget {
  std::string label;
  Circuit circuit;
  std::vector<double> observed;
};

struct NoiseGrid {
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<double> p_read;

  std::size_t size() const { return p1.size() * p2.size() * p_read.size(); }
};

struct FitOptions {
  std::uint64_t shots = 8192;
  std::uint64_t seed = 1;
  std::optional<CouplingMap> coupling;
};

struct FitResult {
  NoiseModel model;
  double residual = 0.0;  // RMS over all target cells
  std::vector<std::vector<double>> simulated;  // at the best model, per target
  std::size_t evaluated = 0;
};

/// RMS deviation between simulated and observed distributions over every
/// cell of every target. Target i is sampled with the seed derived from
/// (seed, i) at every grid point, so models are compared on common draws.
inline double fit_residual(const std::vector<FitTarget>& targets, const std::vector<Circuit>& prepared,
                           const NoiseModel& model, const FitOptions& opt,
                           std::vector<std::vector<double>>* simulated = nullptr) {
  double sq = 0.0;
  std::size_t cells = 0;
  if (simulated) simulated->clear();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto hist = noisy_sample(prepared[i], model, opt.shots, derive_seed(opt.seed, {i}));
    const auto dist = hist.distribution();
    if (dist.size() != targets[i].observed.size())
      throw std::invalid_argument("fit target '" + targets[i].label + "' has " +
                                  std::to_string(targets[i].observed.size()) + " cells, circuit yields " +
                                  std::to_string(dist.size()));
    for (std::size_t k = 0; k < dist.size(); ++k) {
      const double d = dist[k] - targets[i].observed[k];
      sq += d * d;
    }
    cells += dist.size();
    if (simulated) simulated->push_back(dist);
  }
  return std::sqrt(sq / static_cast<double>(cells));
}

/// Exhaustive grid search for the noise model that best reproduces the
/// targets. The first minimum in (p1, p2, p_read) order wins ties.
inline FitResult fit_noise(const std::vector<FitTarget>& targets, const NoiseGrid& grid,
                           const FitOptions& opt = {}) {
  if (targets.empty()) throw std::invalid_argument("fit_noise: no targets");
  if (grid.size() == 0) throw std::invalid_argument("fit_noise: empty grid");

  std::vector<Circuit> prepared;
  for (const auto& t : targets)
    prepared.push_back(opt.coupling ? route(t.circuit, *opt.coupling).circuit : t.circuit);

  FitResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (double p1 : grid.p1)
    for (double p2 : grid.p2)
      for (double pr : grid.p_read) {
        const NoiseModel model(p1, p2, pr);
        const double r = fit_residual(targets, prepared, model, opt);
        ++best.evaluated;
        if (r < best.residual) {
          best.residual = r;
          best.model = model;
        }
      }
  fit_residual(targets, prepared, best.model, opt, &best.simulated);
  return best;
}

}  // namespace fiveq
