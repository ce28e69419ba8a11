#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/circuit.hpp"
#include "fiveq/rng.hpp"
#include "fiveq/sampling.hpp"
#include "fiveq/state.hpp"
#include "fiveq/transpiler/coupling_map.hpp"
#include "fiveq/transpiler/route.hpp"

namespace fiveq {

/// Homogeneous phenomenological noise: a uniformly random Pauli after a gate
/// on each touched qubit (probability p1 for 1-qubit gates, p2 per operand
/// of a CX) and a symmetric classical flip of each readout bit.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double p_read = 0.0;

  NoiseModel() = default;
  NoiseModel(double p1_, double p2_, double p_read_) : p1(p1_), p2(p2_), p_read(p_read_) { check(); }

  void check() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p1) || !in_unit(p2) || !in_unit(p_read))
      throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  }

  bool is_ideal() const { return p1 == 0.0 && p2 == 0.0 && p_read == 0.0; }
  double gate_error(const GateInstance& g) const { return g.arity() == 2 ? p2 : p1; }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

// Stream ids under a sampling seed. Stream 0 is the seed itself so the
// readout draws of a noiseless run match ideal sample() exactly.
namespace noise_streams {
inline constexpr std::uint64_t kPauli = 1;
inline constexpr std::uint64_t kReadout = 2;
}  // namespace noise_streams

/// Trajectory sampler for a measured circuit starting from |0...0>.
///
/// Each shot first draws its Pauli fault pattern. Shots with the same
/// pattern share one state-vector simulation, then draw their readouts from
/// that trajectory's Born distribution; readout flips come last.
inline CountsHistogram noisy_sample(const Circuit& circuit, const NoiseModel& model,
                                    std::uint64_t shots, std::uint64_t seed) {
  model.check();
  if (shots == 0) throw std::invalid_argument("noisy_sample: shots must be positive");
  if (!circuit.has_measurements()) throw std::invalid_argument("noisy_sample: circuit has no measurements");

  const auto lowered = lower_measurements(circuit);
  const auto& gates = lowered.circuit.gates();
  const int width = static_cast<int>(lowered.measured.size());

  // A fault is (gate index, qubit, pauli in {1=X, 2=Y, 3=Z}) packed into 64 bits.
  using Pattern = std::vector<std::uint64_t>;
  std::map<Pattern, std::uint64_t> groups;
  if (model.p1 == 0.0 && model.p2 == 0.0) {
    groups[{}] = shots;
  } else {
    Rng rng(derive_seed(seed, {noise_streams::kPauli}));
    Pattern pattern;
    for (std::uint64_t s = 0; s < shots; ++s) {
      pattern.clear();
      for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        const auto& g = gates[gi];
        const double p = model.gate_error(g);
        if (p == 0.0) continue;
        for (int k = 0; k < g.arity(); ++k) {
          if (!rng.bernoulli(p)) continue;
          const auto pauli = 1 + rng.below(3);
          pattern.push_back((static_cast<std::uint64_t>(gi) << 16) |
                            (static_cast<std::uint64_t>(g.qubits[k]) << 4) | pauli);
        }
      }
      ++groups[pattern];
    }
  }

  Rng readout_rng(seed);
  std::vector<std::uint32_t> outcomes;
  outcomes.reserve(shots);
  for (const auto& [pattern, count] : groups) {
    StateVector state(lowered.circuit.num_qubits());
    auto fault = pattern.begin();
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
      state.apply(gates[gi]);
      for (; fault != pattern.end() && (*fault >> 16) == gi; ++fault) {
        const int q = static_cast<int>((*fault >> 4) & 0xFFF);
        switch (*fault & 0xF) {
          case 1: state.apply(gates::x(q)); break;
          case 2: state.apply(gates::y(q)); break;
          default: state.apply(gates::z(q)); break;
        }
      }
    }
    const auto dist = marginal_distribution(state, lowered.measured);
    draw_outcomes(dist, count, readout_rng, outcomes);
  }

  if (model.p_read > 0.0) {
    Rng flip_rng(derive_seed(seed, {noise_streams::kReadout}));
    for (auto& o : outcomes)
      for (int b = 0; b < width; ++b)
        if (flip_rng.bernoulli(model.p_read)) o ^= (1U << b);
  }
  return histogram_from_outcomes(width, outcomes);
}

/// Execution target: optional connectivity plus a noise model.
struct Device {
  std::optional<CouplingMap> coupling;
  NoiseModel noise;

  std::string backend_name() const { return coupling ? coupling->name() : std::string("all-to-all"); }
};

/// Routes onto the device (when it has a coupling map) and samples.
inline CountsHistogram execute(const Circuit& circuit, const Device& device, std::uint64_t shots,
                               std::uint64_t seed) {
  if (device.coupling) return noisy_sample(route(circuit, *device.coupling).circuit, device.noise, shots, seed);
  return noisy_sample(circuit, device.noise, shots, seed);
}

}  // namespace fiveq
