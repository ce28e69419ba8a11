#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiveq/rng.hpp"
#include "fiveq/state.hpp"

namespace fiveq {

/// Bitstring -> count map produced by shot sampling. Keys have exactly
/// `num_bits()` characters; the highest classical bit is printed first.
class CountsHistogram {
 public:
  CountsHistogram() = default;
  explicit CountsHistogram(int num_bits) : num_bits_(num_bits) {
    if (num_bits < 1) throw std::invalid_argument("histogram needs at least one bit");
  }

  int num_bits() const { return num_bits_; }
  std::uint64_t shots() const { return shots_; }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  bool empty() const { return shots_ == 0; }

  void add(const std::string& key, std::uint64_t n = 1) {
    if (key.size() != static_cast<std::size_t>(num_bits_))
      throw std::invalid_argument("histogram key '" + key + "' has wrong width");
    if (key.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("histogram key '" + key + "' is not a bitstring");
    if (n == 0) return;
    counts_[key] += n;
    shots_ += n;
  }

  void add_index(std::size_t index, std::uint64_t n = 1) { add(index_bitstring(index, num_bits_), n); }

  std::uint64_t count(const std::string& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  double frequency(const std::string& key) const {
    if (shots_ == 0) throw std::domain_error("frequency of an empty histogram");
    return static_cast<double>(count(key)) / static_cast<double>(shots_);
  }

  /// Frequencies indexed by the integer value of each key.
  std::vector<double> distribution() const {
    if (shots_ == 0) throw std::domain_error("distribution of an empty histogram");
    std::vector<double> d(std::size_t{1} << num_bits_, 0.0);
    for (const auto& [key, n] : counts_)
      d[bitstring_index(key)] = static_cast<double>(n) / static_cast<double>(shots_);
    return d;
  }

  CountsHistogram& operator+=(const CountsHistogram& other) {
    if (other.num_bits_ != num_bits_) throw std::invalid_argument("merging histograms of different width");
    for (const auto& [key, n] : other.counts_) add(key, n);
    return *this;
  }

  friend bool operator==(const CountsHistogram&, const CountsHistogram&) = default;

 private:
  int num_bits_ = 1;
  std::uint64_t shots_ = 0;
  std::map<std::string, std::uint64_t> counts_;
};

/// Born distribution over `measured` (bit k of the result index is the
/// value of qubit measured[k]).
inline std::vector<double> marginal_distribution(const StateVector& state,
                                                 std::span<const int> measured) {
  const int n = state.num_qubits();
  for (std::size_t a = 0; a < measured.size(); ++a) {
    if (measured[a] < 0 || measured[a] >= n)
      throw std::out_of_range("measured qubit " + std::to_string(measured[a]) + " out of range");
    for (std::size_t b = 0; b < a; ++b)
      if (measured[a] == measured[b])
        throw std::invalid_argument("qubit " + std::to_string(measured[a]) + " measured twice");
  }
  std::vector<double> dist(std::size_t{1} << measured.size(), 0.0);
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    std::size_t key = 0;
    for (std::size_t k = 0; k < measured.size(); ++k)
      key |= ((i >> measured[k]) & 1U) << k;
    dist[key] += std::norm(state[i]);
  }
  return dist;
}

/// Inverse-CDF draws of `shots` outcome indices from `dist`.
inline void draw_outcomes(std::span<const double> dist, std::uint64_t shots, Rng& rng,
                          std::vector<std::uint32_t>& out) {
  std::vector<double> cdf(dist.size());
  std::partial_sum(dist.begin(), dist.end(), cdf.begin());
  const double total = cdf.back();
  if (!(total > 0.0)) throw std::domain_error("cannot sample from a zero distribution");
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    while (dist[idx] == 0.0 && idx > 0) --idx;  // u landed on a rounding edge
    out.push_back(static_cast<std::uint32_t>(idx));
  }
}

inline CountsHistogram histogram_from_outcomes(int num_bits, std::span<const std::uint32_t> outcomes) {
  std::vector<std::uint64_t> tally(std::size_t{1} << num_bits, 0);
  for (auto o : outcomes) ++tally[o];
  CountsHistogram h(num_bits);
  for (std::size_t i = 0; i < tally.size(); ++i) h.add_index(i, tally[i]);
  return h;
}

/// Draws `shots` independent computational-basis readouts of `measured`.
/// Deterministic in `seed`.
inline CountsHistogram sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed,
                              std::span<const int> measured) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be positive");
  if (measured.empty()) throw std::invalid_argument("sample: no qubits to measure");
  const auto dist = marginal_distribution(state, measured);
  Rng rng(seed);
  std::vector<std::uint32_t> outcomes;
  outcomes.reserve(shots);
  draw_outcomes(dist, shots, rng, outcomes);
  return histogram_from_outcomes(static_cast<int>(measured.size()), outcomes);
}

inline CountsHistogram sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed,
                              std::initializer_list<int> measured) {
  return sample(state, shots, seed, std::span<const int>(measured.begin(), measured.size()));
}

/// Executes a measured circuit from |0...0> with ideal gates.
inline CountsHistogram sample(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed) {
  if (!circuit.has_measurements()) throw std::invalid_argument("sample: circuit has no measurements");
  const auto lowered = lower_measurements(circuit);
  return sample(run_circuit(lowered.circuit), shots, seed, lowered.measured);
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

inline double total_variation(const CountsHistogram& a, const CountsHistogram& b) {
  return total_variation(a.distribution(), b.distribution());
}

}  // namespace fiveq
