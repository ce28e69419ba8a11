#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiveq {

/// Sieve of Eratosthenes over [0, n].
inline std::vector<bool> prime_sieve(std::uint64_t n) {
  std::vector<bool> is_prime(n + 1, true);
  is_prime[0] = false;
  if (n >= 1) is_prime[1] = false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (is_prime[p])
      for (std::uint64_t m = p * p; m <= n; m += p) is_prime[m] = false;
  return is_prime;
}

/// Prime and twin-prime counts up to N. Twin pairs (p, p+2) need p+2 <= N
/// and are split by p mod 4; twin_3mod8 counts pairs with p = 3 (mod 8).
struct PrimeCounts {
  std::uint64_t N = 0;
  std::int64_t pi = 0;
  std::int64_t pi41 = 0;
  std::int64_t pi43 = 0;
  std::int64_t pi2 = 0;
  std::int64_t pi2_1 = 0;
  std::int64_t pi2_3 = 0;
  std::int64_t chebyshev_bias = 0;
  std::int64_t twin_bias = 0;
  std::int64_t twin_3mod8 = 0;
};

inline PrimeCounts prime_counts(std::uint64_t N) {
  if (N < 2) throw std::invalid_argument("prime_counts: N must be at least 2");
  const auto is_prime = prime_sieve(N);
  PrimeCounts c;
  c.N = N;
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (!is_prime[p]) continue;
    ++c.pi;
    if (p % 4 == 1) ++c.pi41;
    if (p % 4 == 3) ++c.pi43;
    if (p + 2 <= N && is_prime[p + 2]) {
      ++c.pi2;
      if (p % 4 == 1) ++c.pi2_1;
      if (p % 4 == 3) ++c.pi2_3;
      if (p % 8 == 3) ++c.twin_3mod8;
    }
  }
  c.chebyshev_bias = c.pi43 - c.pi41;
  c.twin_bias = c.pi2_3 - c.pi2_1;
  return c;
}

}  // namespace fiveq
