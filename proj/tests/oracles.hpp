#pragma once

// Reference implementations used only by the tests. Nothing here calls into
// the library: gates are written out as dense matrices, circuits become
// Kronecker products, primes come from trial division.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Dense {
  std::size_t dim = 0;
  std::vector<C> a;  // row-major

  explicit Dense(std::size_t d = 1) : dim(d), a(d * d) {}
  C& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  C operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

  static Dense identity(std::size_t d) {
    Dense m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Dense mul(const Dense& x, const Dense& y) {
  Dense z(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k) {
      const C v = x(i, k);
      if (v == C{}) continue;
      for (std::size_t j = 0; j < x.dim; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

inline Dense kron(const Dense& x, const Dense& y) {
  Dense z(x.dim * y.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      for (std::size_t k = 0; k < y.dim; ++k)
        for (std::size_t l = 0; l < y.dim; ++l) z(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
  return z;
}

inline Dense m2(C a, C b, C c, C d) {
  Dense m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline const double kPi = std::acos(-1.0);
inline const C kI{0.0, 1.0};

inline Dense H() { const double s = 1.0 / std::sqrt(2.0); return m2(s, s, s, -s); }
inline Dense X() { return m2(0, 1, 1, 0); }
inline Dense Y() { return m2(0, -kI, kI, 0); }
inline Dense Z() { return m2(1, 0, 0, -1); }
inline Dense S() { return m2(1, 0, 0, kI); }
inline Dense Sdg() { return m2(1, 0, 0, -kI); }
inline Dense T() { return m2(1, 0, 0, std::exp(kI * (kPi / 4))); }
inline Dense Tdg() { return m2(1, 0, 0, std::exp(-kI * (kPi / 4))); }
inline Dense Rz(double t) { return m2(1, 0, 0, std::exp(kI * t)); }
inline Dense P0() { return m2(1, 0, 0, 0); }
inline Dense P1() { return m2(0, 0, 0, 1); }

// Operator acting with `ops[q]` on qubit q (identity where absent). Qubit 0
// is the least significant index bit, so it is the rightmost Kronecker factor.
inline Dense on_qubits(int n, const std::vector<std::pair<int, Dense>>& ops) {
  Dense out = Dense::identity(1);
  for (int q = n - 1; q >= 0; --q) {
    Dense f = Dense::identity(2);
    for (const auto& [qq, m] : ops)
      if (qq == q) f = m;
    out = kron(out, f);
  }
  return out;
}

inline Dense single(int n, int q, const Dense& m) { return on_qubits(n, {{q, m}}); }

inline Dense cx(int n, int c, int t) {
  Dense a = on_qubits(n, {{c, P0()}});
  Dense b = on_qubits(n, {{c, P1()}, {t, X()}});
  for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] += b.a[i];
  return a;
}

inline Dense cz(int n, int a, int b) {
  Dense u = Dense::identity(std::size_t{1} << n);
  for (std::size_t i = 0; i < u.dim; ++i)
    if (((i >> a) & 1) && ((i >> b) & 1)) u(i, i) = -1.0;
  return u;
}

inline Dense swap(int n, int a, int b) {
  Dense u(std::size_t{1} << n);
  for (std::size_t i = 0; i < u.dim; ++i) {
    std::size_t j = i;
    const auto ba = (i >> a) & 1, bb = (i >> b) & 1;
    j &= ~((std::size_t{1} << a) | (std::size_t{1} << b));
    j |= (bb << a) | (ba << b);
    u(j, i) = 1.0;
  }
  return u;
}

inline Dense toffoli(int n, int c1, int c2, int t) {
  Dense u(std::size_t{1} << n);
  for (std::size_t i = 0; i < u.dim; ++i) {
    std::size_t j = i;
    if (((i >> c1) & 1) && ((i >> c2) & 1)) j ^= std::size_t{1} << t;
    u(j, i) = 1.0;
  }
  return u;
}

// diag(1, 1, 1, e^{i lambda}) on (c, t).
inline Dense cphase(int n, int c, int t, double lambda) {
  Dense u = Dense::identity(std::size_t{1} << n);
  for (std::size_t i = 0; i < u.dim; ++i)
    if (((i >> c) & 1) && ((i >> t) & 1)) u(i, i) = std::exp(kI * lambda);
  return u;
}

// |tr(U^dagger V)| / dim; 1 iff equal up to global phase.
inline double phase_fidelity(const Dense& u, const Dense& v) {
  C tr{};
  for (std::size_t i = 0; i < u.dim; ++i)
    for (std::size_t k = 0; k < u.dim; ++k) tr += std::conj(u(k, i)) * v(k, i);
  return std::abs(tr) / static_cast<double>(u.dim);
}

inline std::vector<C> apply(const Dense& u, const std::vector<C>& v) {
  std::vector<C> out(v.size());
  for (std::size_t i = 0; i < u.dim; ++i)
    for (std::size_t j = 0; j < u.dim; ++j) out[i] += u(i, j) * v[j];
  return out;
}

inline std::vector<C> basis(int n, std::size_t index) {
  std::vector<C> v(std::size_t{1} << n);
  v[index] = 1.0;
  return v;
}

// Expectation of a Pauli string written most significant qubit first.
inline double pauli_expectation(const std::vector<C>& psi, const std::string& letters) {
  const int n = static_cast<int>(letters.size());
  std::vector<std::pair<int, Dense>> ops;
  for (int i = 0; i < n; ++i) {
    const int q = n - 1 - i;
    switch (letters[static_cast<std::size_t>(i)]) {
      case 'X': ops.emplace_back(q, X()); break;
      case 'Y': ops.emplace_back(q, Y()); break;
      case 'Z': ops.emplace_back(q, Z()); break;
      default: break;
    }
  }
  const auto p = oracle::apply(on_qubits(n, ops), psi);
  C acc{};
  for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * p[i];
  return acc.real();
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::string bits(std::size_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b)
    if ((index >> b) & 1) s[static_cast<std::size_t>(width - 1 - b)] = '1';
  return s;
}

}  // namespace oracle
