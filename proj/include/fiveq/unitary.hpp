#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fiveq/circuit.hpp"
#include "fiveq/state.hpp"

namespace fiveq {

inline constexpr int kMaxUnitaryQubits = 10;

/// Square complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix m(a.dim_);
    for (std::size_t r = 0; r < a.dim_; ++r)
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const Complex x = a(r, k);
        if (x == Complex{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < a.dim_; ++c) m(r, c) += x * b(k, c);
      }
    return m;
  }

  double max_abs_diff(const Matrix& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - other.data_[i]));
    return d;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Column j is the circuit applied to basis state |j>.
inline Matrix full_unitary(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > kMaxUnitaryQubits)
    throw std::invalid_argument("full_unitary: " + std::to_string(n) + " qubits exceeds the limit of " +
                                std::to_string(kMaxUnitaryQubits));
  const auto gates_only = circuit.without_measurements();
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s(n);
    s[0] = 0.0;
    s[col] = 1.0;
    run_circuit_in_place(gates_only, s);
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = s[row];
  }
  return u;
}

inline Matrix full_unitary(int num_qubits, const std::vector<GateInstance>& gates) {
  Circuit c(num_qubits);
  c.add(gates);
  return full_unitary(c);
}

/// |tr(U^dagger V)| / dim; equals 1 exactly when V = e^{i phi} U.
inline double phase_insensitive_fidelity(const Matrix& u, const Matrix& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  Complex tr{0.0, 0.0};
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c) tr += std::conj(u(r, c)) * v(r, c);
  return std::abs(tr) / static_cast<double>(u.dim());
}

/// Largest entry-wise difference between U and V after removing the best
/// global phase (taken from tr(U^dagger V)).
inline double distance_up_to_phase(const Matrix& u, const Matrix& v) {
  Complex tr{0.0, 0.0};
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c) tr += std::conj(u(r, c)) * v(r, c);
  const Complex phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex{1.0, 0.0};
  double d = 0.0;
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c) d = std::max(d, std::abs(u(r, c) * phase - v(r, c)));
  return d;
}

inline bool equivalent_up_to_phase(const Matrix& u, const Matrix& v, double tol = 1e-9) {
  return std::abs(1.0 - phase_insensitive_fidelity(u, v)) <= tol;
}

}  // namespace fiveq
