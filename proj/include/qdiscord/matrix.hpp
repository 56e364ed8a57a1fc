#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qdiscord {

using Complex = std::complex<double>;

/// Dense square complex matrix with a compile-time dimension, stored row-major.
/// Dimensions in this library are 2, 4 or 8 (one, two or three qubits), so
/// everything lives on the stack and mismatched shapes fail to compile.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// |v><v| for a (not necessarily normalized) column vector.
  static Matrix outer(const std::array<Complex, N>& v) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * N + c];
  }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

/// Kronecker product; entry (i*M + k, j*M + l) = a(i,j) * b(k,l).
template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N>& a, const Matrix<M>& b) {
  Matrix<N * M> c;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l) c(i * M + k, j * M + l) = a(i, j) * b(k, l);
  return c;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  return (a - b).max_abs();
}

/// max |a - a^dagger|
template <std::size_t N>
double hermiticity_defect(const Matrix<N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

/// (a + a^dagger) / 2
template <std::size_t N>
Matrix<N> hermitian_part(const Matrix<N>& a) {
  Matrix<N> h = a + a.adjoint();
  h *= 0.5;
  return h;
}

namespace pauli {

inline Matrix<2> identity() { return Matrix<2>::identity(); }

inline Matrix<2> x() {
  Matrix<2> m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix<2> y() {
  Matrix<2> m;
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline Matrix<2> z() { return Matrix<2>::diagonal({1.0, -1.0}); }

}  // namespace pauli

}  // namespace qdiscord
