#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "qdiscord/errors.hpp"
#include "qdiscord/matrix.hpp"

namespace qdiscord {

/// Eigen-decomposition A = V diag(values) V^dagger of a Hermitian matrix.
/// Eigenvalues are sorted in descending order; column k of `vectors` belongs
/// to values[k].
template <std::size_t N>
struct Spectrum {
  std::array<double, N> values{};
  Matrix<N> vectors;

  Matrix<N> reconstruct() const {
    Matrix<N> lambda = Matrix<N>::diagonal(values);
    return vectors * lambda * vectors.adjoint();
  }

  std::array<Complex, N> vector(std::size_t k) const {
    std::array<Complex, N> v{};
    for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
    return v;
  }
};

struct JacobiOptions {
  double hermitian_tolerance = 1e-10;
  /// Converged when the Frobenius norm of the off-diagonal part drops below this.
  double off_diagonal_tolerance = 1e-13;
  int max_sweeps = 100;
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic complex Jacobi diagonalization.
///
/// Each (p, q) rotation first removes the phase of a(p, q) with
/// D = diag(1, e^{-i arg a_pq}) and then applies the real Givens rotation
/// that zeroes the resulting real symmetric 2x2 block. The combined unitary
/// J = D R is accumulated into the eigenvector matrix.
template <std::size_t N>
Spectrum<N> hermitian_eig(const Matrix<N>& input, const JacobiOptions& opts = {}) {
  if (hermiticity_defect(input) > opts.hermitian_tolerance)
    throw PreconditionError("hermitian_eig: input is not Hermitian");

  Matrix<N> a = hermitian_part(input);
  Matrix<N> v = Matrix<N>::identity();

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < opts.off_diagonal_tolerance) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;  // e^{i alpha}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex sp = s * std::conj(phase);  // s e^{-i alpha}
        const Complex cp = c * std::conj(phase);  // c e^{-i alpha}

        // A <- A J, columns p and q.
        for (std::size_t k = 0; k < N; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c - akq * sp;
          a(k, q) = akp * s + akq * cp;
        }
        // A <- J^dagger A, rows p and q.
        for (std::size_t k = 0; k < N; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - std::conj(sp) * aqk;
          a(q, k) = s * apk + std::conj(cp) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // V <- V J
        for (std::size_t k = 0; k < N; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c - vkq * sp;
          v(k, q) = vkp * s + vkq * cp;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  Spectrum<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace qdiscord
