#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <string>

#include "qdiscord/eigen.hpp"
#include "qdiscord/errors.hpp"
#include "qdiscord/matrix.hpp"

namespace qdiscord {

/// Tolerances applied to every DensityMatrix at construction.
namespace tolerance {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
/// Eigenvalues in [-psd_clip, 0) are roundoff and read as 0; anything more
/// negative is a genuine PSD violation.
inline constexpr double psd_clip = 1e-10;
/// Eigenvalues below this contribute nothing to entropies (0 log 0 = 0).
inline constexpr double entropy_floor = 1e-12;
}  // namespace tolerance

/// Result of checking a matrix against the density-operator constraints.
struct StateDefects {
  double hermiticity = 0.0;  ///< max |rho - rho^dagger|
  double trace = 0.0;        ///< |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermiticity <= tolerance::hermiticity && trace <= tolerance::trace &&
           min_eigenvalue >= -tolerance::psd_clip;
  }
};

template <std::size_t N>
StateDefects state_defects(const Matrix<N>& m) {
  StateDefects d;
  d.hermiticity = hermiticity_defect(m);
  d.trace = std::abs(m.trace() - 1.0);
  d.min_eigenvalue = hermitian_eig(hermitian_part(m)).values[N - 1];
  return d;
}

/// A validated quantum state on log2(N) qubits. Qubit 1 is the most
/// significant tensor factor, so basis index b = 4 b1 + 2 b2 + b3 for N = 8.
///
/// Construction checks Hermiticity (1e-12), unit trace (1e-12) and
/// positivity (min eigenvalue >= -1e-10) and throws StateError otherwise.
/// The spectrum computed during validation is kept, with roundoff-negative
/// eigenvalues clipped to zero.
template <std::size_t N>
class DensityMatrix {
  static_assert(std::has_single_bit(N) && N >= 2, "dimension must be 2^n");

 public:
  static constexpr std::size_t dim = N;
  static constexpr std::size_t qubit_count = std::bit_width(N) - 1;

  explicit DensityMatrix(const Matrix<N>& m) : matrix_(m) {
    const double herm = hermiticity_defect(m);
    const double tr = std::abs(m.trace() - 1.0);
    if (herm > tolerance::hermiticity)
      throw StateError("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
    if (tr > tolerance::trace)
      throw StateError("density matrix trace differs from 1 by " + std::to_string(tr));
    spectrum_ = hermitian_eig(m);
    for (double& ev : spectrum_.values) {
      if (ev < -tolerance::psd_clip)
        throw StateError("density matrix has negative eigenvalue " + std::to_string(ev));
      if (ev < 0.0) ev = 0.0;
    }
  }

  /// Pure state |psi><psi| of a unit vector.
  static DensityMatrix pure(const std::array<Complex, N>& psi) {
    return DensityMatrix(Matrix<N>::outer(psi));
  }

  static DensityMatrix maximally_mixed() {
    Matrix<N> m = Matrix<N>::identity();
    m *= 1.0 / static_cast<double>(N);
    return DensityMatrix(m);
  }

  const Matrix<N>& matrix() const { return matrix_; }
  const Spectrum<N>& spectrum() const { return spectrum_; }
  Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  Matrix<N> matrix_;
  Spectrum<N> spectrum_;
};

using QubitState = DensityMatrix<2>;
using ThreeQubitState = DensityMatrix<8>;

/// Reduced state of qubit `keep` (1, 2 or 3) of a three-qubit operator.
inline Matrix<2> partial_trace(const Matrix<8>& rho, int keep) {
  if (keep < 1 || keep > 3)
    throw ArgumentError("partial_trace: qubit index must be 1, 2 or 3, got " + std::to_string(keep));
  const unsigned shift = static_cast<unsigned>(3 - keep);
  Matrix<2> out;
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      // environment bits must agree
      const unsigned mask = ~(1u << shift) & 7u;
      if ((a & mask) != (b & mask)) continue;
      out((a >> shift) & 1u, (b >> shift) & 1u) += rho(a, b);
    }
  return out;
}

inline QubitState partial_trace(const ThreeQubitState& rho, int keep) {
  return QubitState(partial_trace(rho.matrix(), keep));
}

/// Shannon-style sum -sum p log2 p over values above the entropy floor.
template <class Range>
double entropy_of_weights(const Range& weights) {
  double s = 0.0;
  for (double p : weights)
    if (p > tolerance::entropy_floor) s -= p * std::log2(p);
  return s;
}

/// von Neumann entropy in bits.
template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
  return entropy_of_weights(rho.spectrum().values);
}

/// Quantum relative entropy S(rho || sigma) in bits.
///
/// Tr rho log2 sigma is evaluated in sigma's eigenbasis. If rho puts weight
/// above 1e-10 on an eigenvector of sigma whose eigenvalue is below the
/// entropy floor, the supports are incompatible and DivergenceError is thrown.
template <std::size_t N>
double relative_entropy(const DensityMatrix<N>& rho, const DensityMatrix<N>& sigma) {
  const auto& sig = sigma.spectrum();
  double cross = 0.0;  // Tr rho log2 sigma
  for (std::size_t k = 0; k < N; ++k) {
    const auto w = sig.vector(k);
    Complex weight = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) weight += std::conj(w[i]) * rho(i, j) * w[j];
    const double p = weight.real();
    if (sig.values[k] <= tolerance::entropy_floor) {
      if (p > tolerance::psd_clip)
        throw DivergenceError("relative_entropy: supp(rho) is not contained in supp(sigma)");
      continue;
    }
    cross += p * std::log2(sig.values[k]);
  }
  return -von_neumann_entropy(rho) - cross;
}

}  // namespace qdiscord
