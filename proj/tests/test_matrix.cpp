#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qdiscord/eigen.hpp"
#include "qdiscord/matrix.hpp"
#include "qdiscord/nelder_mead.hpp"
#include "qdiscord/parallel.hpp"
#include "test_helpers.hpp"

using namespace qdiscord;

TEST(Matrix, PauliAlgebra) {
  const Complex i(0, 1);
  EXPECT_EQ(max_abs_diff(pauli::x() * pauli::x(), pauli::identity()), 0.0);
  EXPECT_EQ(max_abs_diff(pauli::y() * pauli::y(), pauli::identity()), 0.0);
  EXPECT_EQ(max_abs_diff(pauli::z() * pauli::z(), pauli::identity()), 0.0);
  EXPECT_EQ(max_abs_diff(pauli::x() * pauli::y(), i * pauli::z()), 0.0);
  EXPECT_EQ(max_abs_diff(pauli::y() * pauli::z(), i * pauli::x()), 0.0);
}

TEST(Matrix, KronMatchesHandWrittenZZ) {
  const Matrix<4> zz = kron(pauli::z(), pauli::z());
  EXPECT_EQ(max_abs_diff(zz, Matrix<4>::diagonal({1, -1, -1, 1})), 0.0);
  // qubit 1 is the most significant factor
  const Matrix<4> xi = kron(pauli::x(), pauli::identity());
  EXPECT_EQ(xi(0, 2), Complex(1));
  EXPECT_EQ(xi(1, 3), Complex(1));
  EXPECT_EQ(xi(0, 1), Complex(0));
}

TEST(Matrix, KronMixedProduct) {
  std::mt19937_64 rng(7);
  const auto a = test::random_matrix<2>(rng), b = test::random_matrix<2>(rng);
  const auto c = test::random_matrix<4>(rng), d = test::random_matrix<4>(rng);
  EXPECT_LT(max_abs_diff(kron(a, c) * kron(b, d), kron<2, 4>(a * b, c * d)), 1e-12);
}

TEST(Matrix, AdjointTraceAndFinite) {
  std::mt19937_64 rng(1);
  const auto a = test::random_matrix<4>(rng);
  EXPECT_EQ(max_abs_diff(a.adjoint().adjoint(), a), 0.0);
  EXPECT_NEAR(std::abs(a.trace() - std::conj(a.adjoint().trace())), 0.0, 1e-15);
  EXPECT_TRUE(a.all_finite());
  Matrix<4> bad = a;
  bad(1, 2) = Complex(std::nan(""), 0);
  EXPECT_FALSE(bad.all_finite());
  EXPECT_LT(hermiticity_defect(hermitian_part(a)), 1e-15);
}

TEST(Eigen, TwoByTwoClosedForm) {
  // eigenvalues of [[a, b], [b*, d]] are (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2)
  Matrix<2> m;
  m(0, 0) = 0.7;
  m(1, 1) = -0.2;
  m(0, 1) = Complex(0.3, -0.4);
  m(1, 0) = std::conj(m(0, 1));
  const auto s = hermitian_eig(m);
  const double r = std::sqrt(0.45 * 0.45 + 0.25);
  EXPECT_NEAR(s.values[0], 0.25 + r, 1e-14);
  EXPECT_NEAR(s.values[1], 0.25 - r, 1e-14);
}

TEST(Eigen, RandomHermitianReconstructs) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 50; ++k) {
    const auto h = test::random_hermitian<8>(rng);
    const auto s = hermitian_eig(h);
    EXPECT_LT(max_abs_diff(s.reconstruct(), h), 1e-12);
    for (std::size_t i = 0; i + 1 < 8; ++i) EXPECT_GE(s.values[i], s.values[i + 1]);
    EXPECT_LT(max_abs_diff(s.vectors.adjoint() * s.vectors, Matrix<8>::identity()), 1e-12);
    double tr = 0;
    for (double v : s.values) tr += v;
    EXPECT_NEAR(tr, h.trace().real(), 1e-12);
  }
}

TEST(Eigen, DegenerateSpectrum) {
  const auto s = hermitian_eig(Matrix<8>::identity());
  for (double v : s.values) EXPECT_DOUBLE_EQ(v, 1.0);
  const auto zz = hermitian_eig(kron(kron(pauli::z(), pauli::z()), pauli::identity()));
  EXPECT_DOUBLE_EQ(zz.values[0], 1.0);
  EXPECT_DOUBLE_EQ(zz.values[7], -1.0);
}

TEST(Eigen, RejectsNonHermitian) {
  Matrix<2> m;
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eig(m), PreconditionError);
}

TEST(NelderMead, Quadratic) {
  const auto r = nelder_mead<3>(
      [](const std::array<double, 3>& x) {
        return (x[0] - 1) * (x[0] - 1) + 2 * (x[1] + 0.5) * (x[1] + 0.5) + 3 * x[2] * x[2];
      },
      {0, 0, 0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], -0.5, 1e-5);
  EXPECT_NEAR(r.x[2], 0.0, 1e-5);
  EXPECT_LT(r.value, 1e-10);
}

TEST(NelderMead, Rosenbrock) {
  const auto r = nelder_mead<2>(
      [](const std::array<double, 2>& x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
      },
      {-1.2, 1.0}, {0.5, 1e-16, 10000});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, IterationCapReported) {
  const auto r = nelder_mead<2>([](const std::array<double, 2>& x) { return -x[0] - x[1]; }, {0, 0},
                                {0.1, 1e-13, 50});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 50);
}

TEST(Parallel, EveryIndexOnceAndExceptionsPropagate) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  parallel_for(0, [](std::size_t) { FAIL(); });
}
