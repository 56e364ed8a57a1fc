#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qdiscord/density.hpp"
#include "test_helpers.hpp"

using namespace qdiscord;

TEST(Density, ValidStatesAccepted) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto m = test::random_density<8>(rng);
    EXPECT_TRUE(state_defects(m).ok());
    EXPECT_NO_THROW(ThreeQubitState{m});
  }
}

TEST(Density, RejectsNonHermitianTraceAndNegative) {
  Matrix<2> m = Matrix<2>::diagonal({0.5, 0.5});
  m(0, 1) = 0.1;
  EXPECT_THROW(QubitState{m}, StateError);
  EXPECT_THROW(QubitState{Matrix<2>::diagonal({0.5, 0.6})}, StateError);
  EXPECT_THROW(QubitState{Matrix<2>::diagonal({1.1, -0.1})}, StateError);
  EXPECT_NO_THROW(QubitState{Matrix<2>::diagonal({1.0 + 5e-11, -5e-11})});
  EXPECT_LT(state_defects(Matrix<2>::diagonal({1.1, -0.1})).min_eigenvalue, -0.09);
}

TEST(Density, PartialTraceOfProductState) {
  std::mt19937_64 rng(5);
  const auto a = test::random_density<2>(rng), b = test::random_density<2>(rng), c = test::random_density<2>(rng);
  const Matrix<8> abc = kron(kron(a, b), c);
  EXPECT_LT(max_abs_diff(partial_trace(abc, 1), a), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(abc, 2), b), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(abc, 3), c), 1e-14);
  EXPECT_THROW(partial_trace(abc, 0), ArgumentError);
  EXPECT_THROW(partial_trace(abc, 4), ArgumentError);
}

TEST(Density, EntropyOfKnownStates) {
  EXPECT_NEAR(von_neumann_entropy(ThreeQubitState::maximally_mixed()), 3.0, 1e-13);
  std::array<Complex, 8> psi{};
  psi[0] = psi[7] = 1 / std::sqrt(2.0);
  const auto ghz = ThreeQubitState::pure(psi);
  EXPECT_NEAR(von_neumann_entropy(ghz), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(partial_trace(ghz, 2)), 1.0, 1e-13);
  EXPECT_NEAR(entropy_of_weights(std::array{0.25, 0.25, 0.5}), 1.5, 1e-15);
}

TEST(Density, RelativeEntropyProperties) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const ThreeQubitState rho(test::random_density<8>(rng)), sigma(test::random_density<8>(rng));
    EXPECT_GE(relative_entropy(rho, sigma), -1e-12);
    EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-10);
  }
  // against the maximally mixed state: S(rho || I/8) = 3 - S(rho)
  const ThreeQubitState rho(test::random_density<8>(rng));
  EXPECT_NEAR(relative_entropy(rho, ThreeQubitState::maximally_mixed()), 3.0 - von_neumann_entropy(rho), 1e-12);
}

TEST(Density, RelativeEntropyDivergesOnSupportMismatch) {
  const QubitState up(Matrix<2>::diagonal({1.0, 0.0}));
  const QubitState down(Matrix<2>::diagonal({0.0, 1.0}));
  EXPECT_THROW(relative_entropy(up, down), DivergenceError);
  EXPECT_NEAR(relative_entropy(up, up), 0.0, 1e-15);
}
