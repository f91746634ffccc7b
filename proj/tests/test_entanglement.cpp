// Copyright 2026 The wqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include <wqed/entanglement.hpp>

#include "oracles.hpp"

namespace wqed {
namespace {

using testing::ket_density;

/// Concurrence through the Hermitian route sqrt(rho) rho_tilde sqrt(rho),
/// rho_tilde = (Y x Y) rho* (Y x Y).
double concurrence_via_sqrt(const Operator& rho) {
  const Operator yy = spin_flip_yy();
  const Operator tilde = yy * rho.conjugate() * yy;
  const Operator s = Eigen::SelfAdjointEigenSolver<Operator>(rho).operatorSqrt();
  const Operator m = s * tilde * s;
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Operator>(0.5 * (m + m.adjoint())).eigenvalues();
  std::vector<double> mu;
  for (int k = 0; k < 4; ++k) mu.push_back(std::sqrt(std::max(0.0, ev(k))));
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

Operator bell(int which) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: v(0) = r; v(3) = r; break;
    case 1: v(0) = r; v(3) = -r; break;
    case 2: v(1) = r; v(2) = r; break;
    default: v(1) = r; v(2) = -r; break;
  }
  return ket_density(v);
}

Operator werner(double p) { return p * bell(3) + (1.0 - p) * Operator::Identity(4, 4) / 4.0; }

TEST(Concurrence, BellStatesAreMaximal) {
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(wootters_concurrence(bell(k)), 1.0, 1e-12);
}

TEST(Concurrence, SeparableStatesVanish) {
  EXPECT_NEAR(wootters_concurrence(Operator::Identity(4, 4) / 4.0), 0.0, 1e-12);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const Operator r = kron(testing::random_density(rng, 2), testing::random_density(rng, 2));
    EXPECT_NEAR(wootters_concurrence(r), 0.0, 1e-7);
  }
}

TEST(Concurrence, WernerFamily) {
  EXPECT_NEAR(wootters_concurrence(werner(0.5)), 0.25, 1e-12);
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    EXPECT_NEAR(wootters_concurrence(werner(p)), std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-10) << p;
  }
}

TEST(Concurrence, AgreesWithSqrtRoute) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 50; ++k) {
    // Mix a random pure state with noise so both zero and nonzero cases occur.
    const double w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Operator r = w * testing::random_pure_density(rng, 4) + (1.0 - w) * testing::random_density(rng, 4);
    EXPECT_NEAR(wootters_concurrence(r), concurrence_via_sqrt(r), 1e-7);
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const Operator r = testing::random_pure_density(rng, 4);
    const Operator u = kron(testing::random_unitary(rng, 2), testing::random_unitary(rng, 2));
    EXPECT_NEAR(wootters_concurrence(r), wootters_concurrence(u * r * u.adjoint()), 1e-7);
  }
}

TEST(Concurrence, PureStateFormula) {
  // C(|psi>) = 2 |ad - bc|
  std::mt19937_64 rng(13);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXcd v(4);
    for (int i = 0; i < 4; ++i) v(i) = Complex(N(rng), N(rng));
    v.normalize();
    EXPECT_NEAR(wootters_concurrence(ket_density(v)), 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)), 1e-7);
  }
}

TEST(Concurrence, RejectsInvalidInput) {
  Operator nh = werner(0.5);
  nh(0, 1) = 0.3;
  EXPECT_THROW(wootters_concurrence(nh), EntanglementError);
  EXPECT_THROW(wootters_concurrence(2.0 * werner(0.5)), EntanglementError);
  Operator neg = Operator::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(wootters_concurrence(neg), EntanglementError);
  EXPECT_THROW(wootters_concurrence(Operator::Identity(8, 8) / 8.0), DimensionError);
}

TEST(SpinFlip, XStateSpectrum) {
  // X state with rho(0,0) = a, rho(3,3) = d, rho(0,3) = rho(3,0) = x and an equal
  // single-excitation block b. Direct multiplication gives eigenvalues
  // (sqrt(ad) +- x)^2 and {4 b^2, 0}.
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double a = U(rng), b = U(rng), d = U(rng);
    const double norm = a + 2.0 * b + d;
    const double ra = a / norm, rb = b / norm, rd = d / norm;
    const double x = (2.0 * U(rng) - 1.0) * std::sqrt(ra * rd);
    Operator rho = Operator::Zero(4, 4);
    rho(0, 0) = ra;
    rho(3, 3) = rd;
    rho(0, 3) = rho(3, 0) = x;
    rho(1, 1) = rho(1, 2) = rho(2, 1) = rho(2, 2) = rb;
    std::array<double, 4> expect{std::pow(std::sqrt(ra * rd) + std::abs(x), 2), std::pow(std::sqrt(ra * rd) - std::abs(x), 2),
                                 4.0 * rb * rb, 0.0};
    std::sort(expect.begin(), expect.end(), std::greater<>());
    const auto lam = spin_flip_eigenvalues(rho);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(lam[i], expect[i], 1e-10);
  }
}

TEST(SpinFlip, StatedClosedFormHoldsWithoutGgEeCoherence) {
  // The closed-form eigenvalue formulas agree with the matrix on the
  // family reached by the lossless dynamics (no |gg><ee| coherence).
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double r1 = U(rng), r6 = U(rng), r16 = U(rng);
    const Operator m = testing::explicit_spin_flip_matrix(r1, 0.0, r6, r16);
    auto closed = testing::explicit_closed_form_eigenvalues(r1, 0.0, r6, r16);
    std::sort(closed.begin(), closed.end());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Operator>(m).eigenvalues();
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev(i), closed[static_cast<std::size_t>(i)], 1e-10);
  }
}

TEST(OneToOther, CanonicalStates) {
  for (int i = 1; i <= 3; ++i) {
    EXPECT_NEAR(one_to_other_c2(testing::ghz(3), i), 1.0, 1e-12);
    EXPECT_NEAR(one_to_other_c2(testing::w_state(3), i), 8.0 / 9.0, 1e-12);
  }
  Operator g(2, 2);
  g << 1, 0, 0, 0;
  const Operator half = Operator::Identity(2, 2) * 0.5;
  const Operator product = kron(kron(g, half), half);
  EXPECT_NEAR(one_to_other_c2(product, 1), 0.0, 1e-12);
  EXPECT_NEAR(one_to_other_c2(product, 2), 1.0, 1e-12);
  EXPECT_THROW(one_to_other_c2(testing::ghz(3), 4), std::out_of_range);
}

TEST(ConcurrenceFill, CanonicalFixtures) {
  EXPECT_NEAR(concurrence_fill(testing::ghz(3)), 1.0, 1e-9);
  EXPECT_NEAR(concurrence_fill(testing::w_state(3)), 8.0 / 9.0, 1e-9);
  Operator g = Operator::Zero(8, 8);
  g(0, 0) = 1.0;
  EXPECT_NEAR(concurrence_fill(g), 0.0, 1e-9);
}

TEST(ConcurrenceFill, BiseparableStateHasZeroArea) {
  // Bell pair on qubits 1,2 times |g>: sides (1, 1, 0), degenerate triangle.
  Operator g(2, 2);
  g << 1, 0, 0, 0;
  const Operator rho = kron(bell(0), g);
  const auto t = concurrence_triangle(rho);
  EXPECT_NEAR(t.sides[0], 1.0, 1e-12);
  EXPECT_NEAR(t.sides[2], 0.0, 1e-12);
  EXPECT_NEAR(concurrence_fill(rho), 0.0, 1e-6);
}

TEST(ConcurrenceFill, PermutationInvariance) {
  std::mt19937_64 rng(16);
  const EmitterRegister reg(3);
  // Permutation matrix swapping emitters 1 and 3.
  Operator swap13 = Operator::Zero(8, 8);
  for (Eigen::Index b = 0; b < 8; ++b) {
    const Eigen::Index bt = ((b & 1) << 2) | (b & 2) | ((b >> 2) & 1);
    swap13(bt, b) = 1.0;
  }
  for (int k = 0; k < 20; ++k) {
    const Operator r = testing::random_pure_density(rng, 8);
    const Operator rp = swap13 * r * swap13.adjoint();
    EXPECT_NEAR(concurrence_fill(r), concurrence_fill(rp), 1e-10);
    EXPECT_NEAR(one_to_other_c2(r, 1), one_to_other_c2(rp, 3), 1e-12);
  }
}

TEST(ConcurrenceFill, PureStatesSatisfyTriangle) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    const auto t = concurrence_triangle(testing::random_pure_density(rng, 8));
    EXPECT_TRUE(t.satisfies_triangle(1e-10));
  }
}

TEST(ConcurrenceFill, StrictAndClampedOnTriangleViolation) {
  // Maximally mixed qubit 1 with qubits 2, 3 pure: sides (1, 0, 0).
  Operator g(2, 2);
  g << 1, 0, 0, 0;
  const Operator rho = kron(Operator::Identity(2, 2) * 0.5, kron(g, g));
  const auto t = concurrence_triangle(rho);
  EXPECT_NEAR(t.triangle_slack(), -0.5, 1e-12);
  EXPECT_FALSE(t.satisfies_triangle());
  EXPECT_THROW(concurrence_fill(rho), EntanglementError);
  EXPECT_EQ(concurrence_fill_clamped(rho), 0.0);
}

TEST(ConcurrenceFill, ValuesInUnitInterval) {
  std::mt19937_64 rng(18);
  for (int k = 0; k < 50; ++k) {
    const double f = concurrence_fill_clamped(testing::random_density(rng, 8));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

}  // namespace
}  // namespace wqed
