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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qubit_algebra.hpp"

namespace wqed {

class EntanglementError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct StateTolerances {
  double hermiticity = 1e-8;
  double trace = 1e-6;
  double min_eigenvalue = -1e-8;
};

inline void require_density(const Operator& rho, Eigen::Index dim, const char* what,
                            const StateTolerances& tol = {}, bool check_positive = false) {
  require_dim(rho, dim, what);
  if (!rho.allFinite()) throw EntanglementError(std::string(what) + ": non-finite entries");
  if (hermiticity_defect(rho) > tol.hermiticity) {
    throw EntanglementError(std::string(what) + ": input is not hermitian");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    throw EntanglementError(std::string(what) + ": trace " + std::to_string(tr.real()) +
                            " differs from 1");
  }
  if (check_positive) {
    const Operator h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tol.min_eigenvalue) {
      throw EntanglementError(std::string(what) + ": input is not positive semidefinite");
    }
  }
}

/// sigma_y (x) sigma_y in the computational basis.
inline Operator spin_flip_yy() {
  Operator sy(2, 2);
  sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return kron(sy, sy);
}

/// rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y), rho* the entrywise conjugate.
inline Operator spin_flipped(const Operator& rho) {
  require_dim(rho, 4, "spin_flipped");
  const Operator yy = spin_flip_yy();
  return rho * yy * rho.conjugate() * yy;
}

/// Eigenvalues of the spin-flipped product, real parts clamped at zero and
/// sorted in descending order.
inline std::array<double, 4> spin_flip_eigenvalues(const Operator& rho) {
  Eigen::ComplexEigenSolver<Operator> es(spin_flipped(rho), false);
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) lam[static_cast<std::size_t>(k)] = std::max(0.0, es.eigenvalues()(k).real());
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return lam;
}

/// Wootters concurrence of a two-qubit density matrix.
inline double wootters_concurrence(const Operator& rho, const StateTolerances& tol = {}) {
  require_density(rho, 4, "wootters_concurrence", tol, true);
  const auto lam = spin_flip_eigenvalues(rho);
  const double c = std::sqrt(lam[0]) - std::sqrt(lam[1]) - std::sqrt(lam[2]) - std::sqrt(lam[3]);
  return std::clamp(c, 0.0, 1.0);
}

/// Squared concurrence between qubit i and the remaining pair, from the purity
/// of the single-qubit reduced state: 2 (1 - Tr rho_i^2). Exact for pure
/// global states; applied as-is to mixed ones.
inline double one_to_other_c2(const Operator& rho3, int i, const StateTolerances& tol = {}) {
  require_density(rho3, 8, "one_to_other_c2", tol);
  const EmitterRegister reg(3);
  reg.check_index(i);
  const Operator r = partial_trace(rho3, reg, {i});
  return 2.0 * (1.0 - purity(r));
}

/// Sides are squared one-to-other concurrences clamped to [0, 1].
struct ConcurrenceTriangle {
  std::array<double, 3> sides{};

  double half_perimeter() const noexcept { return 0.5 * (sides[0] + sides[1] + sides[2]); }

  /// min_i (Q - side_i); negative when some side exceeds the sum of the others.
  double triangle_slack() const noexcept {
    const double q = half_perimeter();
    return std::min({q - sides[0], q - sides[1], q - sides[2]});
  }

  bool satisfies_triangle(double tol = 1e-9) const noexcept { return triangle_slack() >= -tol; }

  /// [(16/3) Q (Q-a)(Q-b)(Q-c)]^{1/4} with each Heron factor clamped at 0.
  double fill() const noexcept {
    const double q = half_perimeter();
    double p = (16.0 / 3.0) * q;
    for (double s : sides) p *= std::max(0.0, q - s);
    return std::clamp(std::pow(std::max(0.0, p), 0.25), 0.0, 1.0);
  }
};

inline ConcurrenceTriangle concurrence_triangle(const Operator& rho3, const StateTolerances& tol = {}) {
  ConcurrenceTriangle t;
  for (int i = 1; i <= 3; ++i) {
    t.sides[static_cast<std::size_t>(i - 1)] = std::clamp(one_to_other_c2(rho3, i, tol), 0.0, 1.0);
  }
  return t;
}

/// Concurrence fill. Throws when the concurrence triangle is violated by more
/// than `triangle_tol`.
inline double concurrence_fill(const Operator& rho3, double triangle_tol = 1e-9,
                               const StateTolerances& tol = {}) {
  const auto t = concurrence_triangle(rho3, tol);
  if (!t.satisfies_triangle(triangle_tol)) {
    throw EntanglementError("concurrence_fill: triangle inequality violated (slack " +
                            std::to_string(t.triangle_slack()) + ")");
  }
  return t.fill();
}

/// Concurrence fill that maps a violated triangle to a degenerate one (zero
/// area). Mixed states can break the inequality because the sides come from
/// the pure-state purity formula.
inline double concurrence_fill_clamped(const Operator& rho3, const StateTolerances& tol = {}) {
  return concurrence_triangle(rho3, tol).fill();
}

}  // namespace wqed
