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

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liouvillian.hpp"
#include "pulse.hpp"
#include "qubit_algebra.hpp"

namespace wqed {

inline constexpr int kMaxPhotons = 3;

/// Position of block (m, n), m <= n, in the (m, n)-lexicographic order
/// (0,0), (0,1), ..., (0,P), (1,1), ..., (P,P).
constexpr int block_index(int n_ph, int m, int n) {
  int k = 0;
  for (int r = 0; r < m; ++r) k += n_ph + 1 - r;
  return k + (n - m);
}

constexpr int block_count(int n_ph) { return (n_ph + 1) * (n_ph + 2) / 2; }

/// The operators rho_{m,n}, 0 <= m <= n <= n_ph, of the Fock-state hierarchy.
/// Each block is stored as a column-major vec in one column of `data`, so the
/// columns concatenated give the flat integrator state. Blocks with m > n are
/// never stored; block(m, n) returns block(n, m)^dagger for them.
class HierarchyState {
 public:
  HierarchyState(const EmitterRegister& reg, int n_ph) : reg_(reg), n_ph_(n_ph) {
    if (n_ph < 1 || n_ph > kMaxPhotons) {
      throw std::invalid_argument("HierarchyState: photon number must be in [1, " +
                                  std::to_string(kMaxPhotons) + "], got " +
                                  std::to_string(n_ph));
    }
    data_ = Eigen::MatrixXcd::Zero(reg.dim() * reg.dim(), block_count(n_ph));
  }

  const EmitterRegister& reg() const noexcept { return reg_; }
  int n_ph() const noexcept { return n_ph_; }
  Eigen::Index dim() const noexcept { return reg_.dim(); }
  int n_blocks() const noexcept { return block_count(n_ph_); }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  Operator block(int m, int n) const {
    check_indices(m, n);
    if (m > n) return block(n, m).adjoint();
    return data_.col(block_index(n_ph_, m, n)).reshaped(dim(), dim());
  }

  void set_block(int m, int n, const Operator& value) {
    check_indices(m, n);
    if (m > n) {
      throw std::invalid_argument("HierarchyState: only blocks with m <= n are stored");
    }
    require_dim(value, dim(), "HierarchyState::set_block");
    data_.col(block_index(n_ph_, m, n)) = value.reshaped();
  }

  /// dim^2 x n_blocks, one vec'd block per column.
  const Eigen::MatrixXcd& data() const noexcept { return data_; }
  Eigen::MatrixXcd& data() noexcept { return data_; }

  /// Stored (m, n) pairs in storage order.
  std::vector<std::pair<int, int>> stored_blocks() const {
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m <= n_ph_; ++m)
      for (int n = m; n <= n_ph_; ++n) out.emplace_back(m, n);
    return out;
  }

 private:
  void check_indices(int m, int n) const {
    if (m < 0 || n < 0 || m > n_ph_ || n > n_ph_) {
      throw std::out_of_range("HierarchyState: block (" + std::to_string(m) + "," +
                              std::to_string(n) + ") outside photon range");
    }
  }

  EmitterRegister reg_;
  int n_ph_;
  double time_ = 0.0;
  Eigen::MatrixXcd data_;
};

/// Emitters in the ground state, every diagonal block equal to the ground
/// projector and every off-diagonal block zero.
inline HierarchyState initial_state(const EmitterRegister& reg, int n_ph) {
  HierarchyState s(reg, n_ph);
  const Operator g = ground_projector(reg);
  for (int m = 0; m <= n_ph; ++m) s.set_block(m, m, g);
  return s;
}

/// rho_{n_ph, n_ph}, the emitter state for an n_ph-photon input.
inline Operator physical_density(const HierarchyState& s) { return s.block(s.n_ph(), s.n_ph()); }

/// Right-hand side of the Fock-state master equation for any photon number:
///
///   d/dt rho_{m,n} = L[rho_{m,n}] + sqrt(m) g(t)  [rho_{m-1,n}, J^dagger]
///                                 + sqrt(n) g*(t) [J, rho_{m,n-1}],
///
/// J = sum_i sqrt(Gamma_ir) e^{-i k0 d_i} sigma_i, k0 d_i = ChainConfig::drive_phase(i). Only the right-moving
/// channel carries photons; the left input is vacuum.
class FockHierarchy {
 public:
  FockHierarchy(ChainConfig cfg, GaussianPulse pulse, int n_ph)
      : lv_(std::move(cfg)), pulse_(pulse), n_ph_(n_ph) {
    if (n_ph < 1 || n_ph > kMaxPhotons) {
      throw std::invalid_argument("FockHierarchy: photon number must be in [1, " +
                                  std::to_string(kMaxPhotons) + "]");
    }
    const auto& reg = lv_.reg();
    jump_ = Operator::Zero(reg.dim(), reg.dim());
    for (int i = 1; i <= reg.n_emitters(); ++i) {
      const auto& e = lv_.config().emitter(i);
      jump_ += std::sqrt(e.gamma_r) * std::polar(1.0, -lv_.config().drive_phase(i)) * lowering_op(reg, i);
    }
    jump_dag_ = jump_.adjoint();
  }

  const EmitterRegister& reg() const noexcept { return lv_.reg(); }
  const ChainConfig& config() const noexcept { return lv_.config(); }
  const GaussianPulse& pulse() const noexcept { return pulse_; }
  const Liouvillian& liouvillian() const noexcept { return lv_; }
  int n_ph() const noexcept { return n_ph_; }
  /// Collective right-channel lowering operator J.
  const Operator& right_jump() const noexcept { return jump_; }

  HierarchyState initial_state() const { return wqed::initial_state(reg(), n_ph_); }

  /// Flat form used by the integrator: `y` and `dydt` are dim^2 x n_blocks.
  void derivative(double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dydt) const {
    const Eigen::Index d = reg().dim();
    if (y.rows() != d * d || y.cols() != block_count(n_ph_)) {
      throw DimensionError("FockHierarchy::derivative: malformed block set");
    }
    dydt.noalias() = lv_.superoperator() * y;

    const double g = pulse_.amplitude(t);  // real, so g* = g
    if (g == 0.0) return;

    Operator src(d, d);
    Operator acc(d, d);
    for (int m = 0; m <= n_ph_; ++m) {
      for (int n = m; n <= n_ph_; ++n) {
        acc.setZero();
        if (m > 0) {
          src = y.col(block_index(n_ph_, m - 1, n)).reshaped(d, d);
          acc.noalias() += (std::sqrt(double(m)) * g) * (src * jump_dag_ - jump_dag_ * src);
        }
        if (n > 0) {
          // rho_{m,n-1}; for m == n it is the adjoint of stored rho_{n-1,n}.
          if (m <= n - 1) {
            src = y.col(block_index(n_ph_, m, n - 1)).reshaped(d, d);
          } else {
            src = y.col(block_index(n_ph_, n - 1, m)).reshaped(d, d).adjoint();
          }
          acc.noalias() += (std::sqrt(double(n)) * g) * (jump_ * src - src * jump_);
        }
        dydt.col(block_index(n_ph_, m, n)) += acc.reshaped();
      }
    }
  }

  HierarchyState derivative(const HierarchyState& state, double t) const {
    check_state(state);
    HierarchyState out(state.reg(), state.n_ph());
    out.set_time(t);
    derivative(t, state.data(), out.data());
    return out;
  }

  void check_state(const HierarchyState& state) const {
    if (!(state.reg() == reg()) || state.n_ph() != n_ph_) {
      throw DimensionError("FockHierarchy: state does not match emitter count or photon number");
    }
  }

 private:
  Liouvillian lv_;
  GaussianPulse pulse_;
  int n_ph_;
  Operator jump_;
  Operator jump_dag_;
};

/// One-shot right-hand side; builds the cached generator each call.
inline HierarchyState rhs(const ChainConfig& cfg, const GaussianPulse& pulse,
                          const HierarchyState& state, double t) {
  if (cfg.size() != state.reg().n_emitters()) {
    throw DimensionError("rhs: chain size differs from the state's emitter count");
  }
  return FockHierarchy(cfg, pulse, state.n_ph()).derivative(state, t);
}

}  // namespace wqed
