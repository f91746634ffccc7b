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
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubit_algebra.hpp"

namespace wqed {

/// Physical parameters of one emitter. Rates in units of Gamma.
struct EmitterParams {
  double gamma_r = 1.0;      ///< decay into right-moving waveguide modes
  double gamma_l = 1.0;      ///< decay into left-moving waveguide modes
  double gamma_spont = 0.0;  ///< loss into non-waveguide modes
  double delta = 0.0;        ///< transition minus pulse-carrier frequency
  double phase = 0.0;        ///< drive phase offset added to the spacing phase, radians

  double gamma_rl() const noexcept { return 0.5 * (gamma_r + gamma_l); }

  bool operator==(const EmitterParams&) const = default;
};

struct ChainConfig {
  std::vector<EmitterParams> emitters;
  double d_ratio = 0.0;  ///< emitter spacing over resonant wavelength

  int size() const noexcept { return static_cast<int>(emitters.size()); }
  const EmitterParams& emitter(int j) const { return emitters.at(static_cast<std::size_t>(j - 1)); }

  /// Phase k0 d_j picked up by the incoming pulse at emitter j. The spacing
  /// part, -2 pi D (j - 1), carries the sign that matches the cooperative
  /// phase e^{-2 pi i D (i - j)}; any other choice makes the driven hierarchy
  /// lose positivity once D is not a multiple of 1/2.
  double drive_phase(int j) const {
    return emitter(j).phase - 2.0 * std::numbers::pi * d_ratio * static_cast<double>(j - 1);
  }

  void validate() const {
    if (emitters.empty()) throw std::invalid_argument("ChainConfig: at least one emitter required");
    if (!std::isfinite(d_ratio)) throw std::invalid_argument("ChainConfig: d_ratio must be finite");
    for (std::size_t k = 0; k < emitters.size(); ++k) {
      const auto& e = emitters[k];
      const std::string who = "ChainConfig: emitter " + std::to_string(k + 1);
      if (!(e.gamma_r >= 0.0) || !(e.gamma_l >= 0.0) || !(e.gamma_spont >= 0.0)) {
        throw std::invalid_argument(who + " has a negative or NaN rate");
      }
      if (!std::isfinite(e.gamma_r) || !std::isfinite(e.gamma_l) ||
          !std::isfinite(e.gamma_spont) || !std::isfinite(e.delta) || !std::isfinite(e.phase)) {
        throw std::invalid_argument(who + " has a non-finite parameter");
      }
    }
  }

  /// N identical emitters.
  static ChainConfig uniform(int n, const EmitterParams& p, double d_ratio = 0.0) {
    ChainConfig c;
    c.emitters.assign(static_cast<std::size_t>(n), p);
    c.d_ratio = d_ratio;
    return c;
  }

  bool operator==(const ChainConfig&) const = default;
};

namespace detail {

inline void check_chain(const ChainConfig& cfg, const Operator& rho, const char* what) {
  const int n = cfg.size();
  if (n < 1 || n > EmitterRegister::kMaxEmitters) {
    throw DimensionError(std::string(what) + ": chain has an unsupported emitter count");
  }
  require_dim(rho, Eigen::Index{1} << n, what);
}

}  // namespace detail

/// -i (H_eff rho - rho H_eff^dagger), H_eff = sum_j (delta_j - i gamma_j) n_j.
/// Non-waveguide loss enters only here and carries no recycling term.
inline Operator apply_closed(const ChainConfig& cfg, const Operator& rho) {
  detail::check_chain(cfg, rho, "apply_closed");
  const EmitterRegister reg(cfg.size());
  // H_eff is diagonal in the computational basis.
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(reg.dim());
  for (Eigen::Index b = 0; b < reg.dim(); ++b) {
    for (int j = 1; j <= reg.n_emitters(); ++j) {
      if (reg.excited(b, j)) {
        const auto& e = cfg.emitter(j);
        h(b) += Complex(e.delta, -e.gamma_spont);
      }
    }
  }
  const Complex minus_i(0.0, -1.0);
  Operator out(reg.dim(), reg.dim());
  for (Eigen::Index c = 0; c < reg.dim(); ++c) {
    for (Eigen::Index r = 0; r < reg.dim(); ++r) {
      out(r, c) = minus_i * (h(r) - std::conj(h(c))) * rho(r, c);
    }
  }
  return out;
}

/// -sum_i Gamma_irl (n_i rho - 2 sigma_i rho sigma_i^dagger + rho n_i),
/// with 2 Gamma_irl = Gamma_ir + Gamma_il.
inline Operator apply_pure_decay(const ChainConfig& cfg, const Operator& rho) {
  detail::check_chain(cfg, rho, "apply_pure_decay");
  const EmitterRegister reg(cfg.size());
  Operator out = Operator::Zero(reg.dim(), reg.dim());
  for (int i = 1; i <= reg.n_emitters(); ++i) {
    const double rate = cfg.emitter(i).gamma_rl();
    if (rate == 0.0) continue;
    const Operator s = lowering_op(reg, i);
    const Operator n = number_op(reg, i);
    out -= rate * (n * rho - 2.0 * s * rho * s.adjoint() + rho * n);
  }
  return out;
}

/// Weight of the (i, j) cooperative term: sqrt(G_ir G_jr) for i > j (light
/// travelling right from j to i), sqrt(G_il G_jl) for i < j.
inline double cooperative_coefficient(const ChainConfig& cfg, int i, int j) {
  if (i == j) return 0.0;
  const auto& a = cfg.emitter(i);
  const auto& b = cfg.emitter(j);
  return i > j ? std::sqrt(a.gamma_r * b.gamma_r) : std::sqrt(a.gamma_l * b.gamma_l);
}

/// Waveguide-mediated coupling between distinct emitters,
///   -sum_{i != j} c_ij [ e^{-i theta_ij} (s_i^+ s_j rho - s_j rho s_i^+)
///                      + e^{+i theta_ij} (rho s_j^+ s_i - s_i rho s_j^+) ],
/// theta_ij = 2 pi D (i - j). The second line is the superoperator adjoint of
/// the first (rho kept in place), which makes the map linear and
/// hermiticity-preserving.
inline Operator apply_cooperative(const ChainConfig& cfg, const Operator& rho) {
  detail::check_chain(cfg, rho, "apply_cooperative");
  const EmitterRegister reg(cfg.size());
  Operator out = Operator::Zero(reg.dim(), reg.dim());
  const int n = reg.n_emitters();
  if (n < 2) return out;

  std::vector<Operator> s;
  s.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) s.push_back(lowering_op(reg, j));

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double c = cooperative_coefficient(cfg, i, j);
      if (i == j || c == 0.0) continue;
      const Operator& si = s[static_cast<std::size_t>(i - 1)];
      const Operator& sj = s[static_cast<std::size_t>(j - 1)];
      const Complex ph = std::polar(1.0, -2.0 * std::numbers::pi * cfg.d_ratio * (i - j));
      const Operator x = si.adjoint() * sj * rho - sj * rho * si.adjoint();
      const Operator y = rho * sj.adjoint() * si - si * rho * sj.adjoint();
      out -= c * (ph * x + std::conj(ph) * y);
    }
  }
  return out;
}

inline Operator apply_total(const ChainConfig& cfg, const Operator& rho) {
  return apply_closed(cfg, rho) + apply_pure_decay(cfg, rho) + apply_cooperative(cfg, rho);
}

/// The full time-independent generator cached as a dim^2 x dim^2 matrix acting
/// on column-major vec(rho). Columns are built by applying apply_total to the
/// matrix units, so the cache is exact up to round-off.
class Liouvillian {
 public:
  explicit Liouvillian(ChainConfig cfg) : cfg_(std::move(cfg)), reg_(checked_size(cfg_)) {
    const Eigen::Index d = reg_.dim();
    super_.resize(d * d, d * d);
    Operator unit = Operator::Zero(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) {
        unit(r, c) = 1.0;
        const Operator col = apply_total(cfg_, unit);
        super_.col(c * d + r) = col.reshaped();
        unit(r, c) = 0.0;
      }
    }
  }

  const ChainConfig& config() const noexcept { return cfg_; }
  const EmitterRegister& reg() const noexcept { return reg_; }
  const Eigen::MatrixXcd& superoperator() const noexcept { return super_; }

  Operator apply(const Operator& rho) const {
    require_dim(rho, reg_.dim(), "Liouvillian::apply");
    Operator out(reg_.dim(), reg_.dim());
    out.reshaped() = super_ * rho.reshaped();
    return out;
  }

 private:
  static int checked_size(const ChainConfig& cfg) {
    cfg.validate();
    return cfg.size();
  }

  ChainConfig cfg_;
  EmitterRegister reg_;
  Eigen::MatrixXcd super_;
};

}  // namespace wqed
