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
#include <utility>
#include <vector>

namespace wqed {

/// Real Gaussian temporal mode of the incoming wavepacket,
///   g(t) = sqrt(mu) (2 pi)^(-1/4) exp(-mu^2 (t - t_bar)^2 / 4),
/// normalized so that the integral of g^2 over all t is one. All photons of the
/// Fock-state input share this mode. Times in units of 1/Gamma, mu in Gamma.
class GaussianPulse {
 public:
  GaussianPulse(double mu, double t_bar) : mu_(mu), t_bar_(t_bar) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
      throw std::invalid_argument("GaussianPulse: mu must be positive and finite");
    }
    if (!std::isfinite(t_bar)) throw std::invalid_argument("GaussianPulse: t_bar must be finite");
  }

  double mu() const noexcept { return mu_; }
  double t_bar() const noexcept { return t_bar_; }

  double amplitude(double t) const noexcept {
    const double x = t - t_bar_;
    return std::sqrt(mu_) * std::pow(2.0 * std::numbers::pi, -0.25) *
           std::exp(-0.25 * mu_ * mu_ * x * x);
  }

  double intensity(double t) const noexcept {
    const double g = amplitude(t);
    return g * g;
  }

  double operator()(double t) const noexcept { return amplitude(t); }

 private:
  double mu_;
  double t_bar_;
};

inline double amplitude(const GaussianPulse& pulse, double t) { return pulse.amplitude(t); }

/// Samples (t, |g(t)|^2) on a monotone grid.
inline std::vector<std::pair<double, double>> pulse_profile(const GaussianPulse& pulse,
                                                            const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("pulse_profile: empty time grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("pulse_profile: time grid is not strictly increasing");
    }
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double t : grid) out.emplace_back(t, pulse.intensity(t));
  return out;
}

}  // namespace wqed
