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
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hierarchy.hpp"

namespace wqed {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 12.0;
  int record_stride = 10;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("IntegratorConfig: dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
      throw std::invalid_argument("IntegratorConfig: t_end must be positive");
    }
    if (record_stride < 1) throw std::invalid_argument("IntegratorConfig: record_stride must be >= 1");
  }

  /// Number of steps; the final step is shortened so no step passes t_end.
  std::int64_t n_steps() const {
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
      return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::ceil(ratio));
  }

  bool operator==(const IntegratorConfig&) const = default;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Classical fourth-order Runge-Kutta over any Eigen dense state. `f` has the
/// signature f(t, y, dydt).
template <class State>
class Rk4 {
 public:
  template <class Rhs>
  void step(const Rhs& f, double t, State& y, double h) {
    f(t, y, k1_);
    tmp_ = y + (0.5 * h) * k1_;
    f(t + 0.5 * h, tmp_, k2_);
    tmp_ = y + (0.5 * h) * k2_;
    f(t + 0.5 * h, tmp_, k3_);
    tmp_ = y + h * k3_;
    f(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  State k1_, k2_, k3_, k4_, tmp_;
};

/// Fixed-step integration from t = 0. `observe(t, y)` is called at t = 0 and
/// after every record_stride-th step. Step k ends at exactly k * dt (the last
/// one at t_end), so grids from different runs line up bit-for-bit.
template <class State, class Rhs, class Observer>
void integrate_fixed(const Rhs& f, State y, const IntegratorConfig& icfg, Observer&& observe) {
  icfg.validate();
  Rk4<State> rk;
  const std::int64_t n = icfg.n_steps();
  observe(0.0, static_cast<const State&>(y));
  for (std::int64_t k = 0; k < n; ++k) {
    const double t0 = static_cast<double>(k) * icfg.dt;
    const double t1 = (k + 1 == n) ? icfg.t_end : static_cast<double>(k + 1) * icfg.dt;
    rk.step(f, t0, y, t1 - t0);
    if (!y.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite state encountered at t = " << t1;
      throw IntegrationError(msg.str(), t1);
    }
    if ((k + 1) % icfg.record_stride == 0) observe(t1, static_cast<const State&>(y));
  }
}

/// Recorded hierarchy snapshots.
struct StateHistory {
  std::vector<double> times;
  std::vector<HierarchyState> states;
};

template <class Observer>
void integrate(const FockHierarchy& model, const HierarchyState& state0,
               const IntegratorConfig& icfg, Observer&& observe) {
  model.check_state(state0);
  auto f = [&model](double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dydt) {
    model.derivative(t, y, dydt);
  };
  HierarchyState snap = state0;
  integrate_fixed(f, state0.data(), icfg, [&](double t, const Eigen::MatrixXcd& y) {
    snap.data() = y;
    snap.set_time(t);
    observe(static_cast<const HierarchyState&>(snap));
  });
}

inline StateHistory integrate(const FockHierarchy& model, const HierarchyState& state0,
                              const IntegratorConfig& icfg) {
  StateHistory h;
  integrate(model, state0, icfg, [&h](const HierarchyState& s) {
    h.times.push_back(s.time());
    h.states.push_back(s);
  });
  return h;
}

inline StateHistory integrate(const ChainConfig& chain, const GaussianPulse& pulse,
                              const HierarchyState& state0, const IntegratorConfig& icfg) {
  return integrate(FockHierarchy(chain, pulse, state0.n_ph()), state0, icfg);
}

}  // namespace wqed
