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
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entanglement.hpp"
#include "hierarchy.hpp"
#include "integrator.hpp"
#include "pulse.hpp"

namespace wqed {

class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Basis states named by a population label.
///
/// Grammar: terms joined by '+'. A term is either N letters from {g, e}, one
/// per emitter in order (e.g. "eg+ge" for N = 2), or "n=K" selecting every
/// basis state with exactly K excited emitters. Duplicates collapse.
inline std::vector<Eigen::Index> parse_label(const EmitterRegister& reg, std::string_view label) {
  if (label.empty()) throw LabelError("empty population label");
  std::vector<Eigen::Index> out;
  std::size_t pos = 0;
  while (pos <= label.size()) {
    const std::size_t next = label.find('+', pos);
    const std::string term(label.substr(pos, next == std::string_view::npos ? label.npos : next - pos));
    if (term.empty()) throw LabelError("empty term in population label '" + std::string(label) + "'");

    if (term.rfind("n=", 0) == 0) {
      int k = -1;
      try {
        std::size_t used = 0;
        k = std::stoi(term.substr(2), &used);
        if (used != term.size() - 2) k = -1;
      } catch (const std::exception&) {
        k = -1;
      }
      if (k < 0 || k > reg.n_emitters()) {
        throw LabelError("bad excitation count in population label term '" + term + "'");
      }
      for (Eigen::Index b = 0; b < reg.dim(); ++b) {
        int count = 0;
        for (int j = 1; j <= reg.n_emitters(); ++j) count += reg.excited(b, j) ? 1 : 0;
        if (count == k) out.push_back(b);
      }
    } else {
      if (static_cast<int>(term.size()) != reg.n_emitters()) {
        throw LabelError("population label term '" + term + "' must name " +
                         std::to_string(reg.n_emitters()) + " emitters");
      }
      Eigen::Index b = 0;
      for (int j = 1; j <= reg.n_emitters(); ++j) {
        const char c = term[static_cast<std::size_t>(j - 1)];
        if (c == 'e') {
          b |= reg.mask(j);
        } else if (c != 'g') {
          throw LabelError("unknown state letter '" + std::string(1, c) + "' in label '" + term + "'");
        }
      }
      out.push_back(b);
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Sum of the diagonal entries of rho over the labelled basis states.
inline double population(const Operator& rho, const EmitterRegister& reg, std::string_view label) {
  require_dim(rho, reg.dim(), "population");
  double p = 0.0;
  for (Eigen::Index b : parse_label(reg, label)) p += rho(b, b).real();
  return p;
}

struct PeakSummary {
  double value = 0.0;
  double time = 0.0;
};

/// Time grid with named real series.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<double> times) : times_(std::move(times)) {}

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }

  void add_series(std::string name, std::vector<double> values) {
    if (values.size() != times_.size()) {
      throw std::invalid_argument("Trajectory: series '" + name + "' length differs from time grid");
    }
    if (has(name)) throw std::invalid_argument("Trajectory: duplicate series '" + name + "'");
    series_.emplace_back(std::move(name), std::move(values));
  }

  bool has(std::string_view name) const {
    return std::any_of(series_.begin(), series_.end(), [&](const auto& s) { return s.first == name; });
  }

  const std::vector<double>& series(std::string_view name) const {
    for (const auto& s : series_)
      if (s.first == name) return s.second;
    throw std::out_of_range("Trajectory: no series named '" + std::string(name) + "'");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& s : series_) out.push_back(s.first);
    return out;
  }

 private:
  std::vector<double> times_;
  std::vector<std::pair<std::string, std::vector<double>>> series_;
};

/// Global maximum of a series with the earliest grid time on ties.
inline PeakSummary peak(const std::vector<double>& times, const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("peak: empty series");
  if (times.size() != values.size()) throw std::invalid_argument("peak: length mismatch");
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] > values[best]) best = k;
  return {values[best], times[best]};
}

inline PeakSummary peak(const Trajectory& traj, std::string_view name) {
  return peak(traj.times(), traj.series(name));
}

enum class Measure { kConcurrence, kFill };

/// Entanglement of a (possibly trace-decreasing) physical density matrix.
/// The state is renormalized first so lossy runs are scored on the
/// conditional emitter state.
inline double entanglement_of(const Operator& rho, Measure measure) {
  const double tr = rho.trace().real();
  if (!(tr > 1e-12)) return 0.0;
  const Operator r = rho / tr;
  switch (measure) {
    case Measure::kConcurrence:
      return wootters_concurrence(r, StateTolerances{1e-8, 1e-6, -1e-6});
    case Measure::kFill:
      return concurrence_fill_clamped(r);
  }
  return 0.0;
}

inline std::vector<double> entanglement_series(const std::vector<Operator>& densities,
                                               const EmitterRegister& reg, Measure measure) {
  if (measure == Measure::kConcurrence && reg.n_emitters() != 2) {
    throw std::invalid_argument("entanglement_series: concurrence needs exactly 2 emitters");
  }
  if (measure == Measure::kFill && reg.n_emitters() != 3) {
    throw std::invalid_argument("entanglement_series: concurrence fill needs exactly 3 emitters");
  }
  std::vector<double> out;
  out.reserve(densities.size());
  for (const auto& rho : densities) out.push_back(entanglement_of(rho, measure));
  return out;
}

inline std::vector<double> entanglement_series(const StateHistory& history, const EmitterRegister& reg,
                                               Measure measure) {
  std::vector<Operator> d;
  d.reserve(history.states.size());
  for (const auto& s : history.states) d.push_back(physical_density(s));
  return entanglement_series(d, reg, measure);
}

/// Which series to extract from a run.
struct ObservableRequest {
  std::vector<std::string> populations;
  bool concurrence = false;
  bool fill = false;
  bool pulse = false;

  bool operator==(const ObservableRequest&) const = default;
};

inline std::string population_series_name(std::string_view label) { return "P_" + std::string(label); }

/// Collects the requested series while integrating; only rho_{P,P} is kept.
class TrajectoryRecorder {
 public:
  TrajectoryRecorder(const EmitterRegister& reg, GaussianPulse pulse, ObservableRequest request)
      : reg_(reg), pulse_(pulse), request_(std::move(request)) {
    for (const auto& label : request_.populations) labels_.push_back(parse_label(reg_, label));
    if (request_.concurrence && reg_.n_emitters() != 2) {
      throw std::invalid_argument("concurrence output needs exactly 2 emitters");
    }
    if (request_.fill && reg_.n_emitters() != 3) {
      throw std::invalid_argument("concurrence fill output needs exactly 3 emitters");
    }
    pops_.resize(labels_.size());
  }

  void operator()(const HierarchyState& s) {
    const Operator rho = physical_density(s);
    times_.push_back(s.time());
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      double p = 0.0;
      for (Eigen::Index b : labels_[k]) p += rho(b, b).real();
      pops_[k].push_back(p);
    }
    if (request_.concurrence) conc_.push_back(entanglement_of(rho, Measure::kConcurrence));
    if (request_.fill) fill_.push_back(entanglement_of(rho, Measure::kFill));
    if (request_.pulse) pulse_series_.push_back(pulse_.intensity(s.time()));
  }

  Trajectory finish() const {
    Trajectory t(times_);
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      t.add_series(population_series_name(request_.populations[k]), pops_[k]);
    }
    if (request_.concurrence) t.add_series("concurrence", conc_);
    if (request_.fill) t.add_series("fill", fill_);
    if (request_.pulse) t.add_series("pulse", pulse_series_);
    return t;
  }

 private:
  EmitterRegister reg_;
  GaussianPulse pulse_;
  ObservableRequest request_;
  std::vector<std::vector<Eigen::Index>> labels_;
  std::vector<double> times_;
  std::vector<std::vector<double>> pops_;
  std::vector<double> conc_, fill_, pulse_series_;
};

inline Trajectory simulate(const FockHierarchy& model, const IntegratorConfig& icfg,
                           const ObservableRequest& request) {
  TrajectoryRecorder rec(model.reg(), model.pulse(), request);
  integrate(model, model.initial_state(), icfg, [&rec](const HierarchyState& s) { rec(s); });
  return rec.finish();
}

}  // namespace wqed
