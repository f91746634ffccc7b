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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hierarchy.hpp"
#include "integrator.hpp"
#include "observables.hpp"

namespace wqed {

/// Malformed or inconsistent scenario input; `key()` names the offending entry.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : "'" + key + "': " + message),
        key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A fully resolved simulation request.
struct Scenario {
  std::string name = "scenario";
  int n_ph = 3;
  ChainConfig chain = ChainConfig::uniform(1, EmitterParams{});
  double mu = 1.46;
  double t_bar = 5.0;
  IntegratorConfig integrator;
  ObservableRequest outputs;
  std::vector<double> sweep_ratios;

  int n_emitters() const noexcept { return chain.size(); }
  GaussianPulse pulse() const { return GaussianPulse(mu, t_bar); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ScenarioError(key, "expected a number, got '" + value + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ScenarioError(key, "expected an integer, got '" + value + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1" || value == "on") return true;
  if (value == "false" || value == "no" || value == "0" || value == "off") return false;
  throw ScenarioError(key, "expected true/false, got '" + value + "'");
}

/// Shortest decimal text that reads back to the same double.
inline std::string exact(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

inline bool set_emitter_field(EmitterParams& e, const std::string& field, double v) {
  if (field == "gamma_r") e.gamma_r = v;
  else if (field == "gamma_l") e.gamma_l = v;
  else if (field == "gamma_spont") e.gamma_spont = v;
  else if (field == "delta") e.delta = v;
  else if (field == "phase") e.phase = v;
  else return false;
  return true;
}

}  // namespace detail

/// Ordered key/value entries, one per non-comment line of a scenario file.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Reads `key = value` lines; '#' starts a comment, blank lines are skipped.
inline KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError(t, "line " + std::to_string(lineno) + " is not of the form key = value");
    }
    std::string key = detail::trim(t.substr(0, eq));
    std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) throw ScenarioError("", "line " + std::to_string(lineno) + " has an empty key");
    for (const auto& [k, v] : kv) {
      if (k == key) throw ScenarioError(key, "duplicate key");
    }
    kv.emplace_back(std::move(key), std::move(value));
  }
  return kv;
}

/// Builds and validates a scenario.
///
/// Keys: system.emitters, system.photons; chain.{gamma_r, gamma_l,
/// gamma_spont, delta, phase} (defaults for every emitter) and chain.d_ratio;
/// emitter.<j>.<field> per-emitter overrides; pulse.{mu, t_bar};
/// integrator.{dt, t_end, stride}; output.{populations, concurrence, fill,
/// pulse}; sweep.ratios; scenario.name.
inline Scenario parse_scenario(const KeyValues& kv) {
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : kv) {
    if (!m.emplace(k, v).second) throw ScenarioError(k, "duplicate key");
  }
  auto take = [&m](const std::string& key) -> std::optional<std::string> {
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    std::string v = it->second;
    m.erase(it);
    return v;
  };

  Scenario s;
  if (auto v = take("scenario.name")) s.name = *v;

  int n = 1;
  if (auto v = take("system.emitters")) n = detail::parse_int("system.emitters", *v);
  if (n < 1 || n > 3) throw ScenarioError("system.emitters", "must be 1, 2 or 3");
  if (auto v = take("system.photons")) s.n_ph = detail::parse_int("system.photons", *v);
  if (s.n_ph < 1 || s.n_ph > kMaxPhotons) throw ScenarioError("system.photons", "must be 1, 2 or 3");

  EmitterParams base;
  for (const char* f : {"gamma_r", "gamma_l", "gamma_spont", "delta", "phase"}) {
    const std::string key = std::string("chain.") + f;
    if (auto v = take(key)) detail::set_emitter_field(base, f, detail::parse_double(key, *v));
  }
  s.chain = ChainConfig::uniform(n, base);
  if (auto v = take("chain.d_ratio")) s.chain.d_ratio = detail::parse_double("chain.d_ratio", *v);

  // Per-emitter overrides: emitter.<j>.<field>.
  for (auto it = m.begin(); it != m.end();) {
    const std::string& key = it->first;
    if (key.rfind("emitter.", 0) != 0) {
      ++it;
      continue;
    }
    const auto dot = key.find('.', 8);
    if (dot == std::string::npos) throw ScenarioError(key, "expected emitter.<index>.<field>");
    const int j = detail::parse_int(key, key.substr(8, dot - 8));
    if (j < 1 || j > n) throw ScenarioError(key, "emitter index outside [1, system.emitters]");
    const std::string field = key.substr(dot + 1);
    if (!detail::set_emitter_field(s.chain.emitters[static_cast<std::size_t>(j - 1)], field,
                                   detail::parse_double(key, it->second))) {
      throw ScenarioError(key, "unknown emitter field '" + field + "'");
    }
    it = m.erase(it);
  }

  if (auto v = take("pulse.mu")) s.mu = detail::parse_double("pulse.mu", *v);
  if (auto v = take("pulse.t_bar")) s.t_bar = detail::parse_double("pulse.t_bar", *v);
  if (!(s.mu > 0.0)) throw ScenarioError("pulse.mu", "must be positive");

  if (auto v = take("integrator.dt")) s.integrator.dt = detail::parse_double("integrator.dt", *v);
  if (auto v = take("integrator.t_end")) s.integrator.t_end = detail::parse_double("integrator.t_end", *v);
  if (auto v = take("integrator.stride")) s.integrator.record_stride = detail::parse_int("integrator.stride", *v);
  if (!(s.integrator.dt > 0.0)) throw ScenarioError("integrator.dt", "must be positive");
  if (!(s.integrator.t_end > 0.0)) throw ScenarioError("integrator.t_end", "must be positive");
  if (s.integrator.record_stride < 1) throw ScenarioError("integrator.stride", "must be >= 1");

  if (auto v = take("output.populations")) s.outputs.populations = detail::split_list(*v);
  if (auto v = take("output.concurrence")) s.outputs.concurrence = detail::parse_bool("output.concurrence", *v);
  if (auto v = take("output.fill")) s.outputs.fill = detail::parse_bool("output.fill", *v);
  if (auto v = take("output.pulse")) s.outputs.pulse = detail::parse_bool("output.pulse", *v);

  if (auto v = take("sweep.ratios")) {
    for (const auto& r : detail::split_list(*v)) {
      const double x = detail::parse_double("sweep.ratios", r);
      if (!(x >= 0.0)) throw ScenarioError("sweep.ratios", "ratios must be >= 0");
      s.sweep_ratios.push_back(x);
    }
    if (s.sweep_ratios.empty()) throw ScenarioError("sweep.ratios", "list is empty");
  }

  if (!m.empty()) throw ScenarioError(m.begin()->first, "unknown key");

  try {
    s.chain.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("chain", e.what());
  }
  const EmitterRegister reg(n);
  for (const auto& label : s.outputs.populations) {
    try {
      parse_label(reg, label);
    } catch (const LabelError& e) {
      throw ScenarioError("output.populations", e.what());
    }
  }
  if (s.outputs.concurrence && n != 2) throw ScenarioError("output.concurrence", "needs system.emitters = 2");
  if (s.outputs.fill && n != 3) throw ScenarioError("output.fill", "needs system.emitters = 3");
  return s;
}

inline Scenario parse_scenario(std::istream& in) { return parse_scenario(read_key_values(in)); }

inline Scenario parse_scenario_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

/// Every parameter spelled out, per-emitter values included. Feeding the
/// result back through parse_scenario reproduces the scenario exactly.
inline KeyValues resolved_config(const Scenario& s) {
  using detail::exact;
  KeyValues kv;
  kv.emplace_back("scenario.name", s.name);
  kv.emplace_back("system.emitters", std::to_string(s.n_emitters()));
  kv.emplace_back("system.photons", std::to_string(s.n_ph));
  kv.emplace_back("chain.d_ratio", exact(s.chain.d_ratio));
  for (int j = 1; j <= s.n_emitters(); ++j) {
    const auto& e = s.chain.emitter(j);
    const std::string p = "emitter." + std::to_string(j) + ".";
    kv.emplace_back(p + "gamma_r", exact(e.gamma_r));
    kv.emplace_back(p + "gamma_l", exact(e.gamma_l));
    kv.emplace_back(p + "gamma_spont", exact(e.gamma_spont));
    kv.emplace_back(p + "delta", exact(e.delta));
    kv.emplace_back(p + "phase", exact(e.phase));
  }
  kv.emplace_back("pulse.mu", exact(s.mu));
  kv.emplace_back("pulse.t_bar", exact(s.t_bar));
  kv.emplace_back("integrator.dt", exact(s.integrator.dt));
  kv.emplace_back("integrator.t_end", exact(s.integrator.t_end));
  kv.emplace_back("integrator.stride", std::to_string(s.integrator.record_stride));
  std::string pops;
  for (const auto& l : s.outputs.populations) pops += (pops.empty() ? "" : ", ") + l;
  kv.emplace_back("output.populations", pops);
  kv.emplace_back("output.concurrence", s.outputs.concurrence ? "true" : "false");
  kv.emplace_back("output.fill", s.outputs.fill ? "true" : "false");
  kv.emplace_back("output.pulse", s.outputs.pulse ? "true" : "false");
  if (!s.sweep_ratios.empty()) {
    std::string r;
    for (double x : s.sweep_ratios) r += (r.empty() ? "" : ", ") + exact(x);
    kv.emplace_back("sweep.ratios", r);
  }
  return kv;
}

inline std::string to_config_text(const Scenario& s) {
  std::string out;
  for (const auto& [k, v] : resolved_config(s)) out += k + " = " + v + "\n";
  return out;
}

inline nlohmann::ordered_json config_json(const Scenario& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : resolved_config(s)) j[k] = v;
  return j;
}

/// Accepts the "config" object written into run and sweep summaries.
inline Scenario scenario_from_json(const nlohmann::ordered_json& config) {
  if (!config.is_object()) throw ScenarioError("config", "expected a JSON object");
  KeyValues kv;
  for (const auto& [k, v] : config.items()) {
    if (v.is_string()) kv.emplace_back(k, v.get<std::string>());
    else if (v.is_boolean()) kv.emplace_back(k, v.get<bool>() ? "true" : "false");
    else if (v.is_number_integer()) kv.emplace_back(k, std::to_string(v.get<long long>()));
    else if (v.is_number()) kv.emplace_back(k, detail::exact(v.get<double>()));
    else throw ScenarioError(k, "unsupported JSON value type");
  }
  return parse_scenario(kv);
}

/// Loads a key/value scenario file, or the "config" object of a summary JSON.
inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file " + path.string());
  if (path.extension() == ".json") {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("config")) throw ScenarioError("config", "missing from JSON summary");
    return scenario_from_json(j.at("config"));
  }
  return parse_scenario(in);
}

/// Copy of `s` with Gamma_r = ratio * Gamma_l on every emitter.
inline Scenario with_chirality(const Scenario& s, double ratio) {
  Scenario out = s;
  for (auto& e : out.chain.emitters) e.gamma_r = ratio * e.gamma_l;
  out.sweep_ratios.clear();
  return out;
}

struct RunResult {
  Scenario scenario;
  Trajectory trajectory;
};

inline RunResult run_scenario(const Scenario& s) {
  const FockHierarchy model(s.chain, s.pulse(), s.n_ph);
  return {s, simulate(model, s.integrator, s.outputs)};
}

struct SweepResult {
  Scenario base;
  std::vector<double> ratios;
  std::vector<RunResult> runs;
};

/// One run per chirality ratio, executed on up to `max_threads` threads.
inline SweepResult run_sweep(const Scenario& s, unsigned max_threads = 0) {
  if (s.sweep_ratios.empty()) throw ScenarioError("sweep.ratios", "sweep needs at least one ratio");
  const std::size_t n = s.sweep_ratios.size();
  if (max_threads == 0) max_threads = std::max(1u, std::thread::hardware_concurrency());

  SweepResult out{s, s.sweep_ratios, std::vector<RunResult>(n)};
  for (std::size_t first = 0; first < n; first += max_threads) {
    const std::size_t last = std::min(n, first + max_threads);
    std::vector<std::future<RunResult>> jobs;
    for (std::size_t k = first; k < last; ++k) {
      jobs.push_back(std::async(std::launch::async,
                                [&s, r = s.sweep_ratios[k]] { return run_scenario(with_chirality(s, r)); }));
    }
    for (std::size_t k = first; k < last; ++k) out.runs[k] = jobs[k - first].get();
  }
  return out;
}

/// Numbers in CSV output: 12 significant digits.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const Trajectory& traj) {
  const auto names = traj.names();
  out << "t";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  std::vector<const std::vector<double>*> cols;
  for (const auto& n : names) cols.push_back(&traj.series(n));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_value(traj.times()[k]);
    for (const auto* c : cols) out << ',' << format_value((*c)[k]);
    out << '\n';
  }
}

inline nlohmann::ordered_json peaks_json(const Trajectory& traj) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& n : traj.names()) {
    const auto p = peak(traj, n);
    j[n] = {{"value", p.value}, {"time", p.time}};
  }
  return j;
}

inline nlohmann::ordered_json run_summary(const RunResult& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario.name;
  j["rows"] = r.trajectory.size();
  j["peaks"] = peaks_json(r.trajectory);
  j["config"] = config_json(r.scenario);
  return j;
}

/// ratio, then <series>_max and <series>_t_max for every series.
inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  if (sweep.runs.empty()) return;
  const auto names = sweep.runs.front().trajectory.names();
  out << "ratio";
  for (const auto& n : names) out << ',' << n << "_max," << n << "_t_max";
  out << '\n';
  for (std::size_t k = 0; k < sweep.runs.size(); ++k) {
    out << format_value(sweep.ratios[k]);
    for (const auto& n : names) {
      const auto p = peak(sweep.runs[k].trajectory, n);
      out << ',' << format_value(p.value) << ',' << format_value(p.time);
    }
    out << '\n';
  }
}

inline nlohmann::ordered_json sweep_summary(const SweepResult& sweep) {
  nlohmann::ordered_json j;
  j["scenario"] = sweep.base.name;
  j["config"] = config_json(sweep.base);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < sweep.runs.size(); ++k) {
    runs.push_back({{"ratio", sweep.ratios[k]}, {"peaks", peaks_json(sweep.runs[k].trajectory)}});
  }
  j["runs"] = std::move(runs);
  return j;
}

}  // namespace wqed
