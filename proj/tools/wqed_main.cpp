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

// Command-line driver: `wqed run <file>` and `wqed sweep <file>`.
//
// Exit codes: 0 success, 2 bad input (message names the offending key),
// 3 integration blow-up (message carries the time), 1 anything else.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <wqed/scenario.hpp>

namespace fs = std::filesystem;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitBlowUp = 3;

struct Options {
  std::string file;
  std::string out_dir = ".";
  std::optional<double> dt;
  bool quiet = false;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string csv_text(const wqed::Trajectory& traj) {
  std::ostringstream s;
  wqed::write_csv(s, traj);
  return s.str();
}

wqed::Scenario load(const Options& opt) {
  wqed::Scenario s = wqed::load_scenario(opt.file);
  if (opt.dt) {
    if (!(*opt.dt > 0.0)) throw wqed::ScenarioError("--dt", "must be positive");
    s.integrator.dt = *opt.dt;
  }
  return s;
}

void print_peaks(const std::string& prefix, const wqed::Trajectory& traj) {
  for (const auto& name : traj.names()) {
    const auto p = wqed::peak(traj, name);
    std::cout << prefix << name << ": max " << wqed::format_value(p.value) << " at t = "
              << wqed::format_value(p.time) << '\n';
  }
}

int cmd_run(const Options& opt) {
  const wqed::Scenario s = load(opt);
  const auto result = wqed::run_scenario(s);
  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  const std::string stem = fs::path(opt.file).stem().string();
  write_text(dir / (stem + ".csv"), csv_text(result.trajectory));
  write_text(dir / (stem + ".summary.json"), wqed::run_summary(result).dump(2) + "\n");
  if (!opt.quiet) {
    std::cout << s.name << " (" << result.trajectory.size() << " rows)\n";
    print_peaks("  ", result.trajectory);
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  const wqed::Scenario s = load(opt);
  const auto sweep = wqed::run_sweep(s);
  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  const std::string stem = fs::path(opt.file).stem().string();
  for (std::size_t k = 0; k < sweep.runs.size(); ++k) {
    const std::string tag = stem + ".ratio" + wqed::detail::exact(sweep.ratios[k]);
    write_text(dir / (tag + ".csv"), csv_text(sweep.runs[k].trajectory));
    write_text(dir / (tag + ".summary.json"), wqed::run_summary(sweep.runs[k]).dump(2) + "\n");
  }
  std::ostringstream agg;
  wqed::write_sweep_csv(agg, sweep);
  write_text(dir / (stem + ".sweep.csv"), agg.str());
  write_text(dir / (stem + ".sweep.json"), wqed::sweep_summary(sweep).dump(2) + "\n");
  if (!opt.quiet) {
    for (std::size_t k = 0; k < sweep.runs.size(); ++k) {
      std::cout << s.name << " ratio " << wqed::format_value(sweep.ratios[k]) << '\n';
      print_peaks("  ", sweep.runs[k].trajectory);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Few-photon driven emitter chains in a chiral waveguide"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("file", opt.file, "Scenario file (key = value text, or a summary JSON)")
        ->required();
    sub->add_option("--out-dir", opt.out_dir, "Directory for CSV and JSON output");
    sub->add_option("--dt", opt.dt, "Override the integrator step");
    sub->add_flag("--quiet", opt.quiet, "Suppress the console summary");
  };
  CLI::App* run = app.add_subcommand("run", "Integrate one scenario");
  add_common(run);
  CLI::App* sweep = app.add_subcommand("sweep", "Run a scenario once per Gamma_r/Gamma_l ratio");
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    return cmd_sweep(opt);
  } catch (const wqed::ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const wqed::IntegrationError& e) {
    std::cerr << "error: integration failed: " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
