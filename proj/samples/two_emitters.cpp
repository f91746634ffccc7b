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


// Library usage without the scenario layer: two emitters driven by a
// three-photon pulse, bidirectional versus chiral coupling.

#include <cstdio>

#include <wqed/wqed.hpp>

int main() {
  const wqed::GaussianPulse pulse(1.46, 5.0);
  wqed::ObservableRequest request;
  request.populations = {"gg", "eg+ge", "ee"};
  request.concurrence = true;

  for (double ratio : {1.0, 5.0}) {
    wqed::EmitterParams p;
    p.gamma_r = ratio;
    const wqed::FockHierarchy model(wqed::ChainConfig::uniform(2, p), pulse, 3);
    const wqed::Trajectory tr = wqed::simulate(model, wqed::IntegratorConfig{}, request);

    std::printf("Gamma_r / Gamma_l = %g\n", ratio);
    for (const auto& name : tr.names()) {
      const auto pk = wqed::peak(tr, name);
      std::printf("  %-12s max %.4f at t = %.2f\n", name.c_str(), pk.value, pk.time);
    }
  }
  return 0;
}
