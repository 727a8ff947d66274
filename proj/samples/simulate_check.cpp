// Copyright 2026 The coexist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compares simulated and analytic age for a mixed set of nodes.

#include <cstdio>

#include "coexist/coexist.hpp"

int main() {
  using namespace coexist;
  const AccessVector v({0.1, 0.25, 0.4}, {Network::kDsrc, Network::kDsrc, Network::kWifi});
  const SlotLengths s = SlotLengths::from_beta(0.001);
  const SimResult r = run_simulation(v, s, SimConfig::with_horizon(1'000'000, 7));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double age = aoi_node(v, s, i);
    std::printf("node %zu (%s): age %.4f +- %.4f, analytic %.4f, z %.2f\n", i,
                std::string(to_string(v.tag(i))).c_str(), r.nodes[i].age.mean,
                r.nodes[i].age.std_error, age, r.nodes[i].age.z_score(age));
  }
}
