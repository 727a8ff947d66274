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

// Free-game Nash equilibria for a few network sizes.

#include <cstdio>

#include "coexist/coexist.hpp"

int main() {
  using namespace coexist;
  std::printf("n_dsrc n_wifi  tau_d  tau_w        age  throughput\n");
  for (auto [nd, nw] : {std::pair{1, 1}, {2, 2}, {2, 5}, {5, 5}}) {
    NetworkConfig c;
    c.n_dsrc = nd;
    c.n_wifi = nw;
    const auto surfaces = PayoffSurfaces::build(c, GridSpec{});
    for (const NashResult& e : enumerate_nash(surfaces)) {
      std::printf("%6d %6d  %.2f   %.2f  %9.4f  %10.4f\n", nd, nw, e.pair.tau_d,
                  e.pair.tau_w, e.age, e.throughput);
    }
  }
}
