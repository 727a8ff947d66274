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

#ifndef COEXIST_SIMULATE_HPP_
#define COEXIST_SIMULATE_HPP_

// Monte Carlo slot simulator. Each slot every node transmits independently
// with its access probability; the slot lasts sigma_I, sigma_S or sigma_C
// depending on how many transmitted. Ages grow with slope one and a lone
// transmitter's age drops to sigma_S at the end of its slot. All averages
// are over continuous time, after a warmup prefix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "coexist/error.hpp"
#include "coexist/model.hpp"

namespace coexist {

struct SimConfig {
  std::uint64_t horizon_slots = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t warmup_slots = 10'000;

  // Warmup defaults to 1% of the horizon.
  static SimConfig with_horizon(std::uint64_t horizon, std::uint64_t seed) {
    return SimConfig{horizon, seed, horizon / 100};
  }

  void validate() const {
    if (!(horizon_slots > warmup_slots)) {
      throw InvalidArgument("horizon_slots must exceed warmup_slots");
    }
  }
};

struct Estimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();

  // |mean - target| in units of the standard error.
  double z_score(double target) const {
    if (std_error == 0.0) return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(mean - target) / std_error;
  }
};

struct NodeSimStats {
  Network tag = Network::kDsrc;
  Estimate throughput;  // fraction of time in own successful slots
  Estimate age;         // time-average age
  Estimate z_first;     // mean inter-update time
  Estimate z_second;    // mean squared inter-update time
  std::uint64_t updates = 0;
};

struct SimResult {
  std::vector<NodeSimStats> nodes;
  std::uint64_t idle_slots = 0;
  std::uint64_t success_slots = 0;
  std::uint64_t collision_slots = 0;
  std::uint64_t measured_slots = 0;
  double measured_time = 0.0;
  Estimate idle_frequency;
  Estimate success_frequency;
  Estimate collision_frequency;
};

inline constexpr std::size_t kSimBatches = 100;

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Batch-means estimate: overall ratio, error from the spread of batch ratios.
inline Estimate batch_ratio(const std::vector<double>& num,
                            const std::vector<double>& den) {
  double total_num = 0.0, total_den = 0.0;
  for (std::size_t b = 0; b < num.size(); ++b) {
    total_num += num[b];
    total_den += den[b];
  }
  const double k = static_cast<double>(num.size());
  double mean_b = 0.0;
  for (std::size_t b = 0; b < num.size(); ++b) mean_b += num[b] / den[b];
  mean_b /= k;
  double ss = 0.0;
  for (std::size_t b = 0; b < num.size(); ++b) {
    const double d = num[b] / den[b] - mean_b;
    ss += d * d;
  }
  return Estimate{total_num / total_den, std::sqrt(ss / (k - 1.0) / k)};
}

inline Estimate sample_mean(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return Estimate{n == 1 ? sum : std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN()};
  const double m = sum / static_cast<double>(n);
  const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) /
                                       static_cast<double>(n - 1));
  return Estimate{m, std::sqrt(var / static_cast<double>(n))};
}

inline Estimate frequency(std::uint64_t count, std::uint64_t n) {
  const double p = static_cast<double>(count) / static_cast<double>(n);
  return Estimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

}  // namespace detail

inline SimResult run_simulation(const AccessVector& v, const SlotLengths& s,
                                const SimConfig& cfg) {
  s.validate();
  cfg.validate();
  const std::size_t n = v.size();
  const auto taus = v.taus();
  std::mt19937_64 rng(cfg.seed);

  const std::uint64_t measured = cfg.horizon_slots - cfg.warmup_slots;
  const std::size_t batches =
      measured >= kSimBatches ? kSimBatches : static_cast<std::size_t>(measured);
  const std::uint64_t batch_len = measured / batches;

  // Instantaneous state.
  std::vector<double> age(n, s.sigma_success);
  std::vector<double> last_update(n, 0.0);
  std::vector<char> sent(n, 0);
  double now = 0.0;

  // Accumulators over the measurement window.
  std::vector<std::vector<double>> area(n, std::vector<double>(batches, 0.0));
  std::vector<std::vector<double>> busy(n, std::vector<double>(batches, 0.0));
  std::vector<double> batch_time(batches, 0.0);
  std::vector<double> z_sum(n, 0.0), z_sq(n, 0.0), z2_sq(n, 0.0);
  std::vector<std::uint64_t> z_count(n, 0);
  std::uint64_t transmissions = 0;

  SimResult r;
  for (std::uint64_t slot = 0; slot < cfg.horizon_slots; ++slot) {
    std::size_t senders = 0;
    std::size_t sender = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sent[i] = detail::unit_uniform(rng) < taus[i];
      if (sent[i]) {
        ++senders;
        sender = i;
      }
    }
    const double len = senders == 0   ? s.sigma_idle
                       : senders == 1 ? s.sigma_success
                                      : s.sigma_collision;
    const bool measuring = slot >= cfg.warmup_slots;
    std::size_t b = 0;
    if (measuring) {
      b = std::min<std::uint64_t>((slot - cfg.warmup_slots) / batch_len,
                                  batches - 1);
      batch_time[b] += len;
      ++r.measured_slots;
      transmissions += senders;
      if (senders == 0) {
        ++r.idle_slots;
      } else if (senders == 1) {
        ++r.success_slots;
      } else {
        ++r.collision_slots;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (measuring) area[i][b] += age[i] * len + 0.5 * len * len;
      age[i] += len;
    }
    now += len;
    if (senders == 1) {
      if (measuring) {
        busy[sender][b] += len;
        const double z = now - last_update[sender];
        z_sum[sender] += z;
        z_sq[sender] += z * z;
        z2_sq[sender] += z * z * z * z;
        ++z_count[sender];
      }
      age[sender] = s.sigma_success;
      last_update[sender] = now;
    }
  }
  if (transmissions == 0) {
    throw NoProgressError("no node transmitted during the measured horizon");
  }

  r.measured_time = 0.0;
  for (double t : batch_time) r.measured_time += t;
  r.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeSimStats& st = r.nodes[i];
    st.tag = v.tag(i);
    st.age = detail::batch_ratio(area[i], batch_time);
    st.throughput = detail::batch_ratio(busy[i], batch_time);
    st.z_first = detail::sample_mean(z_sum[i], z_sq[i], z_count[i]);
    st.z_second = detail::sample_mean(z_sq[i], z2_sq[i], z_count[i]);
    st.updates = z_count[i];
  }
  r.idle_frequency = detail::frequency(r.idle_slots, r.measured_slots);
  r.success_frequency = detail::frequency(r.success_slots, r.measured_slots);
  r.collision_frequency = detail::frequency(r.collision_slots, r.measured_slots);
  return r;
}

}  // namespace coexist

#endif  // COEXIST_SIMULATE_HPP_
