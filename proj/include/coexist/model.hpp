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

#ifndef COEXIST_MODEL_HPP_
#define COEXIST_MODEL_HPP_

// Slotted CSMA abstraction: every node transmits in a slot independently
// with its own access probability. A slot is idle when nobody transmits,
// a success when exactly one node does, and a collision otherwise.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coexist/error.hpp"

namespace coexist {

enum class Network { kDsrc, kWifi };

inline std::string_view to_string(Network n) {
  return n == Network::kDsrc ? "dsrc" : "wifi";
}

inline Network parse_network(std::string_view s) {
  if (s == "dsrc" || s == "DSRC" || s == "d") return Network::kDsrc;
  if (s == "wifi" || s == "WiFi" || s == "WIFI" || s == "w") return Network::kWifi;
  throw InvalidArgument("unknown network '" + std::string(s) +
                        "' (expected dsrc or wifi)");
}

inline Network other(Network n) {
  return n == Network::kDsrc ? Network::kWifi : Network::kDsrc;
}

struct SlotLengths {
  double sigma_idle = 0.0;
  double sigma_success = 0.0;
  double sigma_collision = 0.0;

  // Idle slot of length beta; success and collision slots of length 1 + beta.
  static SlotLengths from_beta(double beta) {
    SlotLengths s{beta, 1.0 + beta, 1.0 + beta};
    s.validate();
    return s;
  }

  void validate() const {
    if (!(sigma_idle > 0.0) || !(sigma_success > 0.0) ||
        !(sigma_collision > 0.0)) {
      throw InvalidArgument("slot lengths must be strictly positive");
    }
  }
};

// A game instance: node counts, slot-length parameter and wastage weights.
struct NetworkConfig {
  int n_dsrc = 1;
  int n_wifi = 1;
  double beta = 0.001;
  double w_idle = 0.0;
  double w_col = 0.0;

  void validate() const {
    if (n_dsrc < 0) throw InvalidArgument("n_dsrc must be >= 0");
    if (n_wifi < 0) throw InvalidArgument("n_wifi must be >= 0");
    if (n_dsrc + n_wifi < 1) {
      throw InvalidArgument("n_dsrc + n_wifi must be >= 1");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
      throw InvalidArgument("beta must lie in (0, 1)");
    }
    if (!(w_idle >= 0.0)) throw InvalidArgument("w_idle must be >= 0");
    if (!(w_col >= 0.0)) throw InvalidArgument("w_col must be >= 0");
  }

  int total_nodes() const { return n_dsrc + n_wifi; }
  SlotLengths slots() const { return SlotLengths::from_beta(beta); }
};

// One access probability per network. Zero is admitted so that an absent
// network can be expressed; the game itself plays on [0.01, 0.99].
struct StrategyPair {
  double tau_d = 0.0;
  double tau_w = 0.0;

  void validate() const {
    if (!(tau_d >= 0.0 && tau_d < 1.0)) {
      throw InvalidArgument("tau_d must lie in [0, 1)");
    }
    if (!(tau_w >= 0.0 && tau_w < 1.0)) {
      throw InvalidArgument("tau_w must lie in [0, 1)");
    }
  }

  double of(Network n) const { return n == Network::kDsrc ? tau_d : tau_w; }

  friend bool operator==(const StrategyPair&, const StrategyPair&) = default;
};

// Per-node access probabilities with the network each node belongs to.
class AccessVector {
 public:
  AccessVector(std::vector<double> taus, std::vector<Network> tags)
      : taus_(std::move(taus)), tags_(std::move(tags)) {
    if (taus_.empty()) throw InvalidArgument("access vector is empty");
    if (taus_.size() != tags_.size()) {
      throw InvalidArgument("access vector: taus and tags differ in length");
    }
    for (double t : taus_) {
      // tau = 1 is admitted for the degenerate single-node case.
      if (!(t >= 0.0 && t <= 1.0)) {
        throw InvalidArgument("access probability outside [0, 1]");
      }
    }
  }

  // DSRC nodes first, then WiFi nodes.
  static AccessVector homogeneous(const NetworkConfig& c, const StrategyPair& p) {
    std::vector<double> taus;
    std::vector<Network> tags;
    taus.reserve(static_cast<std::size_t>(c.total_nodes()));
    tags.reserve(taus.capacity());
    for (int i = 0; i < c.n_dsrc; ++i) {
      taus.push_back(p.tau_d);
      tags.push_back(Network::kDsrc);
    }
    for (int i = 0; i < c.n_wifi; ++i) {
      taus.push_back(p.tau_w);
      tags.push_back(Network::kWifi);
    }
    return AccessVector(std::move(taus), std::move(tags));
  }

  std::size_t size() const { return taus_.size(); }
  double tau(std::size_t i) const { return taus_.at(check(i)); }
  Network tag(std::size_t i) const { return tags_.at(check(i)); }
  std::span<const double> taus() const { return taus_; }
  std::span<const Network> tags() const { return tags_; }

  // Index of the first node of network n, if any.
  std::size_t first_of(Network n) const {
    for (std::size_t i = 0; i < tags_.size(); ++i) {
      if (tags_[i] == n) return i;
    }
    throw InvalidArgument("access vector has no " + std::string(to_string(n)) +
                          " node");
  }

  std::size_t check(std::size_t i) const {
    if (i >= taus_.size()) {
      throw InvalidArgument("node index " + std::to_string(i) +
                            " out of range (size " +
                            std::to_string(taus_.size()) + ")");
    }
    return i;
  }

 private:
  std::vector<double> taus_;
  std::vector<Network> tags_;
};

// p_I: nobody transmits.
inline double joint_idle_prob(const AccessVector& v) {
  double p = 1.0;
  for (double t : v.taus()) p *= 1.0 - t;
  return p;
}

// Nobody other than node i transmits.
inline double idle_prob_excluding(const AccessVector& v, std::size_t i) {
  v.check(i);
  double p = 1.0;
  const auto taus = v.taus();
  for (std::size_t j = 0; j < taus.size(); ++j) {
    if (j != i) p *= 1.0 - taus[j];
  }
  return p;
}

// Node i is the only transmitter.
inline double success_prob_node(const AccessVector& v, std::size_t i) {
  return v.tau(i) * idle_prob_excluding(v, i);
}

inline double success_prob_total(const AccessVector& v) {
  double p = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) p += success_prob_node(v, i);
  return p;
}

// Some node other than i is the only transmitter. Summed directly rather
// than as p_S - p_S^i so that the two stay independently checkable.
inline double success_prob_excluding(const AccessVector& v, std::size_t i) {
  v.check(i);
  double p = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j != i) p += success_prob_node(v, j);
  }
  return p;
}

inline double collision_prob(const AccessVector& v) {
  return 1.0 - joint_idle_prob(v) - success_prob_total(v);
}

inline double expected_slot_length(const AccessVector& v, const SlotLengths& s) {
  const double p_idle = joint_idle_prob(v);
  const double p_succ = success_prob_total(v);
  return s.sigma_idle * p_idle + s.sigma_success * p_succ +
         s.sigma_collision * (1.0 - p_idle - p_succ);
}

}  // namespace coexist

#endif  // COEXIST_MODEL_HPP_
