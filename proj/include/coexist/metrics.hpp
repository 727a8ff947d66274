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

#ifndef COEXIST_METRICS_HPP_
#define COEXIST_METRICS_HPP_

// Throughput and age of information of a tagged node.
//
// The inter-update time of node i is Z = Y_1 + ... + Y_{L-1} + X, where L is
// geometric with success probability p_S^i, each Y is the length of a slot in
// which i does not update, and X = sigma_S is the successful slot itself.
// The long-run time-average age is E[Z^2] / (2 E[Z]) + sigma_S.

#include <cassert>
#include <cmath>
#include <cstddef>

#include "coexist/error.hpp"
#include "coexist/model.hpp"

namespace coexist {

struct InterUpdateMoments {
  double first = 0.0;   // E[Z]
  double second = 0.0;  // E[Z^2]
};

// Distribution of the length of a slot given that the tagged node does not
// update in it.
struct ResidualSlotPmf {
  double p_idle_given_no_success = 0.0;
  double p_other_success_given_no_success = 0.0;
  double p_collision_given_no_success = 0.0;
  SlotLengths lengths;

  double mean() const {
    return p_idle_given_no_success * lengths.sigma_idle +
           p_other_success_given_no_success * lengths.sigma_success +
           p_collision_given_no_success * lengths.sigma_collision;
  }

  double second_moment() const {
    const auto sq = [](double x) { return x * x; };
    return p_idle_given_no_success * sq(lengths.sigma_idle) +
           p_other_success_given_no_success * sq(lengths.sigma_success) +
           p_collision_given_no_success * sq(lengths.sigma_collision);
  }
};

// Fraction of time occupied by successful transmissions of node i.
inline double per_node_throughput(const AccessVector& v, const SlotLengths& s,
                                  std::size_t i) {
  return success_prob_node(v, i) * s.sigma_success / expected_slot_length(v, s);
}

inline ResidualSlotPmf residual_slot_pmf(const AccessVector& v,
                                         const SlotLengths& s, std::size_t i) {
  const double p_self = success_prob_node(v, i);
  if (!(p_self < 1.0)) {
    throw DomainError("residual slot distribution undefined: node " +
                      std::to_string(i) + " succeeds in every slot");
  }
  const double p_idle = joint_idle_prob(v);
  const double p_idle_others = idle_prob_excluding(v, i);
  const double p_other = success_prob_excluding(v, i);
  const double norm = 1.0 - p_self;
  // The collision entry uses p_I^{-i}: 1 - p_I^{-i} - p_S^{-i} equals the
  // probability that some other node collides, with or without node i.
  return ResidualSlotPmf{p_idle / norm, p_other / norm,
                         (1.0 - p_idle_others - p_other) / norm, s};
}

// Moments assembled from the geometric slot count and the residual slot
// distribution.
inline InterUpdateMoments inter_update_moments(const AccessVector& v,
                                               const SlotLengths& s,
                                               std::size_t i) {
  const double p = success_prob_node(v, i);
  if (!(p > 0.0)) {
    throw DomainError("node " + std::to_string(i) +
                      " never updates successfully");
  }
  const double mean_l = 1.0 / p;
  const double mean_l2 = (2.0 - p) / (p * p);
  const double x = s.sigma_success;
  double mean_y = 0.0;
  double mean_y2 = 0.0;
  if (p < 1.0) {
    const ResidualSlotPmf y = residual_slot_pmf(v, s, i);
    mean_y = y.mean();
    mean_y2 = y.second_moment();
  }
  InterUpdateMoments m;
  m.first = (mean_l - 1.0) * mean_y + x;
  m.second = (mean_l - 1.0) * (mean_y2 + 2.0 * x * mean_y) +
             (mean_l2 - 3.0 * mean_l + 2.0) * mean_y * mean_y + x * x;
  return m;
}

namespace detail {

// Probability-weighted first and second slot-length sums that appear in the
// closed-form moments: idle, any success, and collisions seen by others.
struct SlotSums {
  double p_self;
  double first;   // sigma_I p_I + sigma_S (p_S^{-i} + p_S^i) + sigma_C (...)
  double second;  // same with squared lengths
  double second_without_self;
};

inline SlotSums slot_sums(const AccessVector& v, const SlotLengths& s,
                            std::size_t i) {
  const double p_self = success_prob_node(v, i);
  if (!(p_self > 0.0)) {
    throw DomainError("node " + std::to_string(i) +
                      " never updates successfully");
  }
  const double p_idle = joint_idle_prob(v);
  const double p_other = success_prob_excluding(v, i);
  const double p_col = 1.0 - idle_prob_excluding(v, i) - p_other;
  const double si = s.sigma_idle, ss = s.sigma_success, sc = s.sigma_collision;
  SlotSums r{};
  r.p_self = p_self;
  r.first = si * p_idle + ss * (p_other + p_self) + sc * p_col;
  r.second_without_self = si * si * p_idle + ss * ss * p_other + sc * sc * p_col;
  r.second = r.second_without_self + ss * ss * p_self;
  return r;
}

}  // namespace detail

// The same moments in closed form.
inline InterUpdateMoments inter_update_moments_closed(const AccessVector& v,
                                                      const SlotLengths& s,
                                                      std::size_t i) {
  const detail::SlotSums l = detail::slot_sums(v, s, i);
  const double ss = s.sigma_success;
  InterUpdateMoments m;
  m.first = l.first / l.p_self;
  m.second = 2.0 * m.first * m.first + ss * ss - 2.0 * ss * m.first +
             l.second_without_self / l.p_self;
  return m;
}

// Expanded two-term age expression.
inline double aoi_node_closed(const AccessVector& v, const SlotLengths& s,
                              std::size_t i) {
  const detail::SlotSums l = detail::slot_sums(v, s, i);
  return l.first / l.p_self + l.second / (2.0 * l.first);
}

inline double aoi_node(const AccessVector& v, const SlotLengths& s,
                       std::size_t i) {
  const InterUpdateMoments m = inter_update_moments(v, s, i);
  const double age = m.second / (2.0 * m.first) + s.sigma_success;
#ifndef NDEBUG
  const double expanded = aoi_node_closed(v, s, i);
  assert(std::abs(age - expanded) <= 1e-9 * std::abs(expanded));
#endif
  return age;
}

// Per-node WiFi throughput for homogeneous strategies, sigma_I = beta and
// sigma_S = sigma_C = 1 + beta. Zero when there are no WiFi nodes.
inline double throughput_closed_form(const StrategyPair& p,
                                     const NetworkConfig& c) {
  if (c.n_wifi == 0) return 0.0;
  const double b = c.beta;
  const double qd = std::pow(1.0 - p.tau_d, c.n_dsrc);
  const double qw = std::pow(1.0 - p.tau_w, c.n_wifi);
  return p.tau_w * std::pow(1.0 - p.tau_w, c.n_wifi - 1) * qd * (1.0 + b) /
         (1.0 - qw * qd + b);
}

// Per-node DSRC age for homogeneous strategies under the same slot lengths.
inline double aoi_closed_form(const StrategyPair& p, const NetworkConfig& c) {
  if (c.n_dsrc == 0) throw DomainError("age undefined without DSRC nodes");
  const double b = c.beta;
  const double qw = std::pow(1.0 - p.tau_w, c.n_wifi);
  const double busy = 1.0 - std::pow(1.0 - p.tau_d, c.n_dsrc) * qw;
  const double success = p.tau_d * std::pow(1.0 - p.tau_d, c.n_dsrc - 1) * qw;
  if (!(success > 0.0)) throw DomainError("DSRC nodes never update");
  return (busy + b) / success + b / 2.0 +
         (1.0 + b) * busy / (2.0 * (busy + b));
}

}  // namespace coexist

#endif  // COEXIST_METRICS_HPP_
