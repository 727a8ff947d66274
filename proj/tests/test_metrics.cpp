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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coexist/metrics.hpp"

namespace coexist {
namespace {

const SlotLengths kSlots = SlotLengths::from_beta(0.001);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Moments by summing over the number of slots L up to and including the
// update, using the conditional variance of the residual slots directly.
InterUpdateMoments series_moments(const AccessVector& v, const SlotLengths& s,
                                  std::size_t i) {
  const double p = success_prob_node(v, i);
  double ey = 0.0, vy = 0.0;
  if (p < 1.0) {
    const ResidualSlotPmf y = residual_slot_pmf(v, s, i);
    ey = y.mean();
    vy = y.second_moment() - ey * ey;
  }
  const double x = s.sigma_success;
  InterUpdateMoments m;
  double weight = p;
  for (int l = 1; l < 2'000'000 && weight > 1e-300; ++l) {
    const double k = l - 1;
    const double mean = k * ey + x;
    m.first += weight * mean;
    m.second += weight * (k * vy + mean * mean);
    weight *= 1.0 - p;
  }
  return m;
}

AccessVector random_vector(std::mt19937_64& rng, std::size_t max_nodes,
                           double max_tau = 0.9) {
  std::uniform_int_distribution<std::size_t> count(1, max_nodes);
  std::uniform_real_distribution<double> tau(0.02, max_tau);
  const std::size_t n = count(rng);
  std::vector<double> taus(n);
  std::vector<Network> tags(n);
  for (std::size_t i = 0; i < n; ++i) {
    taus[i] = tau(rng);
    tags[i] = i % 2 ? Network::kWifi : Network::kDsrc;
  }
  return AccessVector(taus, tags);
}

NetworkConfig config(int nd, int nw, double beta = 0.001) {
  NetworkConfig c;
  c.n_dsrc = nd;
  c.n_wifi = nw;
  c.beta = beta;
  return c;
}

TEST(PerNodeThroughput, HandValues) {
  const AccessVector v({0.2, 0.2, 0.2}, {Network::kDsrc, Network::kWifi, Network::kWifi});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(per_node_throughput(v, kSlots, i), 0.128 * 1.001 / 0.489, 1e-12);
  }
  EXPECT_NEAR(per_node_throughput(v, kSlots, 0), 0.26203, 1e-5);
  const AccessVector z({0.0, 0.4}, {Network::kDsrc, Network::kWifi});
  EXPECT_EQ(per_node_throughput(z, kSlots, 0), 0.0);
}

TEST(ResidualSlotPmf, HandValues) {
  const AccessVector two({0.5, 0.5}, {Network::kDsrc, Network::kWifi});
  const ResidualSlotPmf y = residual_slot_pmf(two, kSlots, 0);
  EXPECT_NEAR(y.p_idle_given_no_success, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(y.p_other_success_given_no_success, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(y.p_collision_given_no_success, 1.0 / 3.0, 1e-15);

  const ResidualSlotPmf one = residual_slot_pmf(AccessVector({0.3}, {Network::kDsrc}), kSlots, 0);
  EXPECT_DOUBLE_EQ(one.p_idle_given_no_success, 1.0);
  EXPECT_EQ(one.p_other_success_given_no_success, 0.0);
  EXPECT_NEAR(one.p_collision_given_no_success, 0.0, 1e-15);

  EXPECT_THROW(residual_slot_pmf(AccessVector({1.0}, {Network::kDsrc}), kSlots, 0),
               DomainError);
}

TEST(InterUpdateMoments, HandValues) {
  const InterUpdateMoments sure =
      inter_update_moments(AccessVector({1.0}, {Network::kDsrc}), kSlots, 0);
  EXPECT_DOUBLE_EQ(sure.first, 1.001);
  EXPECT_DOUBLE_EQ(sure.second, 1.001 * 1.001);

  for (double beta : {0.001, 0.3, 0.9}) {
    const SlotLengths s = SlotLengths::from_beta(beta);
    const InterUpdateMoments half =
        inter_update_moments(AccessVector({0.5}, {Network::kDsrc}), s, 0);
    EXPECT_NEAR(half.first, (beta * 0.5 + (1.0 + beta) * 0.5) / 0.5, 1e-14);
  }
  EXPECT_THROW(inter_update_moments(AccessVector({0.0, 0.5}, {Network::kDsrc, Network::kWifi}),
                                    kSlots, 0),
               DomainError);
  EXPECT_THROW(aoi_node(AccessVector({0.0}, {Network::kDsrc}), kSlots, 0), DomainError);
}

TEST(AoiNode, HandValues) {
  EXPECT_NEAR(aoi_node(AccessVector({1.0}, {Network::kDsrc}), kSlots, 0), 1.5 * 1.001, 1e-14);
  const AccessVector v = AccessVector::homogeneous(config(1, 1), {0.2, 0.2});
  EXPECT_NEAR(aoi_node(v, kSlots, 0), 2.7559, 5e-5);
  const AccessVector alone = AccessVector::homogeneous(config(2, 0), {0.0268, 0.0});
  EXPECT_NEAR(aoi_node(alone, kSlots, 0), 2.5576, 5e-5);
}

TEST(ClosedForms, TableValues) {
  EXPECT_NEAR(throughput_closed_form({0.0, 0.0306}, config(0, 2)), 0.4847, 5e-5);
  EXPECT_NEAR(aoi_closed_form({0.0268, 0.0}, config(2, 0)), 2.5576, 5e-5);
  EXPECT_NEAR(aoi_closed_form({0.01, 0.0}, config(10, 0)), 11.0723, 5e-5);
  EXPECT_EQ(throughput_closed_form({0.3, 0.0}, config(2, 2)), 0.0);
  EXPECT_EQ(throughput_closed_form({0.3, 0.3}, config(2, 0)), 0.0);
  EXPECT_THROW(aoi_closed_form({0.3, 0.3}, config(0, 2)), DomainError);
  EXPECT_THROW(aoi_closed_form({0.0, 0.3}, config(2, 2)), DomainError);
}

TEST(MetricsProperties, MomentsMatchSeriesOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const AccessVector v = random_vector(rng, 3, 0.7);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const InterUpdateMoments m = inter_update_moments(v, kSlots, i);
      const InterUpdateMoments o = series_moments(v, kSlots, i);
      ASSERT_LT(rel(m.first, o.first), 1e-9);
      ASSERT_LT(rel(m.second, o.second), 1e-9);
      ASSERT_GT(m.first, 0.0);
      ASSERT_GE(m.second, m.first * m.first);
    }
  }
}

TEST(MetricsProperties, CompositionMatchesClosedForm) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const AccessVector v = random_vector(rng, 8);
    const SlotLengths s = SlotLengths::from_beta(trial % 2 ? 0.001 : 0.2);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const InterUpdateMoments a = inter_update_moments(v, s, i);
      const InterUpdateMoments b = inter_update_moments_closed(v, s, i);
      ASSERT_LT(rel(a.first, b.first), 1e-10);
      ASSERT_LT(rel(a.second, b.second), 1e-10);
      ASSERT_LT(rel(aoi_node(v, s, i), aoi_node_closed(v, s, i)), 1e-10);
      const ResidualSlotPmf y = residual_slot_pmf(v, s, i);
      ASSERT_NEAR(y.p_idle_given_no_success + y.p_other_success_given_no_success +
                      y.p_collision_given_no_success,
                  1.0, 1e-12);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) total += per_node_throughput(v, s, i);
    ASSERT_LE(total, 1.0 + 1e-12);
  }
}

TEST(MetricsProperties, ClosedFormsMatchGeneralPathOnGrid) {
  for (int nd : {1, 2, 5}) {
    for (int nw : {1, 2, 5}) {
      const NetworkConfig c = config(nd, nw);
      for (int a = 1; a <= 99; ++a) {
        for (int b = 1; b <= 99; ++b) {
          const StrategyPair p{a / 100.0, b / 100.0};
          const AccessVector v = AccessVector::homogeneous(c, p);
          ASSERT_LT(rel(throughput_closed_form(p, c),
                        per_node_throughput(v, kSlots, v.first_of(Network::kWifi))),
                    1e-10);
          ASSERT_LT(rel(aoi_closed_form(p, c), aoi_node(v, kSlots, 0)), 1e-10);
        }
      }
    }
  }
}

TEST(MetricsProperties, SingleDsrcAgeFallsWithOwnAccess) {
  for (int nw : {1, 2, 5}) {
    const NetworkConfig c = config(1, nw);
    for (int b = 1; b <= 99; b += 7) {
      for (int a = 1; a < 99; ++a) {
        ASSERT_GE(aoi_closed_form({a / 100.0, b / 100.0}, c),
                  aoi_closed_form({(a + 1) / 100.0, b / 100.0}, c));
      }
    }
  }
}

TEST(MetricsProperties, MonotoneInOpponentCount) {
  for (int a = 1; a <= 99; a += 4) {
    for (int b = 1; b <= 99; b += 4) {
      const StrategyPair p{a / 100.0, b / 100.0};
      for (int n = 1; n < 6; ++n) {
        for (int own : {1, 2, 5}) {
          ASSERT_LT(aoi_closed_form(p, config(own, n)),
                    aoi_closed_form(p, config(own, n + 1)));
          ASSERT_GT(throughput_closed_form(p, config(n, own)),
                    throughput_closed_form(p, config(n + 1, own)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace coexist
