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

#include "coexist/equilibrium.hpp"

namespace coexist {
namespace {

NetworkConfig config(int nd, int nw, double w_idle = 0.0, double w_col = 0.0) {
  NetworkConfig c;
  c.n_dsrc = nd;
  c.n_wifi = nw;
  c.w_idle = w_idle;
  c.w_col = w_col;
  return c;
}

bool contains_pair(const std::vector<NashResult>& ne, double d, double w) {
  for (const auto& e : ne) {
    if (std::abs(e.pair.tau_d - d) < 1e-9 && std::abs(e.pair.tau_w - w) < 1e-9) {
      return true;
    }
  }
  return false;
}

// Worst leader payoff over the follower's optimal set, from a direct scan.
double pessimistic(Network leader, const PayoffSurfaces& s, std::size_t l,
                   double eps) {
  const std::size_t n = s.size();
  const auto at = [&](std::size_t f) {
    return leader == Network::kDsrc ? std::pair{l, f} : std::pair{f, l};
  };
  const Network follower = other(leader);
  double best = -INFINITY;
  for (std::size_t f = 0; f < n; ++f) {
    const auto [i, j] = at(f);
    best = std::max(best, s.payoff(follower, i, j));
  }
  double worst = INFINITY;
  for (std::size_t f = 0; f < n; ++f) {
    const auto [i, j] = at(f);
    if (within_tie(best, s.payoff(follower, i, j), eps)) {
      worst = std::min(worst, s.payoff(leader, i, j));
    }
  }
  return worst;
}

TEST(WithinTie, Relative) {
  EXPECT_TRUE(within_tie(1.0, 1.0, 0.0));
  EXPECT_TRUE(within_tie(1.0, 1.0 - 1e-10, 1e-9));
  EXPECT_FALSE(within_tie(1.0, 0.99, 1e-9));
  EXPECT_FALSE(within_tie(-1e-12, -2e-12, 1e-9));
  EXPECT_TRUE(within_tie(-1e-12, -1e-12 * (1 + 1e-12), 1e-9));
}

TEST(BestResponse, WideTieBandGivesWholeGrid) {
  const auto s = PayoffSurfaces::build(config(2, 2), GridSpec{});
  const auto br = best_response(Network::kDsrc, s, 1e9);
  for (const auto& r : br.responses) EXPECT_EQ(r.size(), s.size());
}

TEST(BestResponse, SingleDsrcNodeAlwaysMaxes) {
  for (int nw : {1, 2, 5}) {
    const auto s = PayoffSurfaces::build(config(1, nw), GridSpec{});
    const auto br = best_response(Network::kDsrc, s);
    for (std::size_t j = 0; j < s.size(); ++j) {
      ASSERT_EQ(br.response_values(j), std::vector<double>{0.99});
    }
  }
}

TEST(BestResponse, NonEmptyAndWithinTolerance) {
  const auto s = PayoffSurfaces::build(config(2, 5, 0.001, 1.001), GridSpec{});
  for (Network r : {Network::kDsrc, Network::kWifi}) {
    const auto br = best_response(r, s);
    for (std::size_t o = 0; o < s.size(); ++o) {
      ASSERT_FALSE(br.responses[o].empty());
      for (std::size_t k : br.responses[o]) {
        const auto [i, j] = r == Network::kDsrc ? std::pair{k, o} : std::pair{o, k};
        for (std::size_t x = 0; x < s.size(); ++x) {
          const auto [a, b] = r == Network::kDsrc ? std::pair{x, o} : std::pair{o, x};
          ASSERT_TRUE(s.payoff(r, a, b) <= s.payoff(r, i, j) ||
                      within_tie(s.payoff(r, a, b), s.payoff(r, i, j),
                                 kDefaultTieTolerance));
        }
      }
    }
  }
}

struct NashRow {
  int nd, nw;
  double tau_d, tau_w, age, thr;
};

TEST(EnumerateNash, FreeGameRows) {
  const std::vector<NashRow> rows{
      {1, 1, 0.99, 0.99, 101.6015, 0.0099}, {2, 1, 0.50, 0.99, 399.8980, 0.2494},
      {2, 2, 0.46, 0.46, 12.9614, 0.0803},  {2, 5, 0.44, 0.18, 9.9417, 0.0288},
      {5, 1, 0.20, 0.99, 1218.4, 0.3268},   {5, 2, 0.18, 0.44, 35.2623, 0.1060},
      {5, 5, 0.17, 0.17, 26.8100, 0.0380}};
  for (const auto& r : rows) {
    const auto ne = enumerate_nash(PayoffSurfaces::build(config(r.nd, r.nw), GridSpec{}));
    ASSERT_EQ(ne.size(), 1u) << r.nd << "," << r.nw;
    EXPECT_NEAR(ne[0].pair.tau_d, r.tau_d, 0.01 + 1e-9);
    EXPECT_NEAR(ne[0].pair.tau_w, r.tau_w, 0.01 + 1e-9);
    EXPECT_NEAR(ne[0].age, r.age, 0.05 * r.age);
    EXPECT_NEAR(ne[0].throughput, r.thr, 0.05 * r.thr);
  }
  EXPECT_TRUE(contains_pair(enumerate_nash(PayoffSurfaces::build(config(2, 2), GridSpec{})),
                            0.46, 0.46));
}

TEST(EquilibriumProperties, NashSurvivesOneShotDeviations) {
  for (int nd : {1, 2, 5}) {
    for (int nw : {1, 2, 5}) {
      for (double wc : {0.0, 1.001, 150.0}) {
        const auto s = PayoffSurfaces::build(config(nd, nw, wc > 0 ? 0.001 : 0.0, wc),
                                             GridSpec{});
        for (const auto& e : enumerate_nash(s)) {
          const std::size_t i = s.grid().index_of(e.pair.tau_d);
          const std::size_t j = s.grid().index_of(e.pair.tau_w);
          for (std::size_t k = 0; k < s.size(); ++k) {
            ASSERT_TRUE(s.dsrc_payoff(k, j) <= e.u_dsrc ||
                        within_tie(s.dsrc_payoff(k, j), e.u_dsrc, kDefaultTieTolerance));
            ASSERT_TRUE(s.wifi_payoff(i, k) <= e.u_wifi ||
                        within_tie(s.wifi_payoff(i, k), e.u_wifi, kDefaultTieTolerance));
          }
        }
      }
    }
  }
}

TEST(EquilibriumProperties, FreeNashIgnoresTheRescaleMap) {
  for (int nd : {1, 2, 5}) {
    for (int nw : {1, 2, 5}) {
      const NetworkConfig c = config(nd, nw);
      const auto a = enumerate_nash(PayoffSurfaces::build_with_map(c, GridSpec{}, {0.01, 2.0}), 0.0);
      const auto b = enumerate_nash(PayoffSurfaces::build_with_map(c, GridSpec{}, {40.0, -1.0}), 0.0);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t k = 0; k < a.size(); ++k) ASSERT_EQ(a[k].pair, b[k].pair);
    }
  }
}

TEST(SolveStackelberg, FreeTwoByTwo) {
  const auto s = PayoffSurfaces::build(config(2, 2), GridSpec{});
  const auto wifi = solve_stackelberg(Network::kWifi, s);
  EXPECT_NEAR(wifi.pair.tau_d, 0.41, 0.01 + 1e-9);
  EXPECT_NEAR(wifi.pair.tau_w, 0.30, 0.01 + 1e-9);
  EXPECT_NEAR(wifi.age, 7.3323, 0.05 * 7.3323);
  // The DSRC leader's pessimistic optimum on this grid sits at 0.29.
  const auto dsrc = solve_stackelberg(Network::kDsrc, s);
  EXPECT_NEAR(dsrc.pair.tau_d, 0.29, 1e-9);
  EXPECT_NEAR(dsrc.pair.tau_w, 0.41, 1e-9);
  EXPECT_NEAR(dsrc.age, 12.2014, 0.05 * 12.2014);
}

TEST(SolveStackelberg, BoundaryGame) {
  const auto s = PayoffSurfaces::build(config(1, 1), GridSpec{});
  for (Network l : {Network::kDsrc, Network::kWifi}) {
    const auto r = solve_stackelberg(l, s);
    EXPECT_EQ(r.pair, (StrategyPair{0.99, 0.99}));
  }
}

TEST(EquilibriumProperties, LeaderGuaranteeDominatesEveryCommitment) {
  std::mt19937_64 rng(17);
  for (int nd : {1, 2, 5}) {
    for (int nw : {2, 5}) {
      for (double wc : {0.0, 1.001}) {
        const auto s = PayoffSurfaces::build(config(nd, nw, wc > 0 ? 0.001 : 0.0, wc),
                                             GridSpec{});
        for (Network leader : {Network::kDsrc, Network::kWifi}) {
          const auto r = solve_stackelberg(leader, s);
          const std::size_t l = s.grid().index_of(r.pair.of(leader));
          const std::size_t f = s.grid().index_of(r.pair.of(other(leader)));
          ASSERT_DOUBLE_EQ(r.leader_guaranteed_payoff,
                           pessimistic(leader, s, l, kDefaultTieTolerance));
          const auto br = best_response(other(leader), s);
          ASSERT_TRUE(br.contains(l, f));
          for (int k = 0; k < 10; ++k) {
            const std::size_t x = rng() % s.size();
            const double v = pessimistic(leader, s, x, kDefaultTieTolerance);
            ASSERT_TRUE(r.leader_guaranteed_payoff >= v ||
                        within_tie(v, r.leader_guaranteed_payoff, kDefaultTieTolerance));
          }
          // With a unique follower reply everywhere, the leader does at least
          // as well as at any equilibrium.
          bool unique = true;
          for (const auto& rs : br.responses) unique = unique && rs.size() == 1;
          if (!unique) continue;
          for (const auto& e : enumerate_nash(s)) {
            const double u = leader == Network::kDsrc ? e.u_dsrc : e.u_wifi;
            ASSERT_GE(r.leader_guaranteed_payoff, u - 1e-12 * std::abs(u));
          }
        }
      }
    }
  }
}

TEST(SingleNetworkOptimum, OptimalRows) {
  struct Row {
    int n;
    double td, age, tw, thr;
  };
  for (const Row& r : {Row{2, 0.0268, 2.5576, 0.0306, 0.4847},
                       Row{4, 0.0119, 4.6505, 0.0126, 0.2407},
                       Row{10, 0.0100, 11.0723, 0.0100, 0.0946}}) {
    const auto d = single_network_optimum(Network::kDsrc, r.n, 0.001);
    const auto w = single_network_optimum(Network::kWifi, r.n, 0.001);
    EXPECT_NEAR(d.tau_star, r.td, 5e-5 + 1e-12);
    EXPECT_NEAR(d.value, r.age, 5e-5);
    EXPECT_NEAR(w.tau_star, r.tw, 5e-5 + 1e-12);
    // The four-node throughput prints one unit high in the last digit.
    EXPECT_NEAR(w.value, r.thr, r.n == 4 ? 1e-4 : 5e-5);
    EXPECT_GE(d.tau_star, 0.01);
    EXPECT_LE(w.tau_star, 0.99);
  }
}

TEST(SingleNetworkOptimum, IsExtremalOnFineScan) {
  for (int n : {1, 2, 3, 7}) {
    const auto d = single_network_optimum(Network::kDsrc, n, 0.01);
    const auto w = single_network_optimum(Network::kWifi, n, 0.01);
    NetworkConfig cd;
    cd.n_dsrc = n;
    cd.n_wifi = 0;
    cd.beta = 0.01;
    NetworkConfig cw = cd;
    cw.n_dsrc = 0;
    cw.n_wifi = n;
    for (int k = 100; k <= 9900; ++k) {
      const double t = k / 10000.0;
      ASSERT_GE(aoi_closed_form({t, 0.0}, cd), d.value - 1e-6);
      ASSERT_LE(throughput_closed_form({0.0, t}, cw), w.value + 1e-6);
    }
  }
  EXPECT_THROW(single_network_optimum(Network::kDsrc, 0, 0.001), InvalidArgument);
  EXPECT_THROW(single_network_optimum(Network::kDsrc, 2, 0.001, GridSpec{}, 0.0),
               InvalidArgument);
}

TEST(EnumerateNash, CostedSingleNodesAreLessAggressive) {
  const auto free = enumerate_nash(PayoffSurfaces::build(config(2, 2), GridSpec{}));
  const auto costed =
      enumerate_nash(PayoffSurfaces::build(config(2, 2, 0.001, 1.001), GridSpec{}));
  ASSERT_EQ(free.size(), 1u);
  ASSERT_FALSE(costed.empty());
  for (const auto& e : costed) {
    EXPECT_LT(e.pair.tau_d, free[0].pair.tau_d);
    EXPECT_LT(e.pair.tau_w, free[0].pair.tau_w);
  }
}

}  // namespace
}  // namespace coexist
