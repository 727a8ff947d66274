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

#ifndef COEXIST_EQUILIBRIUM_HPP_
#define COEXIST_EQUILIBRIUM_HPP_

// Pure-strategy solutions of the grid game: best-response sets, every Nash
// equilibrium, pessimistic Stackelberg equilibria and the single-network
// optima used as the "optimum sharing" baseline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "coexist/error.hpp"
#include "coexist/game.hpp"
#include "coexist/metrics.hpp"
#include "coexist/model.hpp"

namespace coexist {

inline constexpr double kDefaultTieTolerance = 1e-9;

// u is tied with the best value when it falls short by at most eps relative
// to the magnitude of the two. Rescaled age payoffs can be of order 1e-12,
// so an absolute tolerance would merge genuinely different payoffs.
inline bool within_tie(double best, double u, double eps) {
  return best - u <= eps * std::max(std::abs(best), std::abs(u));
}

// For every opponent grid strategy, the responder's optimal grid strategies
// (indices into the grid), ascending.
struct BestResponseMap {
  Network responder = Network::kDsrc;
  std::vector<double> strategies;
  std::vector<std::vector<std::size_t>> responses;

  bool contains(std::size_t opponent, std::size_t response) const {
    const auto& r = responses.at(opponent);
    return std::binary_search(r.begin(), r.end(), response);
  }

  std::vector<double> response_values(std::size_t opponent) const {
    std::vector<double> out;
    for (std::size_t k : responses.at(opponent)) out.push_back(strategies[k]);
    return out;
  }
};

inline BestResponseMap best_response(Network responder, const PayoffSurfaces& s,
                                     double eps_tie = kDefaultTieTolerance) {
  const std::size_t n = s.size();
  BestResponseMap br;
  br.responder = responder;
  br.strategies = s.strategies();
  br.responses.resize(n);
  // u(opp, own) in the responder's own orientation.
  const auto u = [&](std::size_t opp, std::size_t own) {
    return responder == Network::kDsrc ? s.dsrc_payoff(own, opp)
                                       : s.wifi_payoff(opp, own);
  };
  for (std::size_t opp = 0; opp < n; ++opp) {
    double best = u(opp, 0);
    for (std::size_t own = 1; own < n; ++own) best = std::max(best, u(opp, own));
    for (std::size_t own = 0; own < n; ++own) {
      if (within_tie(best, u(opp, own), eps_tie)) {
        br.responses[opp].push_back(own);
      }
    }
  }
  return br;
}

struct NashResult {
  StrategyPair pair;
  double age = 0.0;
  double throughput = 0.0;
  double u_dsrc = 0.0;
  double u_wifi = 0.0;
};

// Every grid pair of mutual best responses, ordered by (tau_d, tau_w).
// An empty result is a legitimate outcome on a finite grid.
inline std::vector<NashResult> enumerate_nash(
    const PayoffSurfaces& s, double eps_tie = kDefaultTieTolerance) {
  const BestResponseMap br_d = best_response(Network::kDsrc, s, eps_tie);
  const BestResponseMap br_w = best_response(Network::kWifi, s, eps_tie);
  std::vector<NashResult> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j : br_w.responses[i]) {
      if (!br_d.contains(j, i)) continue;
      out.push_back(NashResult{s.pair(i, j), s.age(i, j), s.throughput(i, j),
                               s.dsrc_payoff(i, j), s.wifi_payoff(i, j)});
    }
  }
  return out;
}

struct StackelbergResult {
  Network leader = Network::kDsrc;
  StrategyPair pair;
  double age = 0.0;
  double throughput = 0.0;
  // Leader's payoff against the worst reply in the follower's optimal set.
  double leader_guaranteed_payoff = 0.0;
};

// Pessimistic Stackelberg equilibrium: the leader maximises its worst-case
// payoff over the follower's optimal reaction set. Leader ties go to the
// smallest strategy; the reported follower reply is the worst one for the
// leader (smallest strategy among equals).
inline StackelbergResult solve_stackelberg(
    Network leader, const PayoffSurfaces& s,
    double eps_tie = kDefaultTieTolerance) {
  const Network follower = other(leader);
  const BestResponseMap br = best_response(follower, s, eps_tie);
  const auto at = [&](std::size_t l, std::size_t f) {
    return leader == Network::kDsrc ? std::pair{l, f} : std::pair{f, l};
  };

  std::optional<double> best;
  std::size_t best_l = 0, best_f = 0;
  for (std::size_t l = 0; l < s.size(); ++l) {
    double worst = 0.0;
    std::size_t worst_f = 0;
    bool first = true;
    for (std::size_t f : br.responses[l]) {
      const auto [i, j] = at(l, f);
      const double u = s.payoff(leader, i, j);
      if (first || u < worst) {
        worst = u;
        worst_f = f;
        first = false;
      }
    }
    if (!best || (worst > *best && !within_tie(worst, *best, eps_tie))) {
      best = worst;
      best_l = l;
      best_f = worst_f;
    }
  }
  const auto [i, j] = at(best_l, best_f);
  return StackelbergResult{leader, s.pair(i, j), s.age(i, j),
                           s.throughput(i, j), *best};
}

struct SingleNetworkOptimum {
  Network kind = Network::kDsrc;
  int n = 1;
  double tau_star = 0.0;
  double value = 0.0;  // minimal age (DSRC) or maximal throughput (WiFi)
};

// Best access probability for a network that has the medium to itself:
// coarse pass over the grid, then a scan at `refine` resolution around the
// coarse optimum, clamped to the grid bounds.
inline SingleNetworkOptimum single_network_optimum(Network kind, int n,
                                                   double beta,
                                                   const GridSpec& grid = {},
                                                   double refine = 1e-5) {
  if (n < 1) throw InvalidArgument("single network needs n >= 1");
  grid.validate();
  if (!(refine > 0.0)) throw InvalidArgument("refine must be > 0");
  NetworkConfig c;
  c.beta = beta;
  c.n_dsrc = kind == Network::kDsrc ? n : 0;
  c.n_wifi = kind == Network::kWifi ? n : 0;
  c.validate();

  // Larger is better in both cases.
  const auto score = [&](double tau) {
    if (kind == Network::kDsrc) {
      return -aoi_closed_form(StrategyPair{tau, 0.0}, c);
    }
    return throughput_closed_form(StrategyPair{0.0, tau}, c);
  };

  double best_tau = grid.value(0);
  double best = score(best_tau);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t = grid.value(k);
    const double v = score(t);
    if (v > best) {
      best = v;
      best_tau = t;
    }
  }
  const double lo = std::max(grid.lo, best_tau - grid.step);
  const double hi = std::min(grid.hi, best_tau + grid.step);
  const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / refine));
  for (std::size_t m = 0; m <= steps; ++m) {
    const double t = std::round((lo + static_cast<double>(m) * refine) * 1e12) / 1e12;
    const double v = score(t);
    if (v > best) {
      best = v;
      best_tau = t;
    }
  }
  return SingleNetworkOptimum{kind, n, best_tau,
                              kind == Network::kDsrc ? -best : best};
}

}  // namespace coexist

#endif  // COEXIST_EQUILIBRIUM_HPP_
