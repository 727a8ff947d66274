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

#ifndef COEXIST_ANALYSIS_HPP_
#define COEXIST_ANALYSIS_HPP_

// Closed-form derivatives of the (unrescaled) negated payoffs with respect
// to each player's own strategy, split into the terms used to argue
// quasi-convexity of -u, plus a numerical verifier of the sign pattern.
//
//   d(-u_D)/d tau_D = alpha1 + alpha2 + alpha_col - alpha_idle
//   d(-u_W)/d tau_W = alpha   + alpha_col - alpha_idle
//
// Rescaling the age by an increasing affine map scales alpha1 + alpha2 by a
// positive constant and leaves quasi-convexity intact.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "coexist/error.hpp"
#include "coexist/game.hpp"
#include "coexist/model.hpp"

namespace coexist {

struct AgeDerivativeTerms {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha_col = 0.0;
  double alpha_idle = 0.0;
  double q_w = 0.0;        // (1 - tau_W)^N_W
  double q_w_prime = 0.0;  // N_W tau_W (1 - tau_W)^(N_W - 1)
  double total = 0.0;
};

struct ThrDerivativeTerms {
  double alpha = 0.0;
  double alpha_col = 0.0;
  double alpha_idle = 0.0;
  double q_d = 0.0;
  double q_d_prime = 0.0;
  double total = 0.0;
};

inline AgeDerivativeTerms age_payoff_derivative_terms(const StrategyPair& p,
                                                      const NetworkConfig& c) {
  if (!(p.tau_d > 0.0 && p.tau_d < 1.0)) {
    throw InvalidArgument("tau_d must lie in (0, 1)");
  }
  if (c.n_dsrc < 1) throw InvalidArgument("n_dsrc must be >= 1");
  const double b = c.beta;
  const int n = c.n_dsrc;
  const double t = p.tau_d;
  AgeDerivativeTerms d;
  d.q_w = std::pow(1.0 - p.tau_w, c.n_wifi);
  d.q_w_prime = c.n_wifi * p.tau_w * std::pow(1.0 - p.tau_w, c.n_wifi - 1);
  const double qd = std::pow(1.0 - t, n);
  const double qd_1 = std::pow(1.0 - t, n - 1);
  const double den = 1.0 + b - qd * d.q_w;
  d.alpha1 = b * (1.0 + b) / 2.0 * d.q_w * n * qd_1 / (den * den);
  d.alpha2 = (1.0 + (1.0 + b) * (n * t - 1.0) / (d.q_w * qd)) / (t * t);
  d.alpha_col =
      c.w_col * (d.q_w * n * (n - 1) * t * std::pow(1.0 - t, n - 2) +
                 d.q_w_prime * n * qd_1);
  d.alpha_idle = c.w_idle * d.q_w * n * qd_1;
  d.total = d.alpha1 + d.alpha2 + d.alpha_col - d.alpha_idle;
  return d;
}

// alpha1 written with the denominator that the tau' argument inspects.
inline double alpha1_rewritten(const StrategyPair& p, const NetworkConfig& c) {
  const double b = c.beta;
  const int n = c.n_dsrc;
  const double q_w = std::pow(1.0 - p.tau_w, c.n_wifi);
  const double inner = 1.0 - std::pow(1.0 - p.tau_d, n) * q_w / (1.0 + b);
  return q_w * n * std::pow(1.0 - p.tau_d, n - 1) /
         (2.0 * (1.0 + b) / b * inner * inner);
}

inline ThrDerivativeTerms wifi_payoff_derivative_terms(const StrategyPair& p,
                                                       const NetworkConfig& c) {
  if (!(p.tau_w > 0.0 && p.tau_w < 1.0)) {
    throw InvalidArgument("tau_w must lie in (0, 1)");
  }
  if (c.n_wifi < 1) throw InvalidArgument("n_wifi must be >= 1");
  const double b = c.beta;
  const int n = c.n_wifi;
  const double t = p.tau_w;
  ThrDerivativeTerms d;
  d.q_d = std::pow(1.0 - p.tau_d, c.n_dsrc);
  d.q_d_prime = c.n_dsrc * p.tau_d * std::pow(1.0 - p.tau_d, c.n_dsrc - 1);
  const double qw = std::pow(1.0 - t, n);
  const double qw_1 = std::pow(1.0 - t, n - 1);
  const double den = 1.0 - d.q_d * qw + b;
  d.alpha = d.q_d * (1.0 + b) * std::pow(1.0 - t, n - 2) *
            (d.q_d * qw + (1.0 + b) * (t * n - 1.0)) / (den * den);
  d.alpha_col = c.w_col * (d.q_d * n * (n - 1) * t * std::pow(1.0 - t, n - 2) +
                           d.q_d_prime * n * qw_1);
  d.alpha_idle = c.w_idle * d.q_d * n * qw_1;
  d.total = d.alpha + d.alpha_col - d.alpha_idle;
  return d;
}

// Upper bound on the tau_D at which the alpha1 denominator reaches one,
// using q_w < 1. Absent when the bound is not positive, which for this
// expression happens only once beta >= 1; beta > 0 is all that is required.
inline std::optional<double> tau_prime_upper_bound(double beta, int n_d) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be > 0");
  if (n_d < 1) throw InvalidArgument("n_d must be >= 1");
  const double base = (1.0 + beta) - std::sqrt(beta * (1.0 + beta) / 2.0);
  const double bound = 1.0 - std::pow(base, 1.0 / n_d);
  if (!(bound > 0.0)) return std::nullopt;
  return bound;
}

// The same crossing point for a given q_w, when it exists in (0, 1).
inline std::optional<double> tau_prime(double beta, int n_d, double q_w) {
  if (!(q_w > 0.0 && q_w <= 1.0)) throw InvalidArgument("q_w must lie in (0, 1]");
  const double base = (1.0 + beta) - std::sqrt(beta * (1.0 + beta) / 2.0);
  const double ratio = base / q_w;
  if (!(ratio < 1.0)) return std::nullopt;
  return 1.0 - std::pow(ratio, 1.0 / n_d);
}

inline double alpha2(double tau_d, int n_d, double beta, double q_w) {
  return (1.0 + (1.0 + beta) * (n_d * tau_d - 1.0) /
                    (q_w * std::pow(1.0 - tau_d, n_d))) /
         (tau_d * tau_d);
}

// Root of 1 - n tau = (q / (1 + beta)) (1 - tau)^n on (0, 1/n], by bisection.
// The left end is positive and for n >= 2 the right end is negative. For
// n = 1 the equation only vanishes at tau = 1, which is returned.
// With q = q_w this is where alpha2 changes sign; with q = q_d it is where
// the WiFi alpha term does.
inline double alpha2_root(int n_d, double beta, double q_w) {
  if (n_d < 1) throw InvalidArgument("n_d must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0, 1)");
  if (!(q_w > 0.0 && q_w <= 1.0)) throw InvalidArgument("q_w must lie in (0, 1]");
  if (n_d == 1) return 1.0;
  const auto g = [&](double t) {
    return 1.0 - n_d * t - q_w / (1.0 + beta) * std::pow(1.0 - t, n_d);
  };
  double lo = 0.0;
  double hi = 1.0 / n_d;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct QuasiConcavityReport {
  Network player = Network::kDsrc;
  NetworkConfig config;
  double fixed_opponent = 0.0;
  std::size_t points = 0;
  std::size_t sign_change_count = 0;
  // At most one change, and a single change goes from negative to positive
  // as the player's own strategy increases.
  bool sign_pattern_ok = true;
  std::optional<double> sign_change_at;
  std::optional<double> tau_prime_bound;
  std::optional<double> alpha2_root;
};

// Scan points closer than this to 0 or 1 are dropped.
inline constexpr double kScanBoundaryMargin = 1e-4;
// Derivative values this small take the sign of their neighbours.
inline constexpr double kSignBridge = 1e-12;

inline QuasiConcavityReport verify_quasiconcavity(Network player,
                                                  const NetworkConfig& c,
                                                  double fixed_opponent,
                                                  const GridSpec& scan) {
  c.validate();
  scan.validate();
  if (c.n_dsrc < 1 || c.n_wifi < 1) {
    throw InvalidArgument("the game needs n_dsrc >= 1 and n_wifi >= 1");
  }
  if (!(fixed_opponent > 0.0 && fixed_opponent < 1.0)) {
    throw InvalidArgument("fixed opponent strategy must lie in (0, 1)");
  }
  QuasiConcavityReport r;
  r.player = player;
  r.config = c;
  r.fixed_opponent = fixed_opponent;

  int last_sign = 0;
  int first_sign = 0;
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const double t = scan.value(k);
    if (t < kScanBoundaryMargin || t > 1.0 - kScanBoundaryMargin) continue;
    ++r.points;
    const double d =
        player == Network::kDsrc
            ? age_payoff_derivative_terms(StrategyPair{t, fixed_opponent}, c).total
            : wifi_payoff_derivative_terms(StrategyPair{fixed_opponent, t}, c).total;
    if (std::abs(d) < kSignBridge) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (first_sign == 0) first_sign = sign;
    if (last_sign != 0 && sign != last_sign) {
      ++r.sign_change_count;
      if (!r.sign_change_at) r.sign_change_at = t;
    }
    last_sign = sign;
  }
  r.sign_pattern_ok = r.sign_change_count == 0 ||
                      (r.sign_change_count == 1 && first_sign < 0);

  if (player == Network::kDsrc) {
    const double q_w = std::pow(1.0 - fixed_opponent, c.n_wifi);
    r.tau_prime_bound = tau_prime_upper_bound(c.beta, c.n_dsrc);
    r.alpha2_root = alpha2_root(c.n_dsrc, c.beta, q_w);
  } else {
    const double q_d = std::pow(1.0 - fixed_opponent, c.n_dsrc);
    r.alpha2_root = alpha2_root(c.n_wifi, c.beta, q_d);
  }
  return r;
}

}  // namespace coexist

#endif  // COEXIST_ANALYSIS_HPP_
