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

#ifndef COEXIST_GAME_HPP_
#define COEXIST_GAME_HPP_

// The strategic-form game: wastage cost, payoffs u_D = -age - cost and
// u_W = throughput - cost, tabulated over a strategy grid.
//
// Age and throughput live on very different scales, so the age entering
// u_D is first mapped affinely onto the range of throughput.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coexist/error.hpp"
#include "coexist/metrics.hpp"
#include "coexist/model.hpp"

namespace coexist {

struct GridSpec {
  double lo = 0.01;
  double hi = 0.99;
  double step = 0.01;

  void validate() const {
    if (!(lo > 0.0 && lo <= hi && hi < 1.0)) {
      throw InvalidArgument("grid bounds must satisfy 0 < lo <= hi < 1");
    }
    if (!(step > 0.0)) throw InvalidArgument("grid step must be > 0");
    const double n = (hi - lo) / step;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
      throw InvalidArgument("grid step must divide (hi - lo)");
    }
  }

  std::size_t size() const {
    return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  }

  // Values are snapped to 12 decimals so that e.g. 0.46 is the double 0.46.
  double value(std::size_t k) const {
    return std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
  }

  std::vector<double> values() const {
    std::vector<double> v(size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = value(k);
    return v;
  }

  std::size_t index_of(double x) const {
    const double k = std::round((x - lo) / step);
    if (k < 0.0 || k >= static_cast<double>(size()) ||
        std::abs(value(static_cast<std::size_t>(k)) - x) > 1e-9) {
      throw DomainError("strategy " + std::to_string(x) + " is not on the grid");
    }
    return static_cast<std::size_t>(k);
  }
};

// Cost charged to both players for idle and collided slots.
inline double wastage_cost(const StrategyPair& p, const NetworkConfig& c) {
  const double qd = std::pow(1.0 - p.tau_d, c.n_dsrc);
  const double qw = std::pow(1.0 - p.tau_w, c.n_wifi);
  const double idle = qd * qw;
  const double dsrc_success =
      c.n_dsrc * p.tau_d * std::pow(1.0 - p.tau_d, c.n_dsrc - 1) * qw;
  const double wifi_success =
      c.n_wifi * p.tau_w * std::pow(1.0 - p.tau_w, c.n_wifi - 1) * qd;
  return c.w_idle * idle +
         c.w_col * (1.0 - idle - dsrc_success - wifi_success);
}

// x -> scale * x + offset
struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;

  double operator()(double x) const { return scale * x + offset; }
};

// Maps [min age, max age] onto [min throughput, max throughput]. A constant
// age maps to min throughput.
inline AffineMap rescale_age(std::span<const double> age,
                             std::span<const double> throughput) {
  if (age.empty() || throughput.empty()) {
    throw InvalidArgument("rescale_age: empty surface");
  }
  const auto [amin, amax] = std::minmax_element(age.begin(), age.end());
  const auto [tmin, tmax] =
      std::minmax_element(throughput.begin(), throughput.end());
  if (*amax == *amin) return AffineMap{0.0, *tmin};
  const double scale = (*tmax - *tmin) / (*amax - *amin);
  return AffineMap{scale, *tmin - scale * *amin};
}

enum class RescaleMode {
  kGameWide,     // one map fitted over the whole grid
  kPerOpponent,  // one map per WiFi strategy, fitted over that column
};

inline std::string_view to_string(RescaleMode m) {
  return m == RescaleMode::kGameWide ? "game" : "column";
}

// Age, throughput, cost and rescaled age on every grid point. Index (i, j)
// is DSRC strategy grid.value(i) against WiFi strategy grid.value(j).
class PayoffSurfaces {
 public:
  static PayoffSurfaces build(const NetworkConfig& c, const GridSpec& g,
                              RescaleMode mode = RescaleMode::kGameWide) {
    PayoffSurfaces s(c, g);
    const std::size_t n = s.n_;
    if (mode == RescaleMode::kGameWide) {
      s.apply(rescale_age(s.age_, s.throughput_));
    } else {
      std::vector<double> col(n);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = s.age_[i * n + j];
        const AffineMap m = rescale_age(
            col, std::span<const double>(s.throughput_.data(), n * n));
        for (std::size_t i = 0; i < n; ++i) {
          s.age_rescaled_[i * n + j] = m(s.age_[i * n + j]);
        }
      }
    }
    return s;
  }

  // Surfaces with a caller-supplied increasing rescale map.
  static PayoffSurfaces build_with_map(const NetworkConfig& c,
                                       const GridSpec& g, const AffineMap& m) {
    if (!(m.scale > 0.0)) {
      throw InvalidArgument("rescale map must be strictly increasing");
    }
    PayoffSurfaces s(c, g);
    s.apply(m);
    return s;
  }

  const NetworkConfig& config() const { return config_; }
  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& strategies() const { return values_; }
  std::size_t size() const { return n_; }

  double age(std::size_t i, std::size_t j) const { return age_[idx(i, j)]; }
  double throughput(std::size_t i, std::size_t j) const {
    return throughput_[idx(i, j)];
  }
  double cost(std::size_t i, std::size_t j) const { return cost_[idx(i, j)]; }
  double age_rescaled(std::size_t i, std::size_t j) const {
    return age_rescaled_[idx(i, j)];
  }

  double dsrc_payoff(std::size_t i, std::size_t j) const {
    return -age_rescaled(i, j) - cost(i, j);
  }
  double wifi_payoff(std::size_t i, std::size_t j) const {
    return throughput(i, j) - cost(i, j);
  }
  double payoff(Network player, std::size_t i, std::size_t j) const {
    return player == Network::kDsrc ? dsrc_payoff(i, j) : wifi_payoff(i, j);
  }

  std::span<const double> age_surface() const { return age_; }
  std::span<const double> throughput_surface() const { return throughput_; }
  std::span<const double> cost_surface() const { return cost_; }
  std::span<const double> age_rescaled_surface() const { return age_rescaled_; }

  StrategyPair pair(std::size_t i, std::size_t j) const {
    return StrategyPair{values_.at(i), values_.at(j)};
  }

 private:
  PayoffSurfaces(const NetworkConfig& c, const GridSpec& g)
      : config_(c), grid_(g) {
    c.validate();
    g.validate();
    if (c.n_dsrc < 1 || c.n_wifi < 1) {
      throw InvalidArgument("the game needs n_dsrc >= 1 and n_wifi >= 1");
    }
    values_ = g.values();
    n_ = values_.size();
    age_.resize(n_ * n_);
    throughput_.resize(n_ * n_);
    cost_.resize(n_ * n_);
    age_rescaled_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const StrategyPair p{values_[i], values_[j]};
        age_[i * n_ + j] = aoi_closed_form(p, c);
        throughput_[i * n_ + j] = throughput_closed_form(p, c);
        cost_[i * n_ + j] = wastage_cost(p, c);
      }
    }
  }

  void apply(const AffineMap& m) {
    for (std::size_t k = 0; k < age_.size(); ++k) age_rescaled_[k] = m(age_[k]);
  }

  std::size_t idx(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw DomainError("grid index out of range");
    return i * n_ + j;
  }

  NetworkConfig config_;
  GridSpec grid_;
  std::vector<double> values_;
  std::size_t n_ = 0;
  std::vector<double> age_;
  std::vector<double> throughput_;
  std::vector<double> cost_;
  std::vector<double> age_rescaled_;
};

namespace detail {

inline void require_same_game(const NetworkConfig& c, const PayoffSurfaces& s) {
  const NetworkConfig& o = s.config();
  if (c.n_dsrc != o.n_dsrc || c.n_wifi != o.n_wifi || c.beta != o.beta ||
      c.w_idle != o.w_idle || c.w_col != o.w_col) {
    throw InvalidArgument("config does not match the payoff surfaces");
  }
}

}  // namespace detail

inline double dsrc_payoff(const StrategyPair& p, const NetworkConfig& c,
                          const PayoffSurfaces& s) {
  detail::require_same_game(c, s);
  return s.dsrc_payoff(s.grid().index_of(p.tau_d), s.grid().index_of(p.tau_w));
}

inline double wifi_payoff(const StrategyPair& p, const NetworkConfig& c,
                          const PayoffSurfaces& s) {
  detail::require_same_game(c, s);
  return s.wifi_payoff(s.grid().index_of(p.tau_d), s.grid().index_of(p.tau_w));
}

}  // namespace coexist

#endif  // COEXIST_GAME_HPP_
