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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "coexist/coexist.hpp"

namespace coexist::cli {
namespace {

std::pair<double, double> parse_number_pair(const std::string& s,
                                            const char* what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument(std::string(what) + ": expected a:b, got '" + s + "'");
  }
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    const double x = std::stod(a, &used_a);
    const double y = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::logic_error&) {
    throw InvalidArgument(std::string(what) + ": cannot parse '" + s + "'");
  }
}

Network network_of(const std::string& s, const char* field) {
  try {
    return parse_network(s);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string(field) + ": " + e.what());
  }
}

std::vector<Network> players_of(const std::string& s, const char* field) {
  if (s == "both") return {Network::kDsrc, Network::kWifi};
  return {network_of(s, field)};
}

NetworkConfig game_config(const RunConfig& cfg, int nd, int nw, double w_idle,
                          double w_col) {
  NetworkConfig c;
  c.n_dsrc = nd;
  c.n_wifi = nw;
  c.beta = cfg.beta;
  c.w_idle = w_idle;
  c.w_col = w_col;
  return c;
}

Cell num(double x) { return Cell{x}; }
Cell integer(long long x) { return Cell{static_cast<std::int64_t>(x)}; }
Cell text(std::string_view s) { return Cell{std::string(s)}; }
Cell maybe(const std::optional<double>& x) {
  return x ? Cell{*x} : Cell{std::monostate{}};
}

Table nash_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"n_dsrc", "n_wifi", "tau_d", "tau_w",
               "age",    "throughput", "u_dsrc", "u_wifi"};
  for (const auto& [nd, nw] : cfg.node_pairs()) {
    const auto s = PayoffSurfaces::build(
        game_config(cfg, nd, nw, cfg.w_idle, cfg.w_col), cfg.grid, cfg.rescale);
    const auto ne = enumerate_nash(s, cfg.eps_tie);
    if (ne.empty()) {
      std::cerr << "note: no grid Nash equilibrium for n_dsrc=" << nd
                << " n_wifi=" << nw << "\n";
    }
    for (const auto& e : ne) {
      t.rows.push_back({integer(nd), integer(nw), num(e.pair.tau_d),
                        num(e.pair.tau_w), num(e.age), num(e.throughput),
                        num(e.u_dsrc), num(e.u_wifi)});
    }
  }
  return t;
}

Table stackelberg_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"leader", "n_dsrc", "n_wifi", "tau_d", "tau_w",
               "age",    "throughput", "leader_payoff"};
  const auto leaders = players_of(cfg.leader, "leader");
  const auto pairs = cfg.node_pairs();
  for (Network leader : leaders) {
    for (const auto& [nd, nw] : pairs) {
      const auto s = PayoffSurfaces::build(
          game_config(cfg, nd, nw, cfg.w_idle, cfg.w_col), cfg.grid,
          cfg.rescale);
      const auto se = solve_stackelberg(leader, s, cfg.eps_tie);
      t.rows.push_back({text(to_string(leader)), integer(nd), integer(nw),
                        num(se.pair.tau_d), num(se.pair.tau_w), num(se.age),
                        num(se.throughput), num(se.leader_guaranteed_payoff)});
    }
  }
  return t;
}

Table optimum_table(const RunConfig& cfg) {
  Table t;
  const bool dsrc = cfg.kind == "both" || cfg.kind == "dsrc";
  const bool wifi = cfg.kind == "both" || cfg.kind == "wifi";
  t.columns = {"n"};
  if (dsrc) {
    t.columns.push_back("tau_d_star");
    t.columns.push_back("age_star");
  }
  if (wifi) {
    t.columns.push_back("tau_w_star");
    t.columns.push_back("throughput_star");
  }
  std::vector<int> ns = cfg.n;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns) {
    std::vector<Cell> row{integer(n)};
    if (dsrc) {
      const auto o = single_network_optimum(Network::kDsrc, n, cfg.beta,
                                            cfg.grid, cfg.refine);
      row.push_back(num(o.tau_star));
      row.push_back(num(o.value));
    }
    if (wifi) {
      const auto o = single_network_optimum(Network::kWifi, n, cfg.beta,
                                            cfg.grid, cfg.refine);
      row.push_back(num(o.tau_star));
      row.push_back(num(o.value));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table metrics_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"n_dsrc", "n_wifi", "tau_d", "tau_w", "age", "throughput", "cost"};
  const Network varied = network_of(cfg.vary, "vary");
  std::vector<double> opps = cfg.tau_opp;
  std::sort(opps.begin(), opps.end());
  for (const auto& [nd, nw] : cfg.node_pairs()) {
    const NetworkConfig c = game_config(cfg, nd, nw, cfg.w_idle, cfg.w_col);
    c.validate();
    for (double opp : opps) {
      for (double tau : cfg.grid.values()) {
        const StrategyPair p = varied == Network::kDsrc ? StrategyPair{tau, opp}
                                                        : StrategyPair{opp, tau};
        t.rows.push_back({integer(nd), integer(nw), num(p.tau_d), num(p.tau_w),
                          nd > 0 ? num(aoi_closed_form(p, c)) : Cell{},
                          num(throughput_closed_form(p, c)),
                          num(wastage_cost(p, c))});
      }
    }
  }
  return t;
}

Table verify_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"player",        "n_dsrc",         "n_wifi",
               "w_idle",        "w_col",          "fixed_opponent",
               "points",        "sign_changes",   "sign_pattern_ok",
               "sign_change_at", "tau_prime_bound", "alpha2_root"};
  const GridSpec scan{cfg.scan_step, 1.0 - cfg.scan_step, cfg.scan_step};
  std::vector<double> opps = cfg.tau_opp;
  std::sort(opps.begin(), opps.end());
  for (Network player : players_of(cfg.player, "player")) {
    for (const auto& [nd, nw] : cfg.node_pairs()) {
      const NetworkConfig c = game_config(cfg, nd, nw, cfg.w_idle, cfg.w_col);
      for (double opp : opps) {
        const auto r = verify_quasiconcavity(player, c, opp, scan);
        t.rows.push_back(
            {text(to_string(player)), integer(nd), integer(nw), num(c.w_idle),
             num(c.w_col), num(opp), integer(static_cast<long long>(r.points)),
             integer(static_cast<long long>(r.sign_change_count)),
             text(r.sign_pattern_ok ? "true" : "false"), maybe(r.sign_change_at),
             maybe(r.tau_prime_bound), maybe(r.alpha2_root)});
      }
    }
  }
  return t;
}

Table simulate_table(const RunConfig& cfg) {
  std::vector<double> taus;
  std::vector<Network> tags;
  if (!cfg.dsrc_taus.empty() || !cfg.wifi_taus.empty()) {
    for (double x : cfg.dsrc_taus) {
      taus.push_back(x);
      tags.push_back(Network::kDsrc);
    }
    for (double x : cfg.wifi_taus) {
      taus.push_back(x);
      tags.push_back(Network::kWifi);
    }
  } else {
    const auto pairs = cfg.node_pairs();
    if (pairs.size() != 1) {
      throw InvalidArgument("simulate: give exactly one --nd and one --nw");
    }
    NetworkConfig c = game_config(cfg, pairs[0].first, pairs[0].second, 0, 0);
    c.validate();
    const AccessVector v = AccessVector::homogeneous(c, {cfg.tau_d, cfg.tau_w});
    taus.assign(v.taus().begin(), v.taus().end());
    tags.assign(v.tags().begin(), v.tags().end());
  }
  const AccessVector v(taus, tags);
  const SlotLengths s = SlotLengths::from_beta(cfg.beta);
  SimConfig sim = SimConfig::with_horizon(cfg.horizon, cfg.seed);
  const SimResult r = run_simulation(v, s, sim);

  Table t;
  t.columns = {"node",          "network",        "tau",
               "sim_throughput", "throughput_se", "throughput",
               "sim_age",        "age_se",        "age",
               "sim_z1",         "z1_se",         "z1",
               "sim_z2",         "z2_se",         "z2",
               "updates",        "sim_p_idle",    "p_idle",
               "sim_p_success",  "p_success",     "sim_p_collision",
               "p_collision"};
  const double p_idle = joint_idle_prob(v);
  const double p_succ = success_prob_total(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const NodeSimStats& st = r.nodes[i];
    const bool updates = success_prob_node(v, i) > 0.0;
    const auto m = updates ? std::optional(inter_update_moments(v, s, i))
                           : std::nullopt;
    t.rows.push_back(
        {integer(static_cast<long long>(i)), text(to_string(v.tag(i))),
         num(v.tau(i)), num(st.throughput.mean), num(st.throughput.std_error),
         num(per_node_throughput(v, s, i)), num(st.age.mean),
         num(st.age.std_error), updates ? num(aoi_node(v, s, i)) : Cell{},
         num(st.z_first.mean), num(st.z_first.std_error),
         m ? num(m->first) : Cell{}, num(st.z_second.mean),
         num(st.z_second.std_error), m ? num(m->second) : Cell{},
         integer(static_cast<long long>(st.updates)),
         num(r.idle_frequency.mean), num(p_idle), num(r.success_frequency.mean),
         num(p_succ), num(r.collision_frequency.mean),
         num(1.0 - p_idle - p_succ)});
  }
  return t;
}

Table sweep_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"solution", "n_dsrc", "n_wifi", "w_idle", "w_col",
               "tau_d",    "tau_w",  "age",    "throughput"};
  std::vector<std::pair<double, double>> weights = cfg.weights;
  if (weights.empty()) weights.push_back({cfg.w_idle, cfg.w_col});
  std::sort(weights.begin(), weights.end());
  const bool nash = cfg.solve == "all" || cfg.solve == "nash";
  const bool stackelberg = cfg.solve == "all" || cfg.solve == "stackelberg";

  using Rows = std::vector<std::vector<Cell>>;
  std::vector<std::future<Rows>> cells;
  for (const auto& [nd, nw] : cfg.node_pairs()) {
    for (const auto& [wi, wc] : weights) {
      const NetworkConfig c = game_config(cfg, nd, nw, wi, wc);
      cells.push_back(std::async(std::launch::async, [&cfg, c, nash,
                                                      stackelberg] {
        Rows rows;
        const auto s = PayoffSurfaces::build(c, cfg.grid, cfg.rescale);
        const auto row = [&](std::string_view kind, const StrategyPair& p,
                             double age, double thr) {
          rows.push_back({text(kind), integer(c.n_dsrc), integer(c.n_wifi),
                          num(c.w_idle), num(c.w_col), num(p.tau_d),
                          num(p.tau_w), num(age), num(thr)});
        };
        if (nash) {
          for (const auto& e : enumerate_nash(s, cfg.eps_tie)) {
            row("nash", e.pair, e.age, e.throughput);
          }
        }
        if (stackelberg) {
          for (Network leader : {Network::kDsrc, Network::kWifi}) {
            const auto se = solve_stackelberg(leader, s, cfg.eps_tie);
            row(leader == Network::kDsrc ? "se_dsrc" : "se_wifi", se.pair,
                se.age, se.throughput);
          }
        }
        return rows;
      }));
    }
  }
  for (auto& f : cells) {
    for (auto& r : f.get()) t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace

std::vector<std::pair<int, int>> RunConfig::node_pairs() const {
  std::vector<std::pair<int, int>> out = pairs;
  if (out.empty()) {
    for (int d : nd) {
      for (int w : nw) out.emplace_back(d, w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void RunConfig::validate() const {
  static const std::vector<std::string> kCommands{
      "metrics", "nash", "stackelberg", "optimum", "verify", "simulate", "sweep"};
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw InvalidArgument("command: unknown subcommand '" + command + "'");
  }
  if (format != "csv" && format != "json") {
    throw InvalidArgument("format: expected csv or json");
  }
  try {
    grid.validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("grid-lo/grid-hi/grid-step: ") + e.what());
  }
  const auto game_like = command == "nash" || command == "stackelberg" ||
                         command == "verify" || command == "sweep";
  for (const auto& [d, w] : node_pairs()) {
    NetworkConfig c;
    c.n_dsrc = d;
    c.n_wifi = w;
    c.beta = beta;
    c.w_idle = w_idle;
    c.w_col = w_col;
    c.validate();
    if (game_like && (d < 1 || w < 1)) {
      throw InvalidArgument("nd/nw: the game needs at least one node per network");
    }
  }
  for (const auto& [wi, wc] : weights) {
    if (!(wi >= 0.0) || !(wc >= 0.0)) {
      throw InvalidArgument("weights: w_idle and w_col must be >= 0");
    }
  }
  if (!(eps_tie >= 0.0)) throw InvalidArgument("eps-tie must be >= 0");
  if (command == "stackelberg") players_of(leader, "leader");
  if (command == "verify") {
    players_of(player, "player");
    if (!(scan_step > 0.0 && scan_step < 0.5)) {
      throw InvalidArgument("scan-step must lie in (0, 0.5)");
    }
  }
  if (command == "metrics") network_of(vary, "vary");
  if (command == "optimum") {
    if (kind != "both" && kind != "dsrc" && kind != "wifi") {
      throw InvalidArgument("kind: expected dsrc, wifi or both");
    }
    for (int x : n) {
      if (x < 1) throw InvalidArgument("n: node counts must be >= 1");
    }
    if (!(refine > 0.0)) throw InvalidArgument("refine must be > 0");
  }
  if (command == "sweep" && solve != "all" && solve != "nash" &&
      solve != "stackelberg") {
    throw InvalidArgument("solve: expected nash, stackelberg or all");
  }
  for (double x : tau_opp) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("tau-opp must lie in (0, 1)");
  }
  if (command == "simulate") {
    if (!(tau_d >= 0.0 && tau_d <= 1.0) || !(tau_w >= 0.0 && tau_w <= 1.0)) {
      throw InvalidArgument("tau-d/tau-w must lie in [0, 1]");
    }
    if (horizon < 2) throw InvalidArgument("horizon must be >= 2");
  }
}

double round6(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_number(x));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              os << format_number(v);
            } else if constexpr (std::is_same_v<V, std::int64_t> ||
                                 std::is_same_v<V, std::string>) {
              os << v;
            }
          },
          row[c]);
    }
    os << "\n";
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) {
              rec[t.columns[c]] = nullptr;
            } else if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v)) {
                rec[t.columns[c]] = round6(v);
              } else {
                rec[t.columns[c]] = nullptr;
              }
            } else {
              rec[t.columns[c]] = v;
            }
          },
          row[c]);
    }
    records.push_back(std::move(rec));
  }
  os << records.dump(2) << "\n";
}

Table execute(const RunConfig& cfg) {
  if (cfg.command == "nash") return nash_table(cfg);
  if (cfg.command == "stackelberg") return stackelberg_table(cfg);
  if (cfg.command == "optimum") return optimum_table(cfg);
  if (cfg.command == "metrics") return metrics_table(cfg);
  if (cfg.command == "verify") return verify_table(cfg);
  if (cfg.command == "simulate") return simulate_table(cfg);
  if (cfg.command == "sweep") return sweep_table(cfg);
  throw InvalidArgument("command: unknown subcommand '" + cfg.command + "'");
}

int run_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Age/throughput coexistence game solver"};
  app.set_config("--config", "", "flat key = value file; flags take precedence");

  std::vector<std::string> pairs, weights;
  std::string preset, rescale = "game";

  app.add_option("command", cfg.command,
                 "metrics | nash | stackelberg | optimum | verify | simulate | sweep")
      ->required();
  app.add_option("--nd", cfg.nd, "DSRC node counts")->delimiter(',');
  app.add_option("--nw", cfg.nw, "WiFi node counts")->delimiter(',');
  app.add_option("--pairs", pairs, "explicit nd:nw list")->delimiter(',');
  app.add_option("--beta", cfg.beta, "idle slot length");
  auto* w_idle = app.add_option("--w-idle", cfg.w_idle, "idle slot weight");
  auto* w_col = app.add_option("--w-col", cfg.w_col, "collision slot weight");
  app.add_option("--weights", weights, "sweep: w_idle:w_col list")->delimiter(',');
  app.add_option("--preset", preset, "free | costed | nudge150 | nudge400");
  app.add_option("--grid-lo", cfg.grid.lo);
  app.add_option("--grid-hi", cfg.grid.hi);
  app.add_option("--grid-step", cfg.grid.step);
  app.add_option("--rescale", rescale, "age rescaling: game | column");
  app.add_option("--eps-tie", cfg.eps_tie, "relative tie tolerance");
  app.add_option("--leader", cfg.leader, "dsrc | wifi | both");
  app.add_option("--solve", cfg.solve, "sweep: nash | stackelberg | all");
  app.add_option("--kind", cfg.kind, "optimum: dsrc | wifi | both");
  app.add_option("--n", cfg.n, "optimum: node counts")->delimiter(',');
  app.add_option("--refine", cfg.refine, "optimum: refinement resolution");
  app.add_option("--vary", cfg.vary, "metrics: dsrc | wifi");
  app.add_option("--tau-opp", cfg.tau_opp, "fixed opponent strategies")
      ->delimiter(',');
  app.add_option("--player", cfg.player, "verify: dsrc | wifi | both");
  app.add_option("--scan-step", cfg.scan_step, "verify: scan resolution");
  app.add_option("--tau-d", cfg.tau_d, "simulate: DSRC access probability");
  app.add_option("--tau-w", cfg.tau_w, "simulate: WiFi access probability");
  app.add_option("--dsrc-taus", cfg.dsrc_taus, "simulate: per-node DSRC list")
      ->delimiter(',');
  app.add_option("--wifi-taus", cfg.wifi_taus, "simulate: per-node WiFi list")
      ->delimiter(',');
  app.add_option("--seed", cfg.seed);
  app.add_option("--horizon", cfg.horizon, "simulate: slots");
  app.add_option("--format", cfg.format, "csv | json");
  app.add_option("--out", cfg.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (!preset.empty()) {
      double pi = 0.0, pc = 0.0;
      if (preset == "free") {
      } else if (preset == "costed") {
        pi = cfg.beta;
        pc = 1.0 + cfg.beta;
      } else if (preset == "nudge150") {
        pi = 0.001;
        pc = 150.0;
      } else if (preset == "nudge400") {
        pi = 0.001;
        pc = 400.0;
      } else {
        throw InvalidArgument("preset: unknown preset '" + preset + "'");
      }
      if (w_idle->count() == 0) cfg.w_idle = pi;
      if (w_col->count() == 0) cfg.w_col = pc;
    }
    if (rescale == "game") {
      cfg.rescale = RescaleMode::kGameWide;
    } else if (rescale == "column") {
      cfg.rescale = RescaleMode::kPerOpponent;
    } else {
      throw InvalidArgument("rescale: expected game or column");
    }
    for (const auto& p : pairs) {
      const auto [d, w] = parse_number_pair(p, "pairs");
      if (d != std::floor(d) || w != std::floor(w)) {
        throw InvalidArgument("pairs: node counts must be integers");
      }
      cfg.pairs.emplace_back(static_cast<int>(d), static_cast<int>(w));
    }
    for (const auto& w : weights) {
      cfg.weights.push_back(parse_number_pair(w, "weights"));
    }
    cfg.validate();
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  Table table;
  try {
    table = execute(cfg);
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }

  std::ostringstream buf;
  if (cfg.format == "json") {
    write_json(table, buf);
  } else {
    write_csv(table, buf);
  }
  if (cfg.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f || !(f << buf.str()) || !f.flush()) {
      err << "runtime error: cannot write '" << cfg.out << "'\n";
      return kExitRuntime;
    }
  }
  return kExitOk;
}

}  // namespace coexist::cli
