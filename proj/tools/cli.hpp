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

#ifndef COEXIST_TOOLS_CLI_HPP_
#define COEXIST_TOOLS_CLI_HPP_

// Command-line front end: run configuration, subcommand dispatch and
// CSV / JSON tables.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coexist/game.hpp"

namespace coexist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

struct RunConfig {
  std::string command;

  std::vector<int> nd{2};
  std::vector<int> nw{2};
  // Explicit (N_D, N_W) list; replaces the nd x nw cross product when set.
  std::vector<std::pair<int, int>> pairs;
  double beta = 0.001;
  double w_idle = 0.0;
  double w_col = 0.0;
  // sweep only; defaults to {(w_idle, w_col)}.
  std::vector<std::pair<double, double>> weights;
  GridSpec grid;
  RescaleMode rescale = RescaleMode::kGameWide;
  double eps_tie = 1e-9;

  std::string leader = "both";  // stackelberg: dsrc | wifi | both
  std::string solve = "all";    // sweep: nash | stackelberg | all

  std::string kind = "both";    // optimum: dsrc | wifi | both
  std::vector<int> n{2, 4, 10}; // optimum
  double refine = 1e-5;

  std::string vary = "dsrc";    // metrics: whose strategy is swept
  std::vector<double> tau_opp{0.2};

  std::string player = "both";  // verify
  double scan_step = 0.001;

  double tau_d = 0.2;           // simulate, homogeneous
  double tau_w = 0.2;
  std::vector<double> dsrc_taus;  // simulate, heterogeneous
  std::vector<double> wifi_taus;
  std::uint64_t seed = 1;
  std::uint64_t horizon = 1'000'000;

  std::string format = "csv";
  std::string out;  // empty: standard output

  // Ordered (N_D, N_W) list the command iterates over.
  std::vector<std::pair<int, int>> node_pairs() const;
  void validate() const;
};

// A cell is absent (empty in CSV, null in JSON), an integer, a real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Rounds to the 6 significant digits that every output carries.
double round6(double x);
std::string format_number(double x);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

// Computes the table for a validated configuration.
Table execute(const RunConfig& cfg);

// Parses argv (including argv[0]), runs and writes the output. Returns the
// process exit code; diagnostics go to `err`, tables to `out` or cfg.out.
int run_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace coexist::cli

#endif  // COEXIST_TOOLS_CLI_HPP_
