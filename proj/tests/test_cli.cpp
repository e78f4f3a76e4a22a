// Copyright 2026 The qnute-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qnute/cli/commands.hpp"
#include "qnute/cli/config.hpp"
#include "qnute/errors.hpp"
#include "qnute/grid_hamiltonian.hpp"
#include "qnute/market.hpp"

using namespace qnute;
using namespace qnute::cli;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qnute_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "qnute");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

RunConfig small_config(std::size_t n) {
  RunConfig cfg;
  cfg.n = n;
  return cfg;
}

}  // namespace

TEST_CASE("configuration defaults", "[cli]") {
  const RunConfig cfg;
  CHECK(cfg.x0 == 0.0);
  CHECK(cfg.xN == 150.0);
  CHECK(cfg.maturity == 3.0);
  CHECK(cfg.steps == 500);
  CHECK(cfg.r == 0.04);
  CHECK(cfg.sigma == 0.2);
  CHECK(cfg.qnute(6).delta_t == Catch::Approx(0.006));
}

TEST_CASE("configuration text round-trips", "[cli]") {
  RunConfig cfg;
  cfg.contract = "strangle:50,100";
  cfg.n = 4;
  cfg.domain_size = 2;
  cfg.basis = BasisMode::full;
  cfg.terms = TermSplit::windows;
  cfg.boundary = Boundary::central;
  cfg.sweep_options = {"call:75", "strangle:50,100"};
  cfg.sweep_n = {3, 5};
  const auto text = serialize_config(cfg);
  CHECK(serialize_config(parse_config(text)) == text);
  for (auto key : config_keys()) CHECK_THAT(text, ContainsSubstring(std::string(key)));

  const auto parsed = parse_config("# comment\ngrid.n = 5  # trailing\n\nqnute.domain_size = auto\n");
  CHECK(parsed.n == 5);
  CHECK(parsed.domain_size == 0);
}

TEST_CASE("configuration errors name the key", "[cli]") {
  CHECK_THROWS_WITH(parse_config("grid.q = 1"), ContainsSubstring("grid.q"));
  CHECK_THROWS_WITH(parse_config("grid.n = 3\ngrid.n = 4"), ContainsSubstring("grid.n"));
  CHECK_THROWS_WITH(parse_config("market.r = fast"), ContainsSubstring("market.r"));
  CHECK_THROWS_WITH(parse_config("qnute.basis = half"), ContainsSubstring("qnute.basis"));
  CHECK_THROWS_WITH(parse_config("grid.n = -2"), ContainsSubstring("grid.n"));
  CHECK_THROWS_AS(parse_config("just words"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/qnute.cfg"), ConfigError);

  RunConfig cfg;
  cfg.contract = "call:";
  CHECK_THROWS_WITH(cmd_price(cfg, scratch("bad")), ContainsSubstring("contract"));
  cfg = RunConfig{};
  cfg.sigma = -1.0;
  CHECK_THROWS_WITH(cmd_price(cfg, scratch("bad")), ContainsSubstring("market"));
}

TEST_CASE("price command output", "[cli]") {
  const auto dir = scratch("price");
  const auto summary = cmd_price(small_config(4), dir);
  CHECK(summary.rows == 16);
  const auto rows = read_csv(dir / "prices.csv");
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == std::vector<std::string>{"x", "qnute_price", "reference_pde_price",
                                            "analytic_price"});
  for (std::size_t k = 2; k < rows.size(); ++k) {
    CHECK(std::stod(rows[k][1]) >= std::stod(rows[k - 1][1]) - 1e-3);
  }
  const auto traj = read_csv(dir / "trajectory.csv");
  CHECK(traj.size() == 502);
  CHECK(traj[0] ==
        std::vector<std::string>{"step", "tau", "c", "cumulative_scale", "residual",
                                 "step_fidelity"});
  CHECK(read_csv(dir / "exact_trajectory.csv").size() == 502);

  // Identical configurations give identical bytes.
  const auto again = scratch("price_again");
  cmd_price(small_config(4), again);
  CHECK(slurp(dir / "prices.csv") == slurp(again / "prices.csv"));
  CHECK(slurp(dir / "trajectory.csv") == slurp(again / "trajectory.csv"));
}

TEST_CASE("price command with no time steps", "[cli]") {
  RunConfig cfg = small_config(3);
  cfg.steps = 0;
  const auto dir = scratch("price_zero");
  cmd_price(cfg, dir);
  const auto rows = read_csv(dir / "prices.csv");
  const auto contract = market::OptionContract::parse(cfg.contract);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK_THAT(std::stod(rows[k][1]), WithinAbs(contract.payoff(std::stod(rows[k][0])), 1e-9));
  }
}

TEST_CASE("fidelity sweep", "[cli]") {
  RunConfig cfg;
  cfg.sweep_options = {"call:75"};
  cfg.sweep_n = {2};
  cfg.sweep_domain_sizes = {2};
  std::ostringstream warnings;
  const auto one = cmd_fidelity_sweep(cfg, scratch("sweep1"), 1, warnings);
  REQUIRE(one.size() == 1);
  CHECK(one[0].mu == Catch::Approx(1.0).margin(5e-4));

  cfg.sweep_n = {4};
  cfg.sweep_domain_sizes = {2, 4, 6};
  const auto dir = scratch("sweep2");
  const auto rows = cmd_fidelity_sweep(cfg, dir, 2, warnings);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].d == 4);
  CHECK(rows[1].mu > rows[0].mu);
  CHECK_THAT(warnings.str(), ContainsSubstring("D=6"));
  const auto csv = read_csv(dir / "fidelity.csv");
  CHECK(csv[0] == std::vector<std::string>{"option", "n", "D", "mu_F", "sigma_F"});
  CHECK(csv.size() == 3);

  cfg.sweep_options.clear();
  CHECK_THROWS_AS(cmd_fidelity_sweep(cfg, scratch("sweep3"), 1, warnings), ConfigError);
}

TEST_CASE("decompose command", "[cli]") {
  RunConfig cfg = small_config(2);
  cfg.boundary = Boundary::central;
  const auto dir = scratch("decompose");
  const auto count = cmd_decompose(cfg, dir);
  CHECK(count > 0);
  const auto dense = bs_coefficients(Grid(0.0, 150.0, 2), BSParams{}).dense();
  const auto rows = read_csv(dir / "hamiltonian.csv");
  REQUIRE(rows.size() == 17);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto i = std::stoul(rows[k][0]);
    const auto j = std::stoul(rows[k][1]);
    CHECK_THAT(std::stod(rows[k][2]), WithinAbs(dense(i, j), 1e-10));
    CHECK_THAT(std::stod(rows[k][3]), WithinAbs(0.0, 1e-12));
  }
  CHECK(PauliSum::parse(slurp(dir / "hamiltonian.txt"), 2).size() == count);

  cfg.r = 0.0;
  cfg.sigma = 0.0;
  CHECK(cmd_decompose(cfg, dir) == 0);

  RunConfig one = small_config(1);
  CHECK_THROWS_AS(cmd_decompose(one, dir), UnsupportedSizeError);
  CHECK_THROWS_AS(cmd_decompose(small_config(11), dir), CapacityError);
}

TEST_CASE("exit codes", "[cli]") {
  const auto dir = scratch("exit").string();
  CHECK(run_args({"price", "--out", dir, "--set", "contract=call:"}) == 2);
  CHECK(run_args({"price", "--out", dir, "--set", "grid.n=3", "--set",
                  "contract=butterfly:50,100"}) == 3);
  CHECK(run_args({"fidelity-sweep", "--out", dir, "--set", "sweep.options="}) == 2);
  CHECK(run_args({"decompose", "--out", dir, "--set", "grid.n=1"}) == 2);
  CHECK(run_args({"price", "--bogus"}) == 2);
  CHECK(run_args({}) == 2);
  CHECK(run_args({"price", "--out", dir, "--set", "grid.n=2", "--set", "schedule.steps=10"}) ==
        0);
  CHECK(fs::exists(fs::path(dir) / "prices.csv"));
}

TEST_CASE("config file and environment override", "[cli]") {
  const auto base = scratch("env");
  fs::create_directories(base);
  {
    std::ofstream cfg(base / "run.cfg");
    cfg << "grid.n = 2\nschedule.steps = 5\noutput.dir = " << (base / "from_file").string()
        << "\n";
  }
  CHECK(run_args({"price", "--config", (base / "run.cfg").string()}) == 0);
  CHECK(fs::exists(base / "from_file" / "prices.csv"));

  ::setenv("QNUTE_OUT", (base / "from_env").string().c_str(), 1);
  CHECK(run_args({"price", "--config", (base / "run.cfg").string(), "--out",
                  (base / "from_flag").string()}) == 0);
  ::unsetenv("QNUTE_OUT");
  CHECK(fs::exists(base / "from_env" / "prices.csv"));
  CHECK_FALSE(fs::exists(base / "from_flag"));
}
