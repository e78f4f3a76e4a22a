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

#include "qnute/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qnute/market.hpp"
#include "qnute/oracle.hpp"
#include "qnute/pauli.hpp"

namespace qnute::cli {

namespace {

constexpr std::size_t kMaxDecomposeQubits = 10;

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

market::OptionContract parse_contract(const std::string& spec) {
  try {
    return market::OptionContract::parse(spec);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("contract: {}", e.what()));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

// One row per time step; the per-term reports are folded together.
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_csv(path);
  fmt::print(out, "step,tau,c,cumulative_scale,residual,step_fidelity\n");
  const std::size_t m = std::max<std::size_t>(traj.terms_per_step, 1);
  for (std::size_t step = 0; step < traj.states.size(); ++step) {
    double c = 1.0;
    double residual = 0.0;
    double fid = 1.0;
    if (step > 0) {
      for (std::size_t k = (step - 1) * m; k < step * m && k < traj.reports.size(); ++k) {
        const auto& r = traj.reports[k];
        c *= r.c;
        residual = std::max(residual, r.residual);
        fid = std::min(fid, r.step_fidelity);
      }
    }
    fmt::print(out, "{},{},{},{},{},{}\n", step,
               format_number(static_cast<double>(step) * traj.delta_t), format_number(c),
               format_number(traj.states[step].scale), format_number(residual),
               format_number(fid));
  }
}

SweepRow sweep_one(const RunConfig& cfg, const std::string& option, std::size_t n,
                   std::size_t d) {
  RunConfig local = cfg;
  local.n = n;
  local.domain_size = d;
  const auto contract = parse_contract(option);
  const Grid grid = local.grid();
  const BSParams p = local.params();
  QnuteConfig q = local.qnute(n);
  q.track_step_fidelity = false;

  const ScaledState initial = encode_samples(market::payoff_samples(contract, grid));
  const auto terms = market::black_scholes_terms(grid, p, q);
  const Trajectory approx = evolve(initial, terms, q);
  const Trajectory exact = oracle::exact_trajectory(initial, terms, q);
  const auto stats = oracle::fidelity_stats(approx, exact);
  return SweepRow{option, n, d, stats.mean, stats.std};
}

std::filesystem::path resolve_out_dir(const RunConfig& cfg, const std::string& flag) {
  if (const char* env = std::getenv("QNUTE_OUT"); env != nullptr && *env != '\0') return env;
  if (!flag.empty()) return flag;
  return cfg.out_dir;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

PriceSummary cmd_price(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto contract = parse_contract(cfg.contract);
  const Grid grid = cfg.grid();
  const BSParams p = cfg.params();
  const QnuteConfig q = cfg.qnute(grid.num_qubits());

  const auto curve = market::price_curve(contract, grid, p, q);
  const auto reference = oracle::reference_pde_solution(contract, grid, p, q);
  const double tau = static_cast<double>(q.num_steps) * q.delta_t;

  std::filesystem::create_directories(out);
  {
    auto csv = open_csv(out / "prices.csv");
    fmt::print(csv, "x,qnute_price,reference_pde_price,analytic_price\n");
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double x = grid.x(k);
      fmt::print(csv, "{},{},{},{}\n", format_number(x), format_number(curve.prices[k]),
                 format_number(reference[k]),
                 format_number(market::analytic_price(contract, x, tau, p)));
    }
  }
  write_trajectory(out / "trajectory.csv", curve.trajectory);

  const auto terms = market::black_scholes_terms(grid, p, q);
  const ScaledState initial = encode_samples(market::payoff_samples(contract, grid));
  write_trajectory(out / "exact_trajectory.csv", oracle::exact_trajectory(initial, terms, q));

  return PriceSummary{grid.size(), curve.rescale, curve.trajectory.measurement_count};
}

std::vector<SweepRow> cmd_fidelity_sweep(const RunConfig& cfg, const std::filesystem::path& out,
                                         std::size_t threads, std::ostream& warnings) {
  if (cfg.sweep_options.empty()) throw ConfigError("sweep.options: no options given");
  if (cfg.sweep_n.empty()) throw ConfigError("sweep.n: no register sizes given");
  if (cfg.sweep_domain_sizes.empty()) throw ConfigError("sweep.domain_sizes: no domain sizes given");
  for (const auto& option : cfg.sweep_options) parse_contract(option);

  struct Job {
    std::string option;
    std::size_t n;
    std::size_t d;
  };
  std::vector<Job> jobs;
  for (const auto& option : cfg.sweep_options) {
    for (std::size_t n : cfg.sweep_n) {
      for (std::size_t d : cfg.sweep_domain_sizes) {
        if (d > n) {
          fmt::print(warnings, "warning: skipping {} n={} D={} (D exceeds n)\n", option, n, d);
          continue;
        }
        jobs.push_back({option, n, d});
      }
    }
  }

  std::vector<SweepRow> rows(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        rows[k] = sweep_one(cfg, jobs[k].option, jobs[k].n, jobs[k].d);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t count = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs.size(), 1));
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::filesystem::create_directories(out);
  auto csv = open_csv(out / "fidelity.csv");
  fmt::print(csv, "option,n,D,mu_F,sigma_F\n");
  for (const auto& row : rows) {
    fmt::print(csv, "{},{},{},{},{}\n", csv_field(row.option), row.n, row.d,
               format_number(row.mu), format_number(row.sigma));
  }
  return rows;
}

std::size_t cmd_decompose(const RunConfig& cfg, const std::filesystem::path& out) {
  if (cfg.n > kMaxDecomposeQubits) {
    throw CapacityError(fmt::format("grid.n = {} exceeds the dense-dump limit of {} qubits",
                                    cfg.n, kMaxDecomposeQubits));
  }
  const Grid grid = cfg.grid();
  const BSParams p = cfg.params();
  const PauliSum h = build_bs_pauli(grid, p, cfg.boundary);

  std::filesystem::create_directories(out);
  {
    std::ofstream txt(out / "hamiltonian.txt", std::ios::trunc);
    if (!txt) throw Error(fmt::format("cannot write '{}'", (out / "hamiltonian.txt").string()));
    txt << h.str();
  }
  const CMatrix dense = dense_matrix(h, grid.num_qubits());
  auto csv = open_csv(out / "hamiltonian.csv");
  fmt::print(csv, "row,col,real,imag\n");
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      fmt::print(csv, "{},{},{},{}\n", i, j, format_number(dense(i, j).real()),
                 format_number(dense(i, j).imag()));
    }
  }
  return h.terms().size();
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Classical QNUTE simulator for Black-Scholes option pricing"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  std::vector<std::string> overrides;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration file (key = value lines)");
    sub->add_option("--out", out_flag, "Output directory (QNUTE_OUT overrides)");
    sub->add_option("--set", overrides, "Override one key, e.g. --set grid.n=5")
        ->allow_extra_args(false);
    sub->add_option("--seed", seed, "Reserved; every command is deterministic");
  };
  auto* price = app.add_subcommand("price", "Price one contract; writes prices.csv");
  auto* sweep = app.add_subcommand("fidelity-sweep", "Mean fidelities over n and D");
  auto* decompose = app.add_subcommand("decompose", "Dump the Pauli decomposition");
  for (auto* sub : {price, sweep, decompose}) add_common(sub);
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& item : overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(fmt::format("--set: '{}' is not key=value", item));
      }
      set_config_value(cfg, item.substr(0, eq), item.substr(eq + 1));
    }
    const auto out = resolve_out_dir(cfg, out_flag);

    if (price->parsed()) {
      const auto summary = cmd_price(cfg, out);
      fmt::print("{} prices written to {} (rescale {}, {} expectation values)\n", summary.rows,
                 (out / "prices.csv").string(), format_number(summary.rescale),
                 summary.measurement_count);
    } else if (sweep->parsed()) {
      const auto rows = cmd_fidelity_sweep(cfg, out, threads, std::cerr);
      for (const auto& row : rows) {
        fmt::print("{:<16} n={} D={} mu_F={} sigma_F={}\n", row.option, row.n, row.d,
                   format_number(row.mu), format_number(row.sigma));
      }
    } else if (decompose->parsed()) {
      const auto count = cmd_decompose(cfg, out);
      fmt::print("{} Pauli terms written to {}\n", count, (out / "hamiltonian.txt").string());
    }
    return 0;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return 3;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}

}  // namespace qnute::cli
