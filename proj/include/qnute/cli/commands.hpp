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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qnute/cli/config.hpp"

namespace qnute::cli {

/** Fixed CSV number formatting: 12 significant digits. */
std::string format_number(double v);

struct PriceSummary {
  std::size_t rows = 0;
  double rescale = 1.0;
  std::size_t measurement_count = 0;
};

/** Writes prices.csv, trajectory.csv and exact_trajectory.csv into `out`. */
PriceSummary cmd_price(const RunConfig& cfg, const std::filesystem::path& out);

struct SweepRow {
  std::string option;
  std::size_t n = 0;
  std::size_t d = 0;
  double mu = 0.0;
  double sigma = 0.0;
};

/**
 * Writes fidelity.csv with one row per (option, n, D), D <= n. Combinations
 * with D > n are skipped with a warning on `warnings`.
 */
std::vector<SweepRow> cmd_fidelity_sweep(const RunConfig& cfg, const std::filesystem::path& out,
                                         std::size_t threads, std::ostream& warnings);

/** Writes hamiltonian.txt (Pauli text) and hamiltonian.csv (row, col, real, imag). */
std::size_t cmd_decompose(const RunConfig& cfg, const std::filesystem::path& out);

/** Entry point of the `qnute` executable; returns the process exit code. */
int run(int argc, const char* const* argv);

}  // namespace qnute::cli
