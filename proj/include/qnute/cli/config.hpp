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
#include <string>
#include <string_view>
#include <vector>

#include "qnute/errors.hpp"
#include "qnute/grid_hamiltonian.hpp"
#include "qnute/qnute.hpp"

namespace qnute::cli {

/** Invalid run configuration; the message starts with the offending key. */
class ConfigError : public Error {
 public:
  using Error::Error;
};

/**
 * Declarative description of a run. The text form is one `key = value` per
 * line with dotted section keys; `#` starts a comment. Defaults reproduce
 * the reference experiment: x in [0, 150], T = 3, N_T = 500, r = 0.04,
 * sigma = 0.2.
 */
struct RunConfig {
  std::string contract = "call:75";

  double x0 = 0.0;
  double xN = 150.0;
  std::size_t n = 6;

  double r = 0.04;
  double sigma = 0.2;

  double maturity = 3.0;
  std::size_t steps = 500;

  /** 0 means the whole register ("auto" in text form). */
  std::size_t domain_size = 0;
  BasisMode basis = BasisMode::automatic;
  TermSplit terms = TermSplit::automatic;
  std::size_t stride = 1;
  double lstsq_rel_tol = 1e-8;

  Boundary boundary = Boundary::linear;

  std::string out_dir = "qnute_out";
  std::vector<std::string> formats = {"csv"};

  std::vector<std::string> sweep_options = {"call:75", "put:75"};
  std::vector<std::size_t> sweep_n = {2, 3, 4};
  std::vector<std::size_t> sweep_domain_sizes = {2, 4};

  Grid grid() const;
  BSParams params() const;
  QnuteConfig qnute(std::size_t num_qubits) const;
};

/** Every key understood by parse_config, in canonical order. */
const std::vector<std::string_view>& config_keys();

RunConfig parse_config(std::string_view text);
/** Overrides a single key, as `--set key=value` does. */
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
/** Canonical text form: every key, in config_keys() order. */
std::string serialize_config(const RunConfig& cfg);

RunConfig load_config(const std::string& path);

}  // namespace qnute::cli
