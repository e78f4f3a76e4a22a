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

#include "qnute/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace qnute::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  while (true) {
    const auto pos = s.find(sep);
    out.emplace_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

double to_double(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, value));
  }
  return v;
}

std::size_t to_size(std::string_view key, std::string_view value) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, value));
  }
  return v;
}

template <typename T>
std::string join(const std::vector<T>& items, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += sep;
    if constexpr (std::is_same_v<T, std::string>) {
      out += items[k];
    } else {
      out += fmt::format("{}", items[k]);
    }
  }
  return out;
}

struct KeyHandler {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeyHandler>& handlers() {
  static const std::vector<KeyHandler> table = {
      {"contract", [](RunConfig& c, std::string_view v) { c.contract = std::string(v); },
       [](const RunConfig& c) { return c.contract; }},
      {"grid.x0", [](RunConfig& c, std::string_view v) { c.x0 = to_double("grid.x0", v); },
       [](const RunConfig& c) { return num(c.x0); }},
      {"grid.xN", [](RunConfig& c, std::string_view v) { c.xN = to_double("grid.xN", v); },
       [](const RunConfig& c) { return num(c.xN); }},
      {"grid.n", [](RunConfig& c, std::string_view v) { c.n = to_size("grid.n", v); },
       [](const RunConfig& c) { return fmt::format("{}", c.n); }},
      {"market.r", [](RunConfig& c, std::string_view v) { c.r = to_double("market.r", v); },
       [](const RunConfig& c) { return num(c.r); }},
      {"market.sigma",
       [](RunConfig& c, std::string_view v) { c.sigma = to_double("market.sigma", v); },
       [](const RunConfig& c) { return num(c.sigma); }},
      {"schedule.T",
       [](RunConfig& c, std::string_view v) { c.maturity = to_double("schedule.T", v); },
       [](const RunConfig& c) { return num(c.maturity); }},
      {"schedule.steps",
       [](RunConfig& c, std::string_view v) { c.steps = to_size("schedule.steps", v); },
       [](const RunConfig& c) { return fmt::format("{}", c.steps); }},
      {"qnute.domain_size",
       [](RunConfig& c, std::string_view v) {
         c.domain_size = v == "auto" ? 0 : to_size("qnute.domain_size", v);
       },
       [](const RunConfig& c) {
         return c.domain_size == 0 ? std::string("auto") : fmt::format("{}", c.domain_size);
       }},
      {"qnute.basis",
       [](RunConfig& c, std::string_view v) {
         if (v == "auto") {
           c.basis = BasisMode::automatic;
         } else if (v == "full") {
           c.basis = BasisMode::full;
         } else if (v == "odd-y") {
           c.basis = BasisMode::odd_y;
         } else {
           throw ConfigError(fmt::format("qnute.basis: '{}' is not one of auto, full, odd-y", v));
         }
       },
       [](const RunConfig& c) {
         switch (c.basis) {
           case BasisMode::full: return std::string("full");
           case BasisMode::odd_y: return std::string("odd-y");
           default: return std::string("auto");
         }
       }},
      {"qnute.terms",
       [](RunConfig& c, std::string_view v) {
         if (v == "auto") {
           c.terms = TermSplit::automatic;
         } else if (v == "single") {
           c.terms = TermSplit::single;
         } else if (v == "windows") {
           c.terms = TermSplit::windows;
         } else {
           throw ConfigError(
               fmt::format("qnute.terms: '{}' is not one of auto, single, windows", v));
         }
       },
       [](const RunConfig& c) {
         switch (c.terms) {
           case TermSplit::single: return std::string("single");
           case TermSplit::windows: return std::string("windows");
           default: return std::string("auto");
         }
       }},
      {"qnute.stride",
       [](RunConfig& c, std::string_view v) { c.stride = to_size("qnute.stride", v); },
       [](const RunConfig& c) { return fmt::format("{}", c.stride); }},
      {"qnute.lstsq_rel_tol",
       [](RunConfig& c, std::string_view v) {
         c.lstsq_rel_tol = to_double("qnute.lstsq_rel_tol", v);
       },
       [](const RunConfig& c) { return num(c.lstsq_rel_tol); }},
      {"decompose.boundary",
       [](RunConfig& c, std::string_view v) {
         if (v == "linear") {
           c.boundary = Boundary::linear;
         } else if (v == "central") {
           c.boundary = Boundary::central;
         } else {
           throw ConfigError(
               fmt::format("decompose.boundary: '{}' is not one of linear, central", v));
         }
       },
       [](const RunConfig& c) {
         return std::string(c.boundary == Boundary::linear ? "linear" : "central");
       }},
      {"output.dir", [](RunConfig& c, std::string_view v) { c.out_dir = std::string(v); },
       [](const RunConfig& c) { return c.out_dir; }},
      {"output.formats",
       [](RunConfig& c, std::string_view v) {
         c.formats = split(v, ',');
         for (const auto& f : c.formats) {
           if (f != "csv") {
             throw ConfigError(fmt::format("output.formats: '{}' is not supported (csv)", f));
           }
         }
       },
       [](const RunConfig& c) { return join(c.formats, ","); }},
      {"sweep.options",
       [](RunConfig& c, std::string_view v) { c.sweep_options = split(v, ';'); },
       [](const RunConfig& c) { return join(c.sweep_options, "; "); }},
      {"sweep.n",
       [](RunConfig& c, std::string_view v) {
         c.sweep_n.clear();
         for (const auto& item : split(v, ',')) c.sweep_n.push_back(to_size("sweep.n", item));
       },
       [](const RunConfig& c) { return join(c.sweep_n, ","); }},
      {"sweep.domain_sizes",
       [](RunConfig& c, std::string_view v) {
         c.sweep_domain_sizes.clear();
         for (const auto& item : split(v, ',')) {
           c.sweep_domain_sizes.push_back(to_size("sweep.domain_sizes", item));
         }
       },
       [](const RunConfig& c) { return join(c.sweep_domain_sizes, ","); }},
  };
  return table;
}

const KeyHandler& handler_for(std::string_view key) {
  const auto& table = handlers();
  const auto it = std::find_if(table.begin(), table.end(),
                               [key](const KeyHandler& h) { return h.key == key; });
  if (it == table.end()) throw ConfigError(fmt::format("{}: unknown configuration key", key));
  return *it;
}

}  // namespace

Grid RunConfig::grid() const {
  try {
    return Grid(x0, xN, n);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("grid: {}", e.what()));
  }
}

BSParams RunConfig::params() const {
  BSParams p{r, sigma};
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(fmt::format("market: {}", e.what()));
  }
  return p;
}

QnuteConfig RunConfig::qnute(std::size_t num_qubits) const {
  if (!(maturity >= 0.0)) {
    throw ConfigError(fmt::format("schedule.T: {} must be non-negative", maturity));
  }
  QnuteConfig q;
  q.num_steps = steps;
  q.delta_t = steps == 0 ? 0.0 : maturity / static_cast<double>(steps);
  q.domain_size = domain_size;
  q.basis_mode = basis;
  q.term_split = terms;
  q.window_stride = stride;
  q.lstsq_rel_tol = lstsq_rel_tol;
  try {
    q.validate(num_qubits);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("qnute: {}", e.what()));
  }
  return q;
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> out;
    for (const auto& h : handlers()) out.push_back(h.key);
    return out;
  }();
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  handler_for(trim(key)).set(cfg, trim(value));
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(fmt::format("{}: key given twice", key));
    }
    set_config_value(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& h : handlers()) out += fmt::format("{} = {}\n", h.key, h.get(cfg));
  return out;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config: cannot read '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace qnute::cli
