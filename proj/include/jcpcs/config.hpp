// Copyright 2026 The jcpcs Authors
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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jcpcs/ensemble.hpp"
#include "jcpcs/liouvillian.hpp"

namespace jcpcs {

// Evenly spaced delta_tilde grid written LO:HI:STEP.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  bool operator==(const GridSpec&) const = default;
};

GridSpec parse_grid_spec(const std::string& text);
std::string to_string(const GridSpec& grid);

// Fully resolved run description. Every field has a default; keys whose
// default depends on the mode (grids, distribution) are resolved when the
// config is parsed, so the echoed form re-parses to an identical value.
struct RunConfig {
  std::string mode = "scan-2pcr";  // scan-2pcr | scan-vee | peak | pg-dist |
                                   // reproduce-figure
  std::string figure;              // 2 | 3 | 4a | 4b | 5

  // Physical parameters, kappa units.
  double g_f = 9.0;
  double gamma = 2.0;
  double E1 = 0.70710678118654752;
  double E2 = 1.41421356237309505;
  double vee_E = 1.41421356237309505;  // three-level drive amplitude

  // Ablation: a named preset ('+'-joined), optionally combined with an
  // explicit spec in the AblationSpec::describe() syntax.
  std::string preset = "none";
  std::string ablation;
  DriveSelector ablation_drive = DriveSelector::Scanning;
  LinewidthSurgery linewidth_surgery = LinewidthSurgery::DiagonalOnly;

  // Coupling distribution.
  std::string distribution = "delta";  // delta | mask | file
  std::string distribution_file;
  double g_max = 9.0;
  double F = 0.35;
  MaskGeometry mask_geometry = MaskGeometry::Plane;
  std::int64_t mask_positions = 1'000'000;
  int mask_bins = 64;
  std::uint64_t seed = 20010101;

  // Scan grid and peak extraction.
  GridSpec delta_grid{2.0, 2.8, 0.02};
  std::optional<GridSpec> fine_grid = GridSpec{2.2, 2.6, 0.002};
  bool background_subtract = false;
  double peak_nominal = 2.41421356237309505;
  std::pair<double, double> peak_search{2.1, 2.7};
  double peak_half_width = 0.15;

  // Solver knobs.
  int n_max = 3;
  int m_max = 3;
  double edge_tolerance = 1e-2;

  std::filesystem::path out = "jcpcs_out";

  bool operator==(const RunConfig&) const = default;
};

// Flag or file overrides, keyed by config key.
using ConfigOverrides = std::map<std::string, std::string>;

// Parses a flat "key = value" document ('#' starts a comment), applies the
// overrides, resolves mode-dependent defaults and validates. Errors:
// UnknownKey, TypeMismatch, MissingRequired, each naming the key.
RunConfig parse_config(std::istream& in, const ConfigOverrides& overrides = {});
RunConfig parse_config_text(const std::string& text,
                            const ConfigOverrides& overrides = {});
RunConfig parse_config_file(const std::filesystem::path& path,
                            const ConfigOverrides& overrides = {});

// All keys, one "key = value" per line, in a fixed order.
std::string echo_config(const RunConfig& config);
// Every recognised key in echo order.
const std::vector<std::string>& config_keys();

// Prefix of config echo lines in output headers.
inline constexpr const char* kConfigEchoPrefix = "# config: ";
// Extracts the echoed config from an output file's header.
std::string extract_config_echo(std::istream& in);

AblationSpec resolve_ablation(const RunConfig& config);
CouplingDistribution resolve_distribution(const RunConfig& config);
std::vector<double> resolve_grid(const RunConfig& config);

struct RunOptions {
  unsigned threads = 1;
};

// Executes the configured mode and returns the files written. On failure
// every file written so far is removed and the error is rethrown.
std::vector<std::filesystem::path> run(const RunConfig& config,
                                       const RunOptions& options = {});

}  // namespace jcpcs
