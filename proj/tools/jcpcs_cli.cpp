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

// Command-line front end: jcpcs --config run.cfg --mode peak --out results

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "jcpcs/config.hpp"
#include "jcpcs/errors.hpp"
#include "jcpcs/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-photon coincidence spectroscopy of a bichromatically "
               "driven Jaynes-Cummings system"};
  std::string config_path;
  std::optional<std::string> mode, preset, delta_grid, seed, out, figure;
  std::vector<std::string> settings;
  std::string positional_figure;
  unsigned threads = jcpcs::default_thread_count();
  bool print_config = false;

  app.add_option("--config", config_path, "Flat 'key = value' config file")
      ->check(CLI::ExistingFile);
  app.add_option("--mode", mode,
                 "scan-2pcr | scan-vee | peak | pg-dist | reproduce-figure");
  app.add_option("FIGURE", positional_figure,
                 "Figure for reproduce-figure: 2, 3, 4a, 4b or 5");
  app.add_option("--figure", figure, "Figure for reproduce-figure");
  app.add_option("--preset", preset, "Ablation preset, names joined by '+'");
  app.add_option("--delta-grid", delta_grid, "delta_tilde grid LO:HI:STEP");
  app.add_option("--threads", threads, "Worker threads for scan points")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed of the mask sampling");
  app.add_option("--out", out, "Output directory");
  app.add_option("--set", settings, "Extra override KEY=VALUE (repeatable)");
  app.add_flag("--print-config", print_config,
               "Print the resolved config and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    jcpcs::ConfigOverrides overrides;
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw jcpcs::TypeMismatch("--set '" + s + "' is not KEY=VALUE");
      }
      overrides[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (mode) overrides["mode"] = *mode;
    if (!positional_figure.empty()) overrides["figure"] = positional_figure;
    if (figure) overrides["figure"] = *figure;
    if (preset) overrides["preset"] = *preset;
    if (delta_grid) overrides["delta_grid"] = *delta_grid;
    if (seed) overrides["seed"] = *seed;
    if (out) overrides["out"] = *out;

    const jcpcs::RunConfig config =
        config_path.empty() ? jcpcs::parse_config_text("", overrides)
                            : jcpcs::parse_config_file(config_path, overrides);
    if (print_config) {
      std::cout << jcpcs::echo_config(config);
      return 0;
    }
    jcpcs::RunOptions options;
    options.threads = threads;
    for (const auto& path : jcpcs::run(config, options)) {
      std::cout << path.string() << '\n';
    }
    return 0;
  } catch (const jcpcs::Error& e) {
    std::cerr << "jcpcs: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "jcpcs: " << e.what() << '\n';
    return 1;
  }
}
