// Copyright 2026 The hardctrl Authors
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

// hardctrl: run gate-synthesis benchmark experiments from JSON configs.
//
//   hardctrl run configs/table1_desk.json --workers 4 --output out/
//   hardctrl list-algorithms

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hardctrl/experiment.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int run_command(const std::string& config_path, int workers, const std::string& output,
                long long seed) {
  std::string text;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << config_path << ": cannot read config file\n";
      return kExitConfig;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  hardctrl::ExperimentConfig config;
  try {
    config = hardctrl::parse_experiment_config(text);
  } catch (const hardctrl::ConfigError& e) {
    std::cerr << config_path << ":" << (e.line() ? std::to_string(e.line()) + ":" : "") << " "
              << e.what() << "\n";
    return kExitConfig;
  }

  if (workers >= 0) {
    config.workers = static_cast<std::size_t>(workers);
  } else if (const char* env = std::getenv("HARDCTRL_WORKERS"); env && *env) {
    try {
      config.workers = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "HARDCTRL_WORKERS must be a nonnegative integer, got '" << env << "'\n";
      return kExitConfig;
    }
  }
  if (!output.empty()) config.output_dir = output;
  if (seed >= 0) config.base_seed = static_cast<std::uint64_t>(seed);

  try {
    const auto results = hardctrl::run_experiment(config, text, std::cerr);
    for (const auto& r : results) {
      std::cout << "# " << r.experiment_case.label << "\n";
      hardctrl::write_report_csv(std::cout, r.reports);
      if (r.short_runs) hardctrl::write_report_csv(std::cout, {*r.short_runs});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark greedy and evolutionary optimizers on hard quantum gate synthesis"};
  app.require_subcommand(1);

  std::string config_path;
  int workers = -1;
  std::string output;
  long long seed = -1;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--workers", workers, "Concurrent runs (0 = all cores); env HARDCTRL_WORKERS")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--output", output, "Output directory (overrides config)");
  run->add_option("--seed", seed, "Base seed (overrides config)")->check(CLI::NonNegativeNumber);

  auto* list = app.add_subcommand("list-algorithms", "List algorithm ids and default parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  if (*list) {
    std::cout << hardctrl::list_algorithms();
    return 0;
  }
  return run_command(config_path, workers, output, seed);
}
