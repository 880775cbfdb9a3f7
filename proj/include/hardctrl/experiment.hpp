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

#ifndef HARDCTRL_EXPERIMENT_HPP
#define HARDCTRL_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardctrl/harness.hpp"
#include "hardctrl/optimizers.hpp"

namespace hardctrl {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

/// Invalid experiment configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentCase {
  std::string label;
  std::string problem;
  double horizon = 0.0;
  std::string horizon_text;  // as written, e.g. "2.5pi"
  std::size_t bins = 0;
};

struct AlgorithmEntry {
  OptimizerConfig config;
  std::optional<std::size_t> runs;  // falls back to R_greedy / R_evolutionary
};

struct ShortRunStudy {
  OptimizerConfig config;
  std::size_t repetitions = 500;
  std::size_t iterations_cap = 100;
};

struct ExperimentConfig {
  std::string name;
  std::vector<ExperimentCase> cases;
  std::vector<AlgorithmEntry> algorithms;
  std::size_t runs_greedy = kGreedyRuns;
  std::size_t runs_evolutionary = kEvolutionaryRuns;
  double threshold = kDefaultThreshold;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;
  std::filesystem::path output_dir = "results";
  bool export_csv = true;
  bool export_json = true;
  std::optional<ShortRunStudy> short_runs;

  std::size_t runs_for(const AlgorithmEntry& entry) const;
};

/// Parses the JSON experiment schema (see README). Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Accepts a plain number or a multiple of pi written "<x>pi" (e.g. "2.5pi").
double parse_horizon(std::string_view text);

struct CaseResult {
  ExperimentCase experiment_case;
  std::vector<BenchmarkReport> reports;
  std::optional<BenchmarkReport> short_runs;
};

/// Runs every case x algorithm, writing under config.output_dir:
///   manifest.json
///   <case>/report.csv, report.json
///   <case>/runs_<alg>.csv, convergence_<alg>.csv, convergence_<alg>.json
///   <case>/short_runs.csv, short_runs.json (when configured)
/// `config_text` is hashed into the manifest. Progress goes to `log`.
std::vector<CaseResult> run_experiment(const ExperimentConfig& config,
                                       std::string_view config_text, std::ostream& log);

/// 64-bit FNV-1a, hex encoded.
std::string config_hash(std::string_view text);

/// One line per algorithm id with its default parameters.
std::string list_algorithms();

}  // namespace hardctrl

#endif  // HARDCTRL_EXPERIMENT_HPP
