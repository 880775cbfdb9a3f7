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

#ifndef HARDCTRL_HARNESS_HPP
#define HARDCTRL_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hardctrl/optimizers.hpp"

namespace hardctrl {

inline constexpr double kDefaultThreshold = -4.0;
inline constexpr std::size_t kGreedyRuns = 80;
inline constexpr std::size_t kEvolutionaryRuns = 40;

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  OptimizerTrace trace;
  double final_log_infidelity = 0.0;
  bool success = false;
  double wall_seconds = 0.0;
};

/// One row of a results table. L is a loss: best <= median <= worst.
struct BenchmarkReport {
  std::string problem;
  std::string algorithm;
  std::size_t runs = 0;
  double threshold = kDefaultThreshold;
  double median = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double success_pct = 0.0;
};

struct SuiteOptions {
  std::size_t runs = 1;
  std::uint64_t base_seed = 0;
  double threshold = kDefaultThreshold;
  /// 0 uses std::thread::hardware_concurrency().
  std::size_t workers = 1;
};

/// R independent runs; run r is seeded base_seed + r. Records come back in run
/// order whatever the worker count.
std::vector<RunRecord> run_suite(const Objective& obj, const OptimizerConfig& config,
                                 const SuiteOptions& options);

/// Lower median for even R, ℘ = 100 * #(L_r <= L_t) / R. Throws on empty input.
BenchmarkReport summarize(const std::vector<RunRecord>& records, double threshold,
                          std::string problem = {}, std::string algorithm = {});

/// Runs `repetitions` short runs, each capped at `iterations_cap` iterations.
BenchmarkReport repeated_short_runs(const Objective& obj, OptimizerConfig config,
                                    std::size_t repetitions, std::size_t iterations_cap,
                                    const SuiteOptions& options, std::string problem = {},
                                    std::vector<RunRecord>* records = nullptr);

/// Per-iteration L series, one per run.
struct ConvergenceSeries {
  std::size_t run = 0;
  std::vector<double> log_infidelity;

  bool operator==(const ConvergenceSeries&) const = default;
};

std::vector<ConvergenceSeries> convergence_series(const std::vector<RunRecord>& records);

/// Long-form CSV "run,iteration,L", values printed round-trip exact.
void write_convergence_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_convergence_json(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<ConvergenceSeries> read_convergence_csv(std::istream& in);

enum class ExportFormat { kCsv, kJson };

/// Writes to `path`; throws std::runtime_error if it cannot be opened.
void export_convergence(const std::vector<RunRecord>& records, ExportFormat format,
                        const std::filesystem::path& path);

/// problem,algorithm,R,L_t,median,best,worst,success_pct
void write_report_csv(std::ostream& out, const std::vector<BenchmarkReport>& rows);
void write_report_json(std::ostream& out, const std::vector<BenchmarkReport>& rows);

/// Per-run details including wall time, which is excluded from the reports.
void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace hardctrl

#endif  // HARDCTRL_HARNESS_HPP
