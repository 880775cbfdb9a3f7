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

#include "hardctrl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace hardctrl {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

RunRecord execute_run(const Objective& obj, const OptimizerConfig& config, std::size_t run,
                      std::uint64_t seed, double threshold) {
  RunRecord rec;
  rec.run = run;
  rec.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  rec.trace = optimize(obj, config, seed);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rec.final_log_infidelity = log_infidelity(rec.trace.final_fitness());
  rec.success = rec.final_log_infidelity <= threshold;
  return rec;
}

}  // namespace

std::vector<RunRecord> run_suite(const Objective& obj, const OptimizerConfig& config,
                                 const SuiteOptions& options) {
  if (options.runs == 0) throw std::invalid_argument("run_suite: R must be >= 1");
  config.validate();
  std::vector<RunRecord> records(options.runs);

  std::size_t workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::clamp<std::size_t>(workers, 1, options.runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= options.runs) return;
      try {
        records[r] = execute_run(obj, config, r, options.base_seed + r, options.threshold);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(options.runs);
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

BenchmarkReport summarize(const std::vector<RunRecord>& records, double threshold,
                          std::string problem, std::string algorithm) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  std::vector<double> ls;
  ls.reserve(records.size());
  for (const auto& r : records) ls.push_back(r.final_log_infidelity);
  std::sort(ls.begin(), ls.end());

  BenchmarkReport rep;
  rep.problem = std::move(problem);
  rep.algorithm = std::move(algorithm);
  rep.runs = ls.size();
  rep.threshold = threshold;
  rep.median = ls[(ls.size() - 1) / 2];
  rep.best = ls.front();
  rep.worst = ls.back();
  const auto hits = std::count_if(ls.begin(), ls.end(), [&](double l) { return l <= threshold; });
  rep.success_pct = 100.0 * static_cast<double>(hits) / static_cast<double>(ls.size());
  return rep;
}

BenchmarkReport repeated_short_runs(const Objective& obj, OptimizerConfig config,
                                    std::size_t repetitions, std::size_t iterations_cap,
                                    const SuiteOptions& options, std::string problem,
                                    std::vector<RunRecord>* records) {
  if (repetitions == 0) throw std::invalid_argument("repeated_short_runs: repetitions must be >= 1");
  config.max_iterations = iterations_cap;
  SuiteOptions opts = options;
  opts.runs = repetitions;
  auto recs = run_suite(obj, config, opts);
  auto rep = summarize(recs, options.threshold, std::move(problem),
                       std::string(algorithm_id(config.algorithm)));
  if (records) *records = std::move(recs);
  return rep;
}

std::vector<ConvergenceSeries> convergence_series(const std::vector<RunRecord>& records) {
  std::vector<ConvergenceSeries> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    ConvergenceSeries s{r.run, {}};
    s.log_infidelity.reserve(r.trace.best_fitness.size());
    for (double f : r.trace.best_fitness) s.log_infidelity.push_back(log_infidelity(f));
    out.push_back(std::move(s));
  }
  return out;
}

void write_convergence_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "run,iteration,L\n";
  for (const auto& s : convergence_series(records)) {
    for (std::size_t i = 0; i < s.log_infidelity.size(); ++i) {
      out << s.run << ',' << i << ',' << format_double(s.log_infidelity[i]) << '\n';
    }
  }
}

void write_convergence_json(std::ostream& out, const std::vector<RunRecord>& records) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto series = convergence_series({records[i]});
    j.push_back({{"run", records[i].run},
                 {"seed", records[i].seed},
                 {"termination", termination_name(records[i].trace.termination)},
                 {"L", series.front().log_infidelity}});
  }
  out << j.dump(1) << '\n';
}

std::vector<ConvergenceSeries> read_convergence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "run,iteration,L") {
    throw std::runtime_error("read_convergence_csv: missing 'run,iteration,L' header");
  }
  std::vector<ConvergenceSeries> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t run = 0, iter = 0;
    double l = 0.0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(p, end, run);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',') {
      throw std::runtime_error("read_convergence_csv: bad run at line " + std::to_string(lineno));
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, iter);
    if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',') {
      throw std::runtime_error("read_convergence_csv: bad iteration at line " +
                               std::to_string(lineno));
    }
    auto r3 = std::from_chars(r2.ptr + 1, end, l);
    if (r3.ec != std::errc{}) {
      throw std::runtime_error("read_convergence_csv: bad L at line " + std::to_string(lineno));
    }
    if (out.empty() || out.back().run != run) out.push_back({run, {}});
    if (out.back().log_infidelity.size() != iter) {
      throw std::runtime_error("read_convergence_csv: non-contiguous iteration at line " +
                               std::to_string(lineno));
    }
    out.back().log_infidelity.push_back(l);
  }
  return out;
}

void export_convergence(const std::vector<RunRecord>& records, ExportFormat format,
                        const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("export_convergence: no records");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (format == ExportFormat::kCsv) {
    write_convergence_csv(out, records);
  } else {
    write_convergence_json(out, records);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_report_csv(std::ostream& out, const std::vector<BenchmarkReport>& rows) {
  out << "problem,algorithm,R,L_t,median,best,worst,success_pct\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.algorithm << ',' << r.runs << ',' << format_double(r.threshold)
        << ',' << format_double(r.median) << ',' << format_double(r.best) << ','
        << format_double(r.worst) << ',' << format_double(r.success_pct) << '\n';
  }
}

void write_report_json(std::ostream& out, const std::vector<BenchmarkReport>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"problem", r.problem},
                 {"algorithm", r.algorithm},
                 {"R", r.runs},
                 {"L_t", r.threshold},
                 {"median", r.median},
                 {"best", r.best},
                 {"worst", r.worst},
                 {"success_pct", r.success_pct}});
  }
  out << j.dump(1) << '\n';
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "run,seed,iterations,evaluations,termination,L,success,wall_seconds\n";
  for (const auto& r : records) {
    out << r.run << ',' << r.seed << ',' << (r.trace.best_fitness.empty() ? 0 : r.trace.best_fitness.size() - 1) << ','
        << r.trace.evaluations << ',' << termination_name(r.trace.termination) << ','
        << format_double(r.final_log_infidelity) << ',' << (r.success ? 1 : 0) << ','
        << format_double(r.wall_seconds) << '\n';
  }
}

}  // namespace hardctrl
