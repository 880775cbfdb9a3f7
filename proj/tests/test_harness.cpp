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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <memory>
#include <numbers>
#include <sstream>

#include "hardctrl/harness.hpp"
#include "hardctrl/problems.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace hardctrl;

namespace {

RunRecord record_with(double l, std::size_t run = 0) {
  RunRecord r;
  r.run = run;
  r.final_log_infidelity = l;
  r.success = l <= kDefaultThreshold;
  return r;
}

std::vector<RunRecord> records_with(std::initializer_list<double> ls) {
  std::vector<RunRecord> out;
  for (double l : ls) out.push_back(record_with(l, out.size()));
  return out;
}

Objective cnot_objective() {
  return make_control_objective(std::make_shared<ControlProblem>(make_problem("cnot", 3.2, 4)));
}

void check_same_runs(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].run == b[i].run);
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].trace == b[i].trace);
    CHECK(a[i].final_log_infidelity == b[i].final_log_infidelity);
    CHECK(a[i].success == b[i].success);
  }
}

}  // namespace

TEST_CASE("summarize: hand-computed example") {
  const auto rep = summarize(records_with({-1.0, -5.0, -3.0}), -4.0, "p", "a");
  CHECK(rep.median == -3.0);
  CHECK(rep.best == -5.0);
  CHECK(rep.worst == -1.0);
  CHECK(rep.success_pct == doctest::Approx(33.333333));
  CHECK(rep.runs == 3);
  CHECK(rep.problem == "p");
}

TEST_CASE("summarize: clamp, single record, even count, empty") {
  const auto all = summarize(records_with({-16.0, -16.0}), -4.0);
  CHECK(all.median == -16.0);
  CHECK(all.best == -16.0);
  CHECK(all.worst == -16.0);
  CHECK(all.success_pct == 100.0);

  const auto one = summarize(records_with({-2.5}), -4.0);
  CHECK(one.median == -2.5);
  CHECK(one.best == -2.5);
  CHECK(one.worst == -2.5);
  CHECK(one.success_pct == 0.0);

  CHECK(summarize(records_with({-1.0, -2.0, -3.0, -4.0}), -4.0).median == -3.0);
  CHECK_THROWS_AS(summarize({}, -4.0), std::invalid_argument);
}

TEST_CASE("summarize properties") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-16.0, 0.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RunRecord> recs;
    for (int i = 0; i < 1 + trial % 9; ++i) recs.push_back(record_with(u(rng)));
    const auto rep = summarize(recs, -4.0);
    CHECK(rep.best <= rep.median);
    CHECK(rep.median <= rep.worst);
    CHECK(rep.success_pct >= 0.0);
    CHECK(rep.success_pct <= 100.0);

    auto doubled = recs;
    doubled.insert(doubled.end(), recs.begin(), recs.end());
    const auto twice = summarize(doubled, -4.0);
    CHECK(twice.median == rep.median);
    CHECK(twice.best == rep.best);
    CHECK(twice.worst == rep.worst);

    double prev = 101.0;
    for (double lt = 0.0; lt >= -16.0; lt -= 0.5) {
      const double pct = summarize(recs, lt).success_pct;
      CHECK(pct <= prev);
      prev = pct;
    }
  }
}

TEST_CASE("run_suite is reproducible and independent of the worker count") {
  const auto obj = cnot_objective();
  auto config = default_config(Algorithm::kDifferentialEvolution);
  config.max_iterations = 15;
  const auto a = run_suite(obj, config, {2, 100, -4.0, 1});
  const auto b = run_suite(obj, config, {2, 100, -4.0, 1});
  check_same_runs(a, b);
  CHECK(a[0].seed == 100);
  CHECK(a[1].seed == 101);

  auto nm = default_config(Algorithm::kNelderMead);
  nm.max_iterations = 40;
  const auto serial = run_suite(obj, nm, {6, 7, -4.0, 1});
  const auto parallel = run_suite(obj, nm, {6, 7, -4.0, 3});
  check_same_runs(serial, parallel);
  for (const auto& r : serial) CHECK(r.success == (r.final_log_infidelity <= -4.0));
}

TEST_CASE("run_suite rejects bad input") {
  const auto obj = cnot_objective();
  CHECK_THROWS_AS(run_suite(obj, default_config(Algorithm::kBfgs), {0, 0, -4.0, 1}),
                  std::invalid_argument);
  auto bad = default_config(Algorithm::kDifferentialEvolution);
  bad.population = 2;
  CHECK_THROWS_AS(run_suite(obj, bad, {2, 0, -4.0, 2}), std::invalid_argument);
}

TEST_CASE("repeated_short_runs with one repetition equals a capped single run") {
  const auto obj = cnot_objective();
  auto config = default_config(Algorithm::kBfgs);
  std::vector<RunRecord> short_records;
  const auto rep = repeated_short_runs(obj, config, 1, 10, {1, 5, -4.0, 1}, "cnot", &short_records);
  config.max_iterations = 10;
  const auto single = run_suite(obj, config, {1, 5, -4.0, 1});
  check_same_runs(short_records, single);
  CHECK(rep.runs == 1);
  CHECK(rep.algorithm == "bfgs");
  CHECK(short_records[0].trace.best_fitness.size() <= 11);
  CHECK_THROWS_AS(repeated_short_runs(obj, config, 0, 10, {}), std::invalid_argument);
}

TEST_CASE("repeated_short_runs on the sphere always succeeds at a loose threshold") {
  // F = -|x|^2 <= 0, so L = log10(1 + |x|^2); succeed once |x|^2 <= 1e-8.
  const double loose = std::log10(1.0 + 1e-8);
  const auto rep = repeated_short_runs(testing::sphere(4), default_config(Algorithm::kBfgs), 20,
                                       1000, {1, 0, loose, 1});
  CHECK(rep.success_pct == 100.0);
}

TEST_CASE("convergence CSV: row count and exact round trip") {
  RunRecord r = record_with(0.0);
  r.trace.best_fitness = {0.1, 0.5, 0.9};
  std::ostringstream one;
  write_convergence_csv(one, {r});
  std::size_t lines = 0;
  for (char c : one.str()) lines += c == '\n';
  CHECK(lines == 4);

  const auto obj = cnot_objective();
  auto config = default_config(Algorithm::kNelderMead);
  config.max_iterations = 60;
  const auto recs = run_suite(obj, config, {3, 11, -4.0, 1});
  std::stringstream csv;
  write_convergence_csv(csv, recs);
  CHECK(read_convergence_csv(csv) == convergence_series(recs));
}

TEST_CASE("convergence CSV reader rejects malformed input") {
  std::istringstream no_header("0,0,-1\n");
  CHECK_THROWS_AS(read_convergence_csv(no_header), std::runtime_error);
  std::istringstream gap("run,iteration,L\n0,0,-1\n0,2,-2\n");
  CHECK_THROWS_AS(read_convergence_csv(gap), std::runtime_error);
  std::istringstream junk("run,iteration,L\n0,x,-1\n");
  CHECK_THROWS_AS(read_convergence_csv(junk), std::runtime_error);
}

TEST_CASE("convergence JSON mirrors the CSV") {
  RunRecord r = record_with(0.0, 4);
  r.seed = 9;
  r.trace.best_fitness = {0.0, 0.9};
  std::ostringstream out;
  write_convergence_json(out, {r});
  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["run"] == 4);
  CHECK(j[0]["seed"] == 9);
  CHECK(j[0]["L"].size() == 2);
  CHECK(j[0]["L"][1].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("export_convergence writes files and reports unwritable paths") {
  RunRecord r = record_with(0.0);
  r.trace.best_fitness = {0.5};
  const auto dir = std::filesystem::temp_directory_path() / "hardctrl_test_export";
  std::filesystem::create_directories(dir);
  export_convergence({r}, ExportFormat::kCsv, dir / "c.csv");
  export_convergence({r}, ExportFormat::kJson, dir / "c.json");
  CHECK(std::filesystem::file_size(dir / "c.csv") > 0);
  CHECK(std::filesystem::file_size(dir / "c.json") > 0);
  CHECK_THROWS_AS(export_convergence({r}, ExportFormat::kCsv, dir / "missing" / "c.csv"),
                  std::runtime_error);
  CHECK_THROWS_AS(export_convergence({}, ExportFormat::kCsv, dir / "c.csv"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("report CSV and JSON") {
  BenchmarkReport rep{"qutrit", "de", 40, -4.0, -3.0, -5.0, -1.0, 72.5};
  std::ostringstream csv;
  write_report_csv(csv, {rep});
  CHECK(csv.str() == "problem,algorithm,R,L_t,median,best,worst,success_pct\n"
                     "qutrit,de,40,-4,-3,-5,-1,72.5\n");
  std::ostringstream js;
  write_report_json(js, {rep});
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j[0]["algorithm"] == "de");
  CHECK(j[0]["success_pct"].get<double>() == 72.5);
}

TEST_CASE("runs CSV lists one row per run") {
  std::ostringstream out;
  write_runs_csv(out, records_with({-1.0, -2.0}));
  std::size_t lines = 0;
  for (char c : out.str()) lines += c == '\n';
  CHECK(lines == 3);
  CHECK(out.str().find("wall_seconds") != std::string::npos);
}
