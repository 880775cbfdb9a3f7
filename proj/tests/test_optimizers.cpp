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

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include "hardctrl/optimizers.hpp"
#include "hardctrl/problems.hpp"
#include "test_support.hpp"

using namespace hardctrl;
using hardctrl::testing::nondecreasing;
using hardctrl::testing::sphere;

namespace {

Objective qutrit_objective(double t = 2.5 * std::numbers::pi, std::size_t k = 10) {
  return make_control_objective(std::make_shared<ControlProblem>(make_problem("qutrit", t, k)));
}

// f(x) = -(x - c)^T A (x - c) with A symmetric positive definite.
Objective shifted_quadratic() {
  static const Eigen::Matrix3d a = (Eigen::Matrix3d() << 3, 1, 0, 1, 2, 0.5, 0, 0.5, 1).finished();
  static const Eigen::Vector3d c(0.4, -0.2, 0.7);
  Objective obj;
  obj.dimension = 3;
  obj.evaluate = [](std::span<const double> x) {
    const Eigen::Vector3d d = Eigen::Vector3d(x[0], x[1], x[2]) - c;
    return -d.dot(a * d);
  };
  obj.gradient = [](std::span<const double> x, std::span<double> g) {
    const Eigen::Vector3d d = Eigen::Vector3d(x[0], x[1], x[2]) - c;
    const Eigen::Vector3d grad = -2.0 * (a * d);
    for (int i = 0; i < 3; ++i) g[i] = grad[i];
    return -d.dot(a * d);
  };
  return obj;
}

double norm_inf(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("algorithm ids round-trip") {
  for (Algorithm a : kAllAlgorithms) CHECK(parse_algorithm(algorithm_id(a)) == a);
  CHECK_FALSE(parse_algorithm("simulated-annealing").has_value());
  CHECK(is_greedy(Algorithm::kBfgs));
  CHECK(is_greedy(Algorithm::kNelderMead));
  CHECK(is_greedy(Algorithm::kKrotov));
  CHECK_FALSE(is_greedy(Algorithm::kDifferentialEvolution));
  CHECK(termination_name(Termination::kStalled) == "stalled");
}

TEST_CASE("default configs") {
  CHECK(default_config(Algorithm::kBfgs).max_iterations == 5000);
  CHECK(default_config(Algorithm::kPso1).max_iterations == 1000);
  const auto de = default_config(Algorithm::kDifferentialEvolution);
  CHECK(de.de_mutation == 0.5);
  CHECK(de.de_crossover == 0.9);
  CHECK(effective_population(de, 10) == 150);
  CHECK(effective_population(de, 16) == 240);
  CHECK(effective_population(default_config(Algorithm::kGenetic), 10) == 70);
  CHECK(default_config(Algorithm::kGenetic).ga_mutation_rate == 0.001);
}

TEST_CASE("config validation") {
  auto c = default_config(Algorithm::kDifferentialEvolution);
  c.init_low = 1.0;
  c.init_high = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = default_config(Algorithm::kDifferentialEvolution);
  c.stall_epsilon = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = default_config(Algorithm::kDifferentialEvolution);
  c.population = 3;
  CHECK_THROWS_AS(differential_evolution(sphere(2), c, 1), std::invalid_argument);
}

TEST_CASE("PSO coefficient sets") {
  const auto common = pso_coefficients(PsoVariant::kCommon);
  CHECK(common.inertia == 0.9);
  CHECK(common.inertia_final == 0.4);
  CHECK(common.cognitive == 2.0);
  CHECK(common.constriction == 1.0);
  const auto clerc = pso_coefficients(PsoVariant::kClerc);
  CHECK(clerc.inertia == 1.0);
  CHECK(clerc.cognitive == 2.05);
  CHECK(clerc.constriction == 0.7298);
  CHECK(pso_coefficients(PsoVariant::kTrelea1).inertia == 0.6);
  CHECK(pso_coefficients(PsoVariant::kTrelea1).social == 1.7);
  CHECK(pso_coefficients(PsoVariant::kTrelea2).inertia == 0.729);
  CHECK(pso_coefficients(PsoVariant::kTrelea2).cognitive == 1.492);
}

TEST_CASE("initialize_population") {
  const auto a = initialize_population(5, 7, 42, -1.0, 1.0);
  CHECK(a == initialize_population(5, 7, 42, -1.0, 1.0));
  CHECK(a != initialize_population(5, 7, 43, -1.0, 1.0));
  const auto one = initialize_population(1, 1, 3, 2.0, 3.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0][0] >= 2.0);
  CHECK(one[0][0] <= 3.0);

  const auto big = initialize_population(1, 100000, 9, -1.0, 3.0);
  double sum = 0.0;
  for (const auto& v : big) sum += v[0];
  CHECK(std::abs(sum / 1e5 - 1.0) <= 0.01);

  CHECK_THROWS_AS(initialize_population(2, 2, 1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(initialize_population(2, 0, 1, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("Nelder-Mead converges on the sphere, D=4") {
  auto config = default_config(Algorithm::kNelderMead);
  config.max_iterations = 2000;
  const auto trace = nelder_mead(sphere(4), config, 1);
  CHECK(-trace.final_fitness() <= 1e-8);
  CHECK(trace.best_fitness.size() <= 2001);
  CHECK(nondecreasing(trace.best_fitness));
}

TEST_CASE("Nelder-Mead on a one-dimensional quadratic") {
  auto obj = sphere(1);
  const auto trace = nelder_mead(obj, default_config(Algorithm::kNelderMead), 5);
  CHECK(std::abs(trace.best_point[0]) <= 1e-10);
}

TEST_CASE("BFGS finds the optimum of a quadratic in at most D + 1 iterations") {
  const auto obj = shifted_quadratic();
  auto config = default_config(Algorithm::kBfgs);
  config.max_iterations = 4;
  const auto trace = bfgs(obj, config, 3);
  CHECK(std::abs(trace.best_point[0] - 0.4) <= 1e-10);
  CHECK(std::abs(trace.best_point[1] + 0.2) <= 1e-10);
  CHECK(std::abs(trace.best_point[2] - 0.7) <= 1e-10);
}

TEST_CASE("BFGS requires a gradient") {
  auto obj = sphere(3);
  obj.gradient = nullptr;
  CHECK_THROWS_AS(bfgs(obj, default_config(Algorithm::kBfgs), 1), std::invalid_argument);
}

TEST_CASE("BFGS stalls immediately at the qutrit trap") {
  auto config = default_config(Algorithm::kBfgs);
  config.init_low = -1e-300;
  config.init_high = 1e-300;
  const auto trace = bfgs(qutrit_objective(), config, 1);
  CHECK(trace.termination == Termination::kStalled);
  CHECK(log_infidelity(trace.final_fitness()) == doctest::Approx(-0.1083).epsilon(1e-3));
}

TEST_CASE("Krotov sweep is negligible at the qutrit trap") {
  const auto p = make_problem("qutrit", 2.5 * std::numbers::pi, 10);
  const std::vector<double> zero(10, 0.0);
  CHECK(norm_inf(krotov_sweep(p, zero, 1.0)) <= 1e-8);

  auto config = default_config(Algorithm::kKrotov);
  config.init_low = -1e-300;
  config.init_high = 1e-300;
  const auto trace = krotov(qutrit_objective(), config, 1);
  CHECK(trace.termination == Termination::kStalled);
}

TEST_CASE("Krotov raises F monotonically on a single-bin toy problem") {
  QutritSpec spec;
  spec.bins = 1;
  spec.horizon = 2.0;
  const auto p = std::make_shared<ControlProblem>(make_qutrit_problem(spec));

  // A short sweep is an ascent step.
  const std::vector<double> x{0.5};
  CHECK(fitness(*p, krotov_sweep(*p, x, 0.01)) > fitness(*p, x));

  auto config = default_config(Algorithm::kKrotov);
  config.max_iterations = 30;
  const auto trace = krotov(make_control_objective(p), config, 3);
  CHECK(nondecreasing(trace.best_fitness));
  CHECK(trace.final_fitness() > trace.best_fitness.front());
}

TEST_CASE("Krotov trace is nondecreasing") {
  const auto trace = krotov(qutrit_objective(), default_config(Algorithm::kKrotov), 2);
  CHECK(nondecreasing(trace.best_fitness));
}

TEST_CASE("sequential gradient sweep moves along an ascent direction") {
  const auto obj = sphere(3);
  const std::vector<double> x{1.0, -2.0, 0.5};
  const auto y = sequential_gradient_sweep(obj, x, 0.25);
  CHECK(obj.evaluate(y) > obj.evaluate(x));
}

TEST_CASE("GA keeps its elite") {
  auto config = default_config(Algorithm::kGenetic);
  config.max_iterations = 200;
  const auto trace = genetic_algorithm(sphere(10), config, 4);
  CHECK(nondecreasing(trace.best_fitness));
}

TEST_CASE("GA on an all-identical population never loses its best") {
  auto config = default_config(Algorithm::kGenetic);
  config.init_low = 0.5;
  config.init_high = std::nextafter(0.5, 1.0);
  config.max_iterations = 100;
  const auto trace = genetic_algorithm(sphere(5), config, 8);
  CHECK(nondecreasing(trace.best_fitness));
  CHECK(trace.final_fitness() == doctest::Approx(trace.best_fitness.front()).epsilon(1e-12));
}

TEST_CASE("DE with zero mutation on an identical population is frozen") {
  auto config = default_config(Algorithm::kDifferentialEvolution);
  config.de_mutation = 0.0;
  config.init_low = 0.5;
  config.init_high = std::nextafter(0.5, 1.0);
  config.max_iterations = 50;
  const auto trace = differential_evolution(sphere(4), config, 2);
  for (double f : trace.best_fitness) CHECK(f == doctest::Approx(trace.best_fitness[0]).epsilon(1e-14));
}

TEST_CASE("DE reaches 1e-10 on the sphere, D=16, N_P=240") {
  auto config = default_config(Algorithm::kDifferentialEvolution);
  config.max_iterations = 2000;
  config.population = 240;
  const auto trace = differential_evolution(sphere(16), config, 6);
  CHECK(-trace.final_fitness() <= 1e-10);
  CHECK(nondecreasing(trace.best_fitness));
}

TEST_CASE("PSO: a lone particle at rest is a fixed point") {
  auto config = default_config(Algorithm::kPso1);
  config.population = 1;
  config.max_iterations = 50;
  config.stall_window = 1000;
  for (PsoVariant v : {PsoVariant::kCommon, PsoVariant::kClerc, PsoVariant::kTrelea1,
                       PsoVariant::kTrelea2}) {
    const auto trace = particle_swarm(sphere(3), config, 9, v);
    const auto start = initialize_population(3, 1, 9, -1.0, 1.0)[0];
    CHECK(trace.best_point == start);
    CHECK(trace.best_fitness.size() == 51);
  }
}

TEST_CASE("constricted and fixed-inertia PSO with r in [0, 1] improve the sphere by four orders") {
  auto config = default_config(Algorithm::kPsoCommon);
  config.pso_canonical_random = true;
  config.max_iterations = 1000;
  for (PsoVariant v : {PsoVariant::kClerc, PsoVariant::kTrelea1, PsoVariant::kTrelea2}) {
    const auto trace = particle_swarm(sphere(10), config, 1, v);
    CHECK(trace.final_fitness() / trace.best_fitness.front() <= 1e-4);
    CHECK(nondecreasing(trace.best_fitness));
  }
}

TEST_CASE("PSO with r in [-1, 1] keeps a nondecreasing global best") {
  for (Algorithm a : {Algorithm::kPsoCommon, Algorithm::kPso1, Algorithm::kPso2, Algorithm::kPso3}) {
    const auto trace = optimize(sphere(10), default_config(a), 1);
    CHECK(nondecreasing(trace.best_fitness));
  }
}

TEST_CASE("optimizers are deterministic for a fixed seed") {
  const auto obj = qutrit_objective();
  for (Algorithm a : kAllAlgorithms) {
    auto config = default_config(a);
    config.max_iterations = 20;
    CAPTURE(algorithm_id(a));
    const auto first = optimize(obj, config, 17);
    const auto second = optimize(obj, config, 17);
    CHECK(first == second);
    CHECK(first.best_fitness.size() >= 2);
    if (!is_greedy(a)) CHECK(nondecreasing(first.best_fitness));
  }
}

TEST_CASE("the stall rule stops a flat objective") {
  Objective flat;
  flat.dimension = 2;
  flat.evaluate = [](std::span<const double>) { return 0.5; };
  auto config = default_config(Algorithm::kDifferentialEvolution);
  config.stall_window = 10;
  const auto trace = differential_evolution(flat, config, 1);
  CHECK(trace.termination == Termination::kStalled);
  CHECK(trace.best_fitness.size() == 11);
}

TEST_CASE("reaching F = 1 ends a run at machine precision") {
  Objective one;
  one.dimension = 2;
  one.evaluate = [](std::span<const double>) { return 1.0; };
  const auto trace = differential_evolution(one, default_config(Algorithm::kDifferentialEvolution), 1);
  CHECK(trace.termination == Termination::kMachinePrecision);
  CHECK(trace.best_fitness.size() == 1);
}
