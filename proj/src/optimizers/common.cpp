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

#include <stdexcept>
#include <string>

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

namespace detail {
void require_dimension(const Objective& obj) {
  if (obj.dimension == 0) throw std::invalid_argument("objective dimension must be >= 1");
  if (!obj.evaluate) throw std::invalid_argument("objective has no evaluate function");
}
}  // namespace detail

Objective make_control_objective(std::shared_ptr<const ControlProblem> problem) {
  if (!problem) throw std::invalid_argument("make_control_objective: null problem");
  Objective obj;
  obj.dimension = problem->parameter_count();
  obj.evaluate = [p = problem](std::span<const double> x) { return fitness(*p, x); };
  obj.gradient = [p = problem](std::span<const double> x, std::span<double> g) {
    return fitness_and_gradient(*p, x, g);
  };
  obj.problem = std::move(problem);
  return obj;
}

std::string_view algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::kNelderMead: return "nelder-mead";
    case Algorithm::kBfgs: return "bfgs";
    case Algorithm::kKrotov: return "krotov";
    case Algorithm::kGenetic: return "ga";
    case Algorithm::kDifferentialEvolution: return "de";
    case Algorithm::kPsoCommon: return "pso-common";
    case Algorithm::kPso1: return "pso1";
    case Algorithm::kPso2: return "pso2";
    case Algorithm::kPso3: return "pso3";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view id) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_id(a) == id) return a;
  }
  return std::nullopt;
}

bool is_greedy(Algorithm a) {
  return a == Algorithm::kNelderMead || a == Algorithm::kBfgs || a == Algorithm::kKrotov;
}

PsoCoefficients pso_coefficients(PsoVariant variant) {
  switch (variant) {
    case PsoVariant::kCommon: return {0.9, 0.4, 2.0, 2.0, 1.0};
    case PsoVariant::kClerc: return {1.0, 1.0, 2.05, 2.05, 0.7298};
    case PsoVariant::kTrelea1: return {0.6, 0.6, 1.7, 1.7, 1.0};
    case PsoVariant::kTrelea2: return {0.729, 0.729, 1.492, 1.492, 1.0};
  }
  return {0.9, 0.4, 2.0, 2.0, 1.0};
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::kMaxIterations: return "max_iter";
    case Termination::kStalled: return "stalled";
    case Termination::kMachinePrecision: return "machine_precision";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be >= 1");
  if (stall_window == 0) throw std::invalid_argument("stall_window must be >= 1");
  if (!(stall_epsilon >= 0.0)) throw std::invalid_argument("stall_epsilon must be >= 0");
  if (!(init_low < init_high)) throw std::invalid_argument("init_low must be < init_high");
  if (!(simplex_step > 0.0)) throw std::invalid_argument("simplex_step must be > 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw std::invalid_argument("armijo_c must be in (0,1)");
  if (!(backtrack_shrink > 0.0 && backtrack_shrink < 1.0)) {
    throw std::invalid_argument("backtrack_shrink must be in (0,1)");
  }
  if (!(krotov_alpha > 0.0)) throw std::invalid_argument("krotov_alpha must be > 0");
  if (!(ga_mutation_rate >= 0.0 && ga_mutation_rate <= 1.0)) {
    throw std::invalid_argument("ga_mutation_rate must be in [0,1]");
  }
  if (!(de_mutation >= 0.0 && de_mutation <= 2.0)) {
    throw std::invalid_argument("de_mutation must be in [0,2]");
  }
  if (!(de_crossover > 0.0 && de_crossover < 1.0)) {
    throw std::invalid_argument("de_crossover must be in (0,1)");
  }
  if (algorithm == Algorithm::kDifferentialEvolution && population != 0 && population < 4) {
    throw std::invalid_argument("DE population must be >= 4, got " + std::to_string(population));
  }
  if (algorithm == Algorithm::kGenetic && population == 1) {
    throw std::invalid_argument("GA population must be >= 2");
  }
}

OptimizerConfig default_config(Algorithm a) {
  OptimizerConfig c;
  c.algorithm = a;
  c.max_iterations = is_greedy(a) ? 5000 : 1000;
  return c;
}

std::size_t effective_population(const OptimizerConfig& config, std::size_t dimension) {
  if (config.population != 0) return config.population;
  switch (config.algorithm) {
    case Algorithm::kGenetic: return 70;
    case Algorithm::kDifferentialEvolution:
    case Algorithm::kPsoCommon:
    case Algorithm::kPso1:
    case Algorithm::kPso2:
    case Algorithm::kPso3: return 15 * dimension;
    default: return 1;
  }
}

std::vector<Vector> initialize_population(std::size_t dimension, std::size_t size, Rng& rng,
                                          double low, double high) {
  if (!(low < high)) throw std::invalid_argument("initialize_population: low must be < high");
  if (size == 0) throw std::invalid_argument("initialize_population: size must be >= 1");
  std::uniform_real_distribution<double> uniform(low, high);
  std::vector<Vector> pop(size, Vector(dimension));
  for (auto& x : pop) {
    for (auto& v : x) v = uniform(rng);
  }
  return pop;
}

std::vector<Vector> initialize_population(std::size_t dimension, std::size_t size,
                                          std::uint64_t seed, double low, double high) {
  Rng rng(seed);
  return initialize_population(dimension, size, rng, low, high);
}

OptimizerTrace optimize(const Objective& obj, const OptimizerConfig& config, std::uint64_t seed) {
  switch (config.algorithm) {
    case Algorithm::kNelderMead: return nelder_mead(obj, config, seed);
    case Algorithm::kBfgs: return bfgs(obj, config, seed);
    case Algorithm::kKrotov: return krotov(obj, config, seed);
    case Algorithm::kGenetic: return genetic_algorithm(obj, config, seed);
    case Algorithm::kDifferentialEvolution: return differential_evolution(obj, config, seed);
    case Algorithm::kPsoCommon: return particle_swarm(obj, config, seed, PsoVariant::kCommon);
    case Algorithm::kPso1: return particle_swarm(obj, config, seed, PsoVariant::kClerc);
    case Algorithm::kPso2: return particle_swarm(obj, config, seed, PsoVariant::kTrelea1);
    case Algorithm::kPso3: return particle_swarm(obj, config, seed, PsoVariant::kTrelea2);
  }
  throw std::invalid_argument("optimize: unknown algorithm");
}

}  // namespace hardctrl
