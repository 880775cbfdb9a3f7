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

#ifndef HARDCTRL_OPTIMIZERS_HPP
#define HARDCTRL_OPTIMIZERS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardctrl/control.hpp"

namespace hardctrl {

using Rng = std::mt19937_64;
using Vector = std::vector<double>;

/// A fitness F to be maximized over R^D.
struct Objective {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> evaluate;
  /// Optional: returns F and writes dF/dx into the second argument.
  std::function<double(std::span<const double>, std::span<double>)> gradient;
  /// Set when the objective is a gate-synthesis fidelity; Krotov needs the bins.
  std::shared_ptr<const ControlProblem> problem;
};

Objective make_control_objective(std::shared_ptr<const ControlProblem> problem);

enum class Algorithm {
  kNelderMead,
  kBfgs,
  kKrotov,
  kGenetic,
  kDifferentialEvolution,
  kPsoCommon,
  kPso1,
  kPso2,
  kPso3,
};

inline constexpr std::array<Algorithm, 9> kAllAlgorithms{
    Algorithm::kNelderMead, Algorithm::kBfgs,  Algorithm::kKrotov,
    Algorithm::kGenetic,    Algorithm::kDifferentialEvolution,
    Algorithm::kPsoCommon,  Algorithm::kPso1,  Algorithm::kPso2,
    Algorithm::kPso3,
};

/// CLI/config id: nelder-mead, bfgs, krotov, ga, de, pso-common, pso1, pso2, pso3.
std::string_view algorithm_id(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view id);

/// Simplex, BFGS and Krotov are local searches.
bool is_greedy(Algorithm a);

enum class PsoVariant { kCommon, kClerc, kTrelea1, kTrelea2 };

/// Inertia, attraction and constriction for one PSO parameterization. `inertia`
/// is the starting value; only the common variant decays it to `inertia_final`.
struct PsoCoefficients {
  double inertia;
  double inertia_final;
  double cognitive;
  double social;
  double constriction;
};

PsoCoefficients pso_coefficients(PsoVariant variant);

enum class Termination { kMaxIterations, kStalled, kMachinePrecision };

std::string_view termination_name(Termination t);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::kDifferentialEvolution;
  std::size_t max_iterations = 1000;
  std::size_t stall_window = 50;
  double stall_epsilon = 1e-15;
  double init_low = -1.0;
  double init_high = 1.0;
  /// 0 selects the algorithm default (70 for GA, 15 D for DE and PSO).
  std::size_t population = 0;

  // Nelder-Mead
  double simplex_step = 0.1;
  // BFGS
  double armijo_c = 1e-4;
  double backtrack_shrink = 0.5;
  // Krotov
  double krotov_alpha = 1.0;
  // GA
  double ga_mutation_rate = 0.001;
  // DE
  double de_mutation = 0.5;
  double de_crossover = 0.9;
  // PSO: unset fields fall back to the variant's coefficients.
  std::optional<double> pso_inertia;
  std::optional<double> pso_cognitive;
  std::optional<double> pso_social;
  std::optional<double> pso_constriction;
  /// Draw r1, r2 from [0, 1] instead of [-1, 1].
  bool pso_canonical_random = false;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Defaults per algorithm: 5000 iterations for greedy methods, 1000 otherwise.
OptimizerConfig default_config(Algorithm a);

/// Population size actually used for dimension D.
std::size_t effective_population(const OptimizerConfig& config, std::size_t dimension);

struct OptimizerTrace {
  /// Best fitness after iteration i; entry 0 is the initial best.
  std::vector<double> best_fitness;
  Vector best_point;
  Termination termination = Termination::kMaxIterations;
  std::size_t evaluations = 0;

  double final_fitness() const { return best_fitness.empty() ? 0.0 : best_fitness.back(); }

  bool operator==(const OptimizerTrace&) const = default;
};

/// I.i.d. uniform vectors in [low, high]^D. Throws if low >= high or size == 0.
std::vector<Vector> initialize_population(std::size_t dimension, std::size_t size, Rng& rng,
                                          double low, double high);
std::vector<Vector> initialize_population(std::size_t dimension, std::size_t size,
                                          std::uint64_t seed, double low, double high);

OptimizerTrace nelder_mead(const Objective& obj, const OptimizerConfig& config,
                           std::uint64_t seed);

/// Requires obj.gradient.
OptimizerTrace bfgs(const Objective& obj, const OptimizerConfig& config, std::uint64_t seed);

/// One sequential first-order sweep over bins k = 0..K-1:
/// eps_{k,l} += step (dt/N) Im Tr(W^dagger P_{>k} H_l P_{<=k}), where the forward
/// product P_{<=k} is rebuilt from the bins already updated in this sweep.
Vector krotov_sweep(const ControlProblem& problem, std::span<const double> params, double step);

/// Same sequential update for an objective without bin structure: coordinates
/// are visited in order, each stepped along dF/dx_j at the partially updated point.
Vector sequential_gradient_sweep(const Objective& obj, std::span<const double> params,
                                 double step);

/// Each iteration is one sweep with step 1/alpha; a sweep that fails to raise F
/// is discarded and the step halved. Uses krotov_sweep when obj.problem is set,
/// otherwise sequential_gradient_sweep (requires obj.gradient).
OptimizerTrace krotov(const Objective& obj, const OptimizerConfig& config, std::uint64_t seed);

OptimizerTrace genetic_algorithm(const Objective& obj, const OptimizerConfig& config,
                                 std::uint64_t seed);

OptimizerTrace differential_evolution(const Objective& obj, const OptimizerConfig& config,
                                      std::uint64_t seed);

OptimizerTrace particle_swarm(const Objective& obj, const OptimizerConfig& config,
                              std::uint64_t seed, PsoVariant variant);

/// Dispatches on config.algorithm.
OptimizerTrace optimize(const Objective& obj, const OptimizerConfig& config, std::uint64_t seed);

}  // namespace hardctrl

#endif  // HARDCTRL_OPTIMIZERS_HPP
