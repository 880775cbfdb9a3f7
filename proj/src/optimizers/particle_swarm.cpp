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

#include <algorithm>

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

OptimizerTrace particle_swarm(const Objective& obj, const OptimizerConfig& config,
                              std::uint64_t seed, PsoVariant variant) {
  detail::require_dimension(obj);
  config.validate();
  const std::size_t dim = obj.dimension;
  const std::size_t swarm = effective_population(config, dim);

  PsoCoefficients k = pso_coefficients(variant);
  if (config.pso_inertia) k.inertia = k.inertia_final = *config.pso_inertia;
  if (config.pso_cognitive) k.cognitive = *config.pso_cognitive;
  if (config.pso_social) k.social = *config.pso_social;
  if (config.pso_constriction) k.constriction = *config.pso_constriction;

  OptimizerTrace trace;
  detail::CountingObjective f(obj, trace);
  detail::Progress progress(config, trace);
  Rng rng(seed);

  auto pos = initialize_population(dim, swarm, rng, config.init_low, config.init_high);
  std::vector<Vector> vel(swarm, Vector(dim, 0.0));
  std::vector<Vector> pbest = pos;
  std::vector<double> pbest_fit(swarm);
  for (std::size_t i = 0; i < swarm; ++i) pbest_fit[i] = f(pos[i]);

  auto g = static_cast<std::size_t>(
      std::max_element(pbest_fit.begin(), pbest_fit.end()) - pbest_fit.begin());
  Vector gbest = pbest[g];
  double gbest_fit = pbest_fit[g];

  std::uniform_real_distribution<double> kick(config.pso_canonical_random ? 0.0 : -1.0, 1.0);
  const double n_iter = static_cast<double>(config.max_iterations);

  if (!progress.record(gbest_fit)) {
    for (std::size_t n = 1;; ++n) {
      // Linear decay w_n = w_max - (n - 1)(w_max - w_min) / N; constant for the
      // fixed-inertia variants where w_max == w_min.
      const double w =
          k.inertia - static_cast<double>(n - 1) * (k.inertia - k.inertia_final) / n_iter;
      for (std::size_t i = 0; i < swarm; ++i) {
        auto& x = pos[i];
        auto& v = vel[i];
        for (std::size_t j = 0; j < dim; ++j) {
          const double r1 = kick(rng);
          const double r2 = kick(rng);
          v[j] = k.constriction * (w * v[j] + k.cognitive * r1 * (pbest[i][j] - x[j]) +
                                   k.social * r2 * (gbest[j] - x[j]));
          x[j] += v[j];
        }
        const double fx = f(x);
        if (fx > pbest_fit[i]) {
          pbest_fit[i] = fx;
          pbest[i] = x;
        }
      }
      for (std::size_t i = 0; i < swarm; ++i) {
        if (pbest_fit[i] > gbest_fit) {
          gbest_fit = pbest_fit[i];
          gbest = pbest[i];
        }
      }
      if (progress.record(gbest_fit)) break;
    }
  }
  trace.best_point = gbest;
  return trace;
}

}  // namespace hardctrl
