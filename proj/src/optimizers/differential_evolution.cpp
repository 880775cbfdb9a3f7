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
#include <stdexcept>

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

// DE/rand/1/bin: donor V = X_a + mu (X_b - X_c) with a, b, c, i mutually
// distinct; binomial crossover at rate xi with one forced donor component;
// trial replaces its target only if it is strictly fitter.
OptimizerTrace differential_evolution(const Objective& obj, const OptimizerConfig& config,
                                      std::uint64_t seed) {
  detail::require_dimension(obj);
  config.validate();
  const std::size_t dim = obj.dimension;
  const std::size_t np = effective_population(config, dim);
  if (np < 4) {
    throw std::invalid_argument("differential_evolution: population must be >= 4 (mutation needs "
                                "four distinct members)");
  }

  OptimizerTrace trace;
  detail::CountingObjective f(obj, trace);
  detail::Progress progress(config, trace);
  Rng rng(seed);

  auto pop = initialize_population(dim, np, rng, config.init_low, config.init_high);
  std::vector<double> fit(np);
  for (std::size_t i = 0; i < np; ++i) fit[i] = f(pop[i]);

  auto best_index = [&] {
    return static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
  };

  std::uniform_int_distribution<std::size_t> pick(0, np - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Vector> next = pop;
  std::vector<double> next_fit = fit;
  Vector trial(dim);

  if (!progress.record(fit[best_index()])) {
    for (;;) {
      for (std::size_t i = 0; i < np; ++i) {
        std::size_t a, b, c;
        do a = pick(rng); while (a == i);
        do b = pick(rng); while (b == i || b == a);
        do c = pick(rng); while (c == i || c == a || c == b);

        const std::size_t forced = pick_dim(rng);
        for (std::size_t j = 0; j < dim; ++j) {
          const bool take_donor = unit(rng) < config.de_crossover || j == forced;
          trial[j] = take_donor ? pop[a][j] + config.de_mutation * (pop[b][j] - pop[c][j])
                                : pop[i][j];
        }
        const double ft = f(trial);
        if (ft > fit[i]) {
          next[i] = trial;
          next_fit[i] = ft;
        } else {
          next[i] = pop[i];
          next_fit[i] = fit[i];
        }
      }
      std::swap(pop, next);
      std::swap(fit, next_fit);
      if (progress.record(fit[best_index()])) break;
    }
  }
  trace.best_point = pop[best_index()];
  return trace;
}

}  // namespace hardctrl
