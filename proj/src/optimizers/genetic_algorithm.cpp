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
#include <numeric>
#include <stdexcept>

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

// Real-coded GA: roulette-wheel parent selection on shifted fitness, two-point
// crossover, in-vector replacement mutation, and the single best individual
// carried over unchanged.
OptimizerTrace genetic_algorithm(const Objective& obj, const OptimizerConfig& config,
                                 std::uint64_t seed) {
  detail::require_dimension(obj);
  config.validate();
  const std::size_t dim = obj.dimension;
  const std::size_t n = effective_population(config, dim);
  if (n < 2) throw std::invalid_argument("genetic_algorithm: population must be >= 2");

  OptimizerTrace trace;
  detail::CountingObjective f(obj, trace);
  detail::Progress progress(config, trace);
  Rng rng(seed);

  auto pop = initialize_population(dim, n, rng, config.init_low, config.init_high);
  std::vector<double> fit(n);
  for (std::size_t i = 0; i < n; ++i) fit[i] = f(pop[i]);

  auto best_index = [&] {
    return static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
  };

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
  std::vector<double> cumulative(n);
  std::vector<Vector> next(n, Vector(dim));
  std::vector<double> next_fit(n);

  auto spin = [&] {
    const double r = unit(rng) * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), n - 1);
  };

  if (!progress.record(fit[best_index()])) {
    for (;;) {
      // Roulette weights f_i - min_j f_j + 1e-12 keep every probability positive.
      const double lowest = *std::min_element(fit.begin(), fit.end());
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = std::isfinite(fit[i]) ? fit[i] - lowest + 1e-12 : 0.0;
        acc += std::isfinite(w) ? w : 0.0;
        cumulative[i] = acc;
      }

      const std::size_t elite = best_index();
      next[0] = pop[elite];
      next_fit[0] = fit[elite];
      for (std::size_t c = 1; c < n; ++c) {
        const Vector& p1 = pop[spin()];
        const Vector& p2 = pop[spin()];
        std::size_t lo = pick_dim(rng);
        std::size_t hi = pick_dim(rng);
        if (lo > hi) std::swap(lo, hi);
        Vector& child = next[c];
        for (std::size_t j = 0; j < dim; ++j) child[j] = (j >= lo && j <= hi) ? p2[j] : p1[j];
        // Mutated genes take the value of a uniformly chosen gene of the same child.
        for (std::size_t j = 0; j < dim; ++j) {
          if (unit(rng) < config.ga_mutation_rate) child[j] = child[pick_dim(rng)];
        }
        next_fit[c] = f(child);
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
