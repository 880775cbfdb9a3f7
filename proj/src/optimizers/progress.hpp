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

#ifndef HARDCTRL_OPTIMIZERS_PROGRESS_HPP
#define HARDCTRL_OPTIMIZERS_PROGRESS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "hardctrl/optimizers.hpp"

namespace hardctrl::detail {

// Records the per-iteration best fitness and applies the abort rule: stop when
// the best fitness moved by less than stall_epsilon over stall_window
// iterations, when 1 - F drops below 1e-16, or at max_iterations.
class Progress {
 public:
  Progress(const OptimizerConfig& config, OptimizerTrace& trace)
      : config_(config), trace_(trace) {}

  // Returns the termination reason once the run should stop.
  std::optional<Termination> record(double best) {
    trace_.best_fitness.push_back(best);
    const std::size_t iterations = trace_.best_fitness.size() - 1;
    if (1.0 - best < 1e-16) return finish(Termination::kMachinePrecision);
    if (iterations >= config_.stall_window) {
      const double then = trace_.best_fitness[iterations - config_.stall_window];
      if (std::abs(best - then) < config_.stall_epsilon) return finish(Termination::kStalled);
    }
    if (iterations >= config_.max_iterations) return finish(Termination::kMaxIterations);
    return std::nullopt;
  }

  Termination finish(Termination t) {
    trace_.termination = t;
    return t;
  }

 private:
  const OptimizerConfig& config_;
  OptimizerTrace& trace_;
};

// Wraps obj.evaluate and counts calls into trace.evaluations.
class CountingObjective {
 public:
  CountingObjective(const Objective& obj, OptimizerTrace& trace) : obj_(obj), trace_(trace) {}

  // Diverged (non-finite) points rank below every finite fitness.
  double operator()(std::span<const double> x) const {
    ++trace_.evaluations;
    for (double v : x) {
      if (!std::isfinite(v)) return -std::numeric_limits<double>::infinity();
    }
    return obj_.evaluate(x);
  }

  double with_gradient(std::span<const double> x, std::span<double> grad) const {
    ++trace_.evaluations;
    return obj_.gradient(x, grad);
  }

 private:
  const Objective& obj_;
  OptimizerTrace& trace_;
};

void require_dimension(const Objective& obj);

}  // namespace hardctrl::detail

#endif  // HARDCTRL_OPTIMIZERS_PROGRESS_HPP
