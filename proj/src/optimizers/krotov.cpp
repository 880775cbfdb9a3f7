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

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

namespace {

ComplexMatrix bin_factor(const ControlProblem& problem, std::span<const double> amplitudes) {
  return expm_hermitian(HermitianMatrix(problem.bin_hamiltonian(amplitudes)), problem.time_step())
      .matrix();
}

}  // namespace

Vector krotov_sweep(const ControlProblem& problem, std::span<const double> params, double step) {
  if (params.size() != problem.parameter_count()) {
    throw std::invalid_argument("krotov_sweep: parameter vector has wrong length");
  }
  const std::size_t bins = problem.bins();
  const std::size_t nc = problem.num_controls();
  const Eigen::Index n = problem.dim();
  const double weight = step * problem.time_step() / static_cast<double>(n);

  Vector updated(params.begin(), params.end());
  std::span<const double> all(updated);

  std::vector<ComplexMatrix> factors;
  factors.reserve(bins);
  for (std::size_t k = 0; k < bins; ++k) factors.push_back(bin_factor(problem, all.subspan(k * nc, nc)));

  // left[k] = W^dagger U_{K-1} ... U_{k+1}, from the amplitudes at sweep start.
  std::vector<ComplexMatrix> left(bins);
  left[bins - 1] = problem.target().matrix().adjoint();
  for (std::size_t k = bins - 1; k-- > 0;) left[k] = left[k + 1] * factors[k + 1];

  ComplexMatrix forward = ComplexMatrix::Identity(n, n);
  for (std::size_t k = 0; k < bins; ++k) {
    const ComplexMatrix through = factors[k] * forward;
    for (std::size_t l = 0; l < nc; ++l) {
      const Complex t = trace_inner(left[k].adjoint(), problem.controls()[l].matrix() * through);
      updated[k * nc + l] += weight * t.imag();
    }
    forward = bin_factor(problem, all.subspan(k * nc, nc)) * forward;
  }
  return updated;
}

Vector sequential_gradient_sweep(const Objective& obj, std::span<const double> params,
                                 double step) {
  if (!obj.gradient) throw std::invalid_argument("krotov: objective has no gradient");
  Vector updated(params.begin(), params.end());
  Vector grad(updated.size());
  for (std::size_t j = 0; j < updated.size(); ++j) {
    obj.gradient(updated, grad);
    updated[j] += step * grad[j];
  }
  return updated;
}

OptimizerTrace krotov(const Objective& obj, const OptimizerConfig& config, std::uint64_t seed) {
  detail::require_dimension(obj);
  if (!obj.problem && !obj.gradient) {
    throw std::invalid_argument("krotov: objective carries neither a control problem nor a gradient");
  }
  if (obj.problem && obj.problem->parameter_count() != obj.dimension) {
    throw std::invalid_argument("krotov: objective dimension does not match its problem");
  }
  config.validate();

  OptimizerTrace trace;
  detail::CountingObjective f(obj, trace);
  detail::Progress progress(config, trace);
  Rng rng(seed);

  Vector x = initialize_population(obj.dimension, 1, rng, config.init_low, config.init_high).front();
  double fx = f(x);
  double step = 1.0 / config.krotov_alpha;

  if (!progress.record(fx)) {
    for (;;) {
      Vector candidate = obj.problem ? krotov_sweep(*obj.problem, x, step)
                                     : sequential_gradient_sweep(obj, x, step);
      const double fc = f(candidate);
      if (fc > fx) {
        x = std::move(candidate);
        fx = fc;
      } else {
        step *= 0.5;
      }
      if (progress.record(fx)) break;
    }
  }
  trace.best_point = x;
  return trace;
}

}  // namespace hardctrl
