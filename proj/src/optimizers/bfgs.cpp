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

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

namespace {
constexpr int kMaxBacktracks = 60;
constexpr double kCurvatureFloor = 1e-12;
}  // namespace

// Quasi-Newton ascent on F, written as descent on c(x) = -F(x). The inverse
// Hessian starts at the identity; steps come from Armijo backtracking followed
// by one quadratic-interpolation refinement along the accepted direction, which
// makes the line search exact on quadratic objectives.
OptimizerTrace bfgs(const Objective& obj, const OptimizerConfig& config, std::uint64_t seed) {
  detail::require_dimension(obj);
  if (!obj.gradient) throw std::invalid_argument("bfgs: objective has no gradient");
  config.validate();
  const auto dim = static_cast<Eigen::Index>(obj.dimension);

  OptimizerTrace trace;
  detail::CountingObjective f(obj, trace);
  detail::Progress progress(config, trace);
  Rng rng(seed);

  using Eigen::VectorXd;
  auto as_span = [](const VectorXd& v) {
    return std::span<const double>(v.data(), static_cast<std::size_t>(v.size()));
  };
  auto cost = [&](const VectorXd& x) { return -f(as_span(x)); };
  auto cost_grad = [&](const VectorXd& x, VectorXd& g) {
    const double fx = f.with_gradient(as_span(x), std::span<double>(g.data(), g.size()));
    g = -g;
    return -fx;
  };

  const Vector start =
      initialize_population(obj.dimension, 1, rng, config.init_low, config.init_high).front();
  VectorXd x = Eigen::Map<const VectorXd>(start.data(), dim);
  VectorXd g(dim);
  double c = cost_grad(x, g);
  Eigen::MatrixXd inv_hess = Eigen::MatrixXd::Identity(dim, dim);

  VectorXd g_new(dim);
  if (!progress.record(-c)) {
    for (;;) {
      VectorXd p = -inv_hess * g;
      double slope = g.dot(p);
      if (!(slope < 0.0)) {
        inv_hess.setIdentity();
        p = -g;
        slope = -g.squaredNorm();
      }

      double alpha = 1.0;
      double c_alpha = cost(x + alpha * p);
      int backtracks = 0;
      while (!(c_alpha <= c + config.armijo_c * alpha * slope)) {
        if (++backtracks > kMaxBacktracks) break;
        alpha *= config.backtrack_shrink;
        c_alpha = cost(x + alpha * p);
      }
      if (backtracks > kMaxBacktracks) {
        progress.record(-c);
        progress.finish(Termination::kStalled);
        break;
      }

      // Minimizer of the quadratic through c(0), c'(0) and c(alpha).
      const double curvature = (c_alpha - c - slope * alpha) / (alpha * alpha);
      if (curvature > 0.0) {
        const double alpha_q = -slope / (2.0 * curvature);
        if (alpha_q > 0.0 && alpha_q <= 4.0 * alpha && alpha_q != alpha) {
          const double c_q = cost(x + alpha_q * p);
          if (c_q < c_alpha && c_q <= c + config.armijo_c * alpha_q * slope) {
            alpha = alpha_q;
            c_alpha = c_q;
          }
        }
      }

      const VectorXd s = alpha * p;
      const VectorXd x_new = x + s;
      const double c_new = cost_grad(x_new, g_new);
      const VectorXd y = g_new - g;
      const double sy = s.dot(y);
      if (sy > kCurvatureFloor) {
        const double rho = 1.0 / sy;
        const VectorXd hy = inv_hess * y;
        // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
        inv_hess += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) -
                    rho * (hy * s.transpose() + s * hy.transpose());
        inv_hess = 0.5 * (inv_hess + inv_hess.transpose());
      }
      x = x_new;
      g = g_new;
      c = c_new;
      if (progress.record(-c)) break;
    }
  }
  trace.best_point.assign(x.data(), x.data() + dim);
  return trace;
}

}  // namespace hardctrl
