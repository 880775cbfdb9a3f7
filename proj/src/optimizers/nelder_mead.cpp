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

#include <Eigen/Dense>

#include "hardctrl/optimizers.hpp"
#include "progress.hpp"

namespace hardctrl {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  Vector x;
  double cost;  // -F
};

// min/max singular value ratio of the edge matrix, zero for a collapsed simplex.
double simplex_conditioning(const std::vector<Vertex>& s) {
  const std::size_t dim = s.front().x.size();
  Eigen::MatrixXd edges(dim, dim);
  for (std::size_t i = 1; i <= dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) edges(j, i - 1) = s[i].x[j] - s[0].x[j];
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(edges).singularValues();
  return sv.maxCoeff() > 0.0 ? sv.minCoeff() / sv.maxCoeff() : 0.0;
}

}  // namespace

OptimizerTrace nelder_mead(const Objective& obj, const OptimizerConfig& config,
                           std::uint64_t seed) {
  detail::require_dimension(obj);
  config.validate();
  const std::size_t dim = obj.dimension;

  OptimizerTrace trace;
  detail::CountingObjective f(obj, trace);
  detail::Progress progress(config, trace);
  Rng rng(seed);

  auto cost = [&](const Vector& x) { return -f(x); };
  auto build_simplex = [&](const Vertex& anchor) {
    std::vector<Vertex> s{anchor};
    for (std::size_t i = 0; i < dim; ++i) {
      Vector x = anchor.x;
      x[i] += config.simplex_step;
      s.push_back({x, cost(x)});
    }
    return s;
  };
  auto by_cost = [](const Vertex& a, const Vertex& b) { return a.cost < b.cost; };

  Vector start = initialize_population(dim, 1, rng, config.init_low, config.init_high).front();
  std::vector<Vertex> simplex = build_simplex({start, cost(start)});
  std::stable_sort(simplex.begin(), simplex.end(), by_cost);

  Vector centroid(dim);
  auto along = [&](double t, const Vector& from) {
    // centroid + t (from - centroid)
    Vector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (from[j] - centroid[j]);
    return x;
  };

  if (!progress.record(-simplex.front().cost)) {
    for (std::size_t iter = 1;; ++iter) {
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i].x[j];
      }
      for (auto& c : centroid) c /= static_cast<double>(dim);

      Vertex& worst = simplex.back();
      const double best_cost = simplex.front().cost;
      const double second_worst = simplex[dim - 1].cost;

      Vertex reflected{along(-kReflect, worst.x), 0.0};
      reflected.cost = cost(reflected.x);

      bool shrink = false;
      if (reflected.cost < best_cost) {
        Vertex expanded{along(-kReflect * kExpand, worst.x), 0.0};
        expanded.cost = cost(expanded.x);
        worst = expanded.cost < reflected.cost ? std::move(expanded) : std::move(reflected);
      } else if (reflected.cost < second_worst) {
        worst = std::move(reflected);
      } else if (reflected.cost < worst.cost) {
        Vertex outside{along(-kReflect * kContract, worst.x), 0.0};
        outside.cost = cost(outside.x);
        if (outside.cost <= reflected.cost) {
          worst = std::move(outside);
        } else {
          shrink = true;
        }
      } else {
        Vertex inside{along(kContract, worst.x), 0.0};
        inside.cost = cost(inside.x);
        if (inside.cost < worst.cost) {
          worst = std::move(inside);
        } else {
          shrink = true;
        }
      }

      if (shrink) {
        const Vector& anchor = simplex.front().x;
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            simplex[i].x[j] = anchor[j] + kShrink * (simplex[i].x[j] - anchor[j]);
          }
          simplex[i].cost = cost(simplex[i].x);
        }
      }
      std::stable_sort(simplex.begin(), simplex.end(), by_cost);

      // A collapsed simplex can no longer span the space; rebuild it around the
      // best vertex.
      if (iter % dim == 0 && simplex_conditioning(simplex) < 1e-10) {
        simplex = build_simplex(simplex.front());
        std::stable_sort(simplex.begin(), simplex.end(), by_cost);
      }

      if (progress.record(-simplex.front().cost)) break;
    }
  }
  trace.best_point = simplex.front().x;
  return trace;
}

}  // namespace hardctrl
