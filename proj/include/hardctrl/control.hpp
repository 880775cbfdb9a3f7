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

#ifndef HARDCTRL_CONTROL_HPP
#define HARDCTRL_CONTROL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hardctrl/matrix.hpp"

namespace hardctrl {

/// Lower bound on log10(1 - F), the double-precision floor.
inline constexpr double kLogInfidelityFloor = -16.0;

/// Piecewise-constant gate-synthesis problem: H(t) = H_dr + sum_l eps_l(t) H_l on
/// K equal bins of [0, T], driven towards a fixed target unitary.
class ControlProblem {
 public:
  ControlProblem(HermitianMatrix drift, std::vector<HermitianMatrix> controls,
                 UnitaryMatrix target, double horizon, std::size_t bins);

  const HermitianMatrix& drift() const noexcept { return drift_; }
  const std::vector<HermitianMatrix>& controls() const noexcept { return controls_; }
  const UnitaryMatrix& target() const noexcept { return target_; }

  double horizon() const noexcept { return horizon_; }
  std::size_t bins() const noexcept { return bins_; }
  std::size_t num_controls() const noexcept { return controls_.size(); }
  Eigen::Index dim() const noexcept { return drift_.dim(); }
  double time_step() const noexcept { return horizon_ / static_cast<double>(bins_); }

  /// D = K * L, the length of a flattened control field.
  std::size_t parameter_count() const noexcept { return bins_ * controls_.size(); }

  /// H_dr + sum_l eps_{k,l} H_l for one bin, where `amplitudes` holds the L
  /// amplitudes of that bin.
  ComplexMatrix bin_hamiltonian(std::span<const double> amplitudes) const;

 private:
  HermitianMatrix drift_;
  std::vector<HermitianMatrix> controls_;
  UnitaryMatrix target_;
  double horizon_;
  std::size_t bins_;
};

/// K x L table of piecewise-constant amplitudes, stored bin-major: all L
/// controls of bin 0, then bin 1, and so on.
class ControlField {
 public:
  ControlField(std::size_t bins, std::size_t controls);
  ControlField(std::size_t bins, std::size_t controls, std::vector<double> values);

  static ControlField zeros(const ControlProblem& problem);
  static ControlField constant(const ControlProblem& problem, double value);

  std::size_t bins() const noexcept { return bins_; }
  std::size_t controls() const noexcept { return controls_; }

  double& at(std::size_t bin, std::size_t control) { return values_[bin * controls_ + control]; }
  double at(std::size_t bin, std::size_t control) const {
    return values_[bin * controls_ + control];
  }

  std::span<const double> bin(std::size_t k) const {
    return std::span<const double>(values_).subspan(k * controls_, controls_);
  }

  std::span<const double> flat() const noexcept { return values_; }
  std::span<double> flat() noexcept { return values_; }

 private:
  std::size_t bins_;
  std::size_t controls_;
  std::vector<double> values_;
};

struct ObjectiveEvaluation {
  double fitness;
  double log_infidelity;
  UnitaryMatrix propagated;
};

/// log10(1 - F), clamped below at -16.
double log_infidelity(double fitness);

/// U_K ... U_2 U_1 with U_k = exp(-i H_k dt).
UnitaryMatrix propagate(const ControlProblem& problem, const ControlField& field);

/// F = (1/N) Re Tr(U_target^dagger U), together with L and the propagator.
ObjectiveEvaluation fidelity(const ControlProblem& problem, const ControlField& field);

/// Fidelity of a flattened field, without materialising ObjectiveEvaluation.
/// This is the evaluation used inside optimizers.
double fitness(const ControlProblem& problem, std::span<const double> params);

/// Exact dF/d eps_{k,l} in flattened order. The bin exponentials are
/// differentiated through their eigenbases, so the result carries no
/// O(dt^2) truncation error. Returns F; `grad` must have length D.
double fitness_and_gradient(const ControlProblem& problem, std::span<const double> params,
                            std::span<double> grad);

std::vector<double> gradient(const ControlProblem& problem, const ControlField& field);

/// Symmetrized central second differences of a scalar function.
Eigen::MatrixXd fd_hessian(const std::function<double(std::span<const double>)>& f,
                           std::span<const double> x, double h = 1e-4);

Eigen::MatrixXd fd_hessian(const ControlProblem& problem, const ControlField& field,
                           double h = 1e-4);

}  // namespace hardctrl

#endif  // HARDCTRL_CONTROL_HPP
