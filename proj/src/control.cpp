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

#include "hardctrl/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hardctrl {

namespace {

void require_field_matches(const ControlProblem& problem, const ControlField& field) {
  if (field.bins() != problem.bins() || field.controls() != problem.num_controls()) {
    throw std::invalid_argument("control field is " + std::to_string(field.bins()) + "x" +
                                std::to_string(field.controls()) + " but problem expects " +
                                std::to_string(problem.bins()) + "x" +
                                std::to_string(problem.num_controls()));
  }
}

void require_params_match(const ControlProblem& problem, std::span<const double> params) {
  if (params.size() != problem.parameter_count()) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(params.size()) +
                                ", expected " + std::to_string(problem.parameter_count()));
  }
}

// Runs the eigensolver without re-certifying Hermiticity; the bin Hamiltonian is
// a real combination of certified Hermitian matrices.
HermitianEigen bin_eigen(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("bin Hamiltonian eigendecomposition failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix bin_propagator(const ControlProblem& problem, std::span<const double> params,
                             std::size_t k) {
  const std::size_t l = problem.num_controls();
  const auto eig = bin_eigen(problem.bin_hamiltonian(params.subspan(k * l, l)));
  return expm_from_eigen(eig, problem.time_step()).matrix();
}

ComplexMatrix propagate_flat(const ControlProblem& problem, std::span<const double> params) {
  ComplexMatrix u = ComplexMatrix::Identity(problem.dim(), problem.dim());
  for (std::size_t k = 0; k < problem.bins(); ++k) {
    u = bin_propagator(problem, params, k) * u;
  }
  return u;
}

double fitness_from(const ControlProblem& problem, const ComplexMatrix& u) {
  return trace_inner(problem.target().matrix(), u).real() / static_cast<double>(problem.dim());
}

// (e^{-i a dt} - e^{-i b dt}) / (a - b), written through sinc so that nearly
// degenerate eigenvalues need no special casing.
Complex divided_difference(double a, double b, double dt) {
  const double half = 0.5 * (a - b) * dt;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return Complex(0.0, -dt) * std::polar(1.0, -0.5 * (a + b) * dt) * sinc;
}

}  // namespace

ControlProblem::ControlProblem(HermitianMatrix drift, std::vector<HermitianMatrix> controls,
                               UnitaryMatrix target, double horizon, std::size_t bins)
    : drift_(std::move(drift)),
      controls_(std::move(controls)),
      target_(std::move(target)),
      horizon_(horizon),
      bins_(bins) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw std::invalid_argument("ControlProblem: horizon T must be positive and finite");
  }
  if (bins_ == 0) throw std::invalid_argument("ControlProblem: bin count K must be >= 1");
  if (controls_.empty()) {
    throw std::invalid_argument("ControlProblem: at least one control Hamiltonian required");
  }
  for (const auto& c : controls_) {
    if (c.dim() != drift_.dim()) {
      throw std::invalid_argument("ControlProblem: control dimension differs from drift");
    }
  }
  if (target_.dim() != drift_.dim()) {
    throw std::invalid_argument("ControlProblem: target dimension differs from drift");
  }
}

ComplexMatrix ControlProblem::bin_hamiltonian(std::span<const double> amplitudes) const {
  ComplexMatrix h = drift_.matrix();
  for (std::size_t l = 0; l < controls_.size(); ++l) {
    h += amplitudes[l] * controls_[l].matrix();
  }
  return h;
}

ControlField::ControlField(std::size_t bins, std::size_t controls)
    : ControlField(bins, controls, std::vector<double>(bins * controls, 0.0)) {}

ControlField::ControlField(std::size_t bins, std::size_t controls, std::vector<double> values)
    : bins_(bins), controls_(controls), values_(std::move(values)) {
  if (values_.size() != bins_ * controls_) {
    throw std::invalid_argument("ControlField: expected " + std::to_string(bins_ * controls_) +
                                " amplitudes, got " + std::to_string(values_.size()));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("ControlField: amplitudes must be finite");
  }
}

ControlField ControlField::zeros(const ControlProblem& problem) {
  return ControlField(problem.bins(), problem.num_controls());
}

ControlField ControlField::constant(const ControlProblem& problem, double value) {
  return ControlField(problem.bins(), problem.num_controls(),
                      std::vector<double>(problem.parameter_count(), value));
}

double log_infidelity(double fitness) {
  const double infidelity = 1.0 - fitness;
  if (!(infidelity > 0.0)) return kLogInfidelityFloor;
  return std::max(kLogInfidelityFloor, std::log10(infidelity));
}

UnitaryMatrix propagate(const ControlProblem& problem, const ControlField& field) {
  require_field_matches(problem, field);
  return detail::assume_unitary(propagate_flat(problem, field.flat()));
}

ObjectiveEvaluation fidelity(const ControlProblem& problem, const ControlField& field) {
  UnitaryMatrix u = propagate(problem, field);
  const double f = fitness_from(problem, u.matrix());
  return {f, log_infidelity(f), std::move(u)};
}

double fitness(const ControlProblem& problem, std::span<const double> params) {
  require_params_match(problem, params);
  return fitness_from(problem, propagate_flat(problem, params));
}

double fitness_and_gradient(const ControlProblem& problem, std::span<const double> params,
                            std::span<double> grad) {
  require_params_match(problem, params);
  if (grad.size() != params.size()) {
    throw std::invalid_argument("fitness_and_gradient: gradient buffer has wrong length");
  }
  const std::size_t bins = problem.bins();
  const std::size_t nc = problem.num_controls();
  const Eigen::Index n = problem.dim();
  const double dt = problem.time_step();

  std::vector<HermitianEigen> eigs;
  std::vector<ComplexMatrix> factors;
  eigs.reserve(bins);
  factors.reserve(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    eigs.push_back(bin_eigen(problem.bin_hamiltonian(params.subspan(k * nc, nc))));
    factors.push_back(expm_from_eigen(eigs.back(), dt).matrix());
  }

  // forward[k] = U_{k-1} ... U_0, with forward[0] = I.
  std::vector<ComplexMatrix> forward(bins + 1);
  forward[0] = ComplexMatrix::Identity(n, n);
  for (std::size_t k = 0; k < bins; ++k) forward[k + 1] = factors[k] * forward[k];

  const ComplexMatrix target_dag = problem.target().matrix().adjoint();
  const double scale = 1.0 / static_cast<double>(n);

  // Walk backwards keeping W^dagger U_{K-1} ... U_{k+1}.
  ComplexMatrix left = target_dag;
  ComplexMatrix kernel(n, n);
  for (std::size_t kk = bins; kk-- > 0;) {
    const auto& eig = eigs[kk];
    // Tr(left dU forward) = Tr(M dU) with M = forward * left, and
    // dU = V (G o (V^dagger H_l V)) V^dagger, so Tr(M dU) = sum_ij (V^dagger M V)_ji G_ij Hl'_ij.
    const ComplexMatrix m_eig = eig.vectors.adjoint() * forward[kk] * left * eig.vectors;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        kernel(i, j) = divided_difference(eig.values(i), eig.values(j), dt) * m_eig(j, i);
      }
    }
    for (std::size_t l = 0; l < nc; ++l) {
      const ComplexMatrix hl = eig.vectors.adjoint() * problem.controls()[l].matrix() * eig.vectors;
      grad[kk * nc + l] = scale * kernel.cwiseProduct(hl).sum().real();
    }
    left = left * factors[kk];
  }
  return scale * trace_inner(problem.target().matrix(), forward[bins]).real();
}

std::vector<double> gradient(const ControlProblem& problem, const ControlField& field) {
  require_field_matches(problem, field);
  std::vector<double> grad(problem.parameter_count());
  fitness_and_gradient(problem, field.flat(), grad);
  return grad;
}

Eigen::MatrixXd fd_hessian(const std::function<double(std::span<const double>)>& f,
                           std::span<const double> x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_hessian: step h must be positive");
  const std::size_t d = x.size();
  std::vector<double> p(x.begin(), x.end());
  const double f0 = f(p);
  Eigen::MatrixXd hess(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    p[i] = x[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    for (std::size_t j = i + 1; j < d; ++j) {
      auto eval = [&](double si, double sj) {
        p[i] = x[i] + si * h;
        p[j] = x[j] + sj * h;
        const double v = f(p);
        p[i] = x[i];
        p[j] = x[j];
        return v;
      };
      const double v = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return 0.5 * (hess + hess.transpose());
}

Eigen::MatrixXd fd_hessian(const ControlProblem& problem, const ControlField& field, double h) {
  require_field_matches(problem, field);
  return fd_hessian([&](std::span<const double> p) { return fitness(problem, p); }, field.flat(),
                    h);
}

}  // namespace hardctrl
