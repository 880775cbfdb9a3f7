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

#include "hardctrl/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardctrl {

ComplexMatrix spin_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

ComplexMatrix spin_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0.0, 0.0), Complex(0.0, -0.5), Complex(0.0, 0.5), Complex(0.0, 0.0);
  return m;
}

ComplexMatrix spin_z() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

double QutritSpec::resolved_phi() const {
  if (phi) return *phi;
  const double s = -(b + c) * std::cos(gamma) / a;
  if (!(std::abs(s) <= 1.0)) {
    throw std::invalid_argument("QutritSpec: |(b + c) cos(gamma) / a| = " +
                                std::to_string(std::abs(s)) + " > 1, no real trap phase");
  }
  return std::asin(s);
}

ControlProblem make_qutrit_problem(const QutritSpec& spec) {
  if (!(spec.horizon > 0.0)) throw std::invalid_argument("qutrit: T must be positive");
  const double phi = spec.resolved_phi();
  const double t = spec.horizon;

  ComplexMatrix drift = ComplexMatrix::Zero(3, 3);
  drift.diagonal() << 1.0 + std::numbers::pi / t, 1.0, 2.0;

  ComplexMatrix control(3, 3);
  control << spec.a, 1.0, 0.0,  //
      1.0, spec.b, 1.0,         //
      0.0, 1.0, spec.c;

  ComplexMatrix phases = ComplexMatrix::Zero(3, 3);
  phases(0, 0) = std::polar(1.0, -phi);
  phases(1, 1) = Complex(0.0, -1.0) * std::polar(1.0, -spec.gamma);
  phases(2, 2) = Complex(0.0, -1.0) * std::polar(1.0, spec.gamma);
  if (spec.conjugate_phases) phases = phases.conjugate().eval();

  HermitianMatrix h_drift(drift);
  UnitaryMatrix target(expm_hermitian(h_drift, t).matrix() * phases);
  return ControlProblem(std::move(h_drift), {HermitianMatrix(control)}, std::move(target), t,
                        spec.bins);
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

ControlProblem make_cnot_problem(const CnotSpec& spec) {
  if (!(spec.horizon > 0.0)) throw std::invalid_argument("cnot: T must be positive");
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  HermitianMatrix drift(0.5 * spec.coupling * kron(spin_z(), spin_z()));
  std::vector<HermitianMatrix> controls{
      HermitianMatrix(kron(spin_x(), id)),
      HermitianMatrix(kron(id, spin_x())),
      HermitianMatrix(kron(spin_y(), id)),
      HermitianMatrix(kron(id, spin_y())),
  };
  return ControlProblem(std::move(drift), std::move(controls), UnitaryMatrix(cnot_matrix()),
                        spec.horizon, spec.bins);
}

ControlProblem make_problem(std::string_view name, double horizon, std::size_t bins) {
  if (name == "qutrit") {
    QutritSpec spec;
    spec.horizon = horizon;
    spec.bins = bins;
    return make_qutrit_problem(spec);
  }
  if (name == "cnot") return make_cnot_problem({horizon, bins, 1.0});
  throw std::invalid_argument("unknown problem '" + std::string(name) +
                              "' (expected qutrit or cnot)");
}

}  // namespace hardctrl
