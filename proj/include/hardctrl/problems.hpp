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

#ifndef HARDCTRL_PROBLEMS_HPP
#define HARDCTRL_PROBLEMS_HPP

#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>

#include "hardctrl/control.hpp"

namespace hardctrl {

/// Spin-1/2 operators X, Y, Z (Pauli matrices carrying a factor 1/2).
ComplexMatrix spin_x();
ComplexMatrix spin_y();
ComplexMatrix spin_z();

/// Qutrit phase gate with the T-dependent drift diag(1 + pi/T, 1, 2) and the
/// single tridiagonal control [[a,1,0],[1,b,1],[0,1,c]].
///
/// The target is exp(-i T H_dr) diag(e^{i phi}, i e^{i gamma}, i e^{-i gamma}).
/// With sin(phi) = -(b + c) cos(gamma) / a the zero field is a critical point of
/// the fidelity with F = cos(phi) / 3 < 1, and a strict local maximum: a trap.
///
/// Setting `conjugate_phases = false` selects diag(e^{-i phi}, -i e^{-i gamma},
/// -i e^{i gamma}) instead. The zero field is then still critical with the same F,
/// but under exp(-i H dt) propagation it is a saddle rather than a maximum.
struct QutritSpec {
  double horizon = 2.5 * std::numbers::pi;
  std::size_t bins = 10;
  double a = 2.0;
  double b = 2.0;
  double c = 1.0;
  double gamma = 5.0 * std::numbers::pi / 3.0;
  /// Overrides the trap phase; defaults to the principal arcsin branch.
  std::optional<double> phi;
  bool conjugate_phases = true;

  /// Throws std::invalid_argument when |(b + c) cos(gamma) / a| > 1.
  double resolved_phi() const;
};

/// CNOT on two qubits coupled by an Ising ZZ drift with local X and Y controls.
struct CnotSpec {
  double horizon = 3.2;
  std::size_t bins = 4;
  double coupling = 1.0;
};

ControlProblem make_qutrit_problem(const QutritSpec& spec);

/// Drift (J/2) Z (x) Z with spin operators, i.e. (J/8) sigma_z (x) sigma_z; controls
/// in the order X(x)1, 1(x)X, Y(x)1, 1(x)Y; target the CNOT permutation.
ControlProblem make_cnot_problem(const CnotSpec& spec);

/// The CNOT permutation matrix |00>->|00>, |01>->|01>, |10>->|11>, |11>->|10>.
ComplexMatrix cnot_matrix();

/// Looks up "qutrit" or "cnot"; other names throw std::invalid_argument.
ControlProblem make_problem(std::string_view name, double horizon, std::size_t bins);

}  // namespace hardctrl

#endif  // HARDCTRL_PROBLEMS_HPP
