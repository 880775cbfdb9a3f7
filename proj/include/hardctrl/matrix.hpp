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

#ifndef HARDCTRL_MATRIX_HPP
#define HARDCTRL_MATRIX_HPP

#include <complex>

#include <Eigen/Dense>

namespace hardctrl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances applied when certifying matrix structure at construction.
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Largest absolute entry, the max-norm used by every structural check here.
double max_abs(const ComplexMatrix& m);

/// Throws std::invalid_argument unless `m` is square, nonempty and finite.
void require_square_finite(const ComplexMatrix& m, const char* what);

/// A dense complex matrix certified Hermitian (||M - M^dagger||_max <= 1e-12).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

class UnitaryMatrix;

namespace detail {
// For values that are unitary by construction (V diag(e^{i x}) V^dagger, products
// of unitaries). Skips the O(N^3) certification in the propagation hot path.
UnitaryMatrix assume_unitary(ComplexMatrix m);
}  // namespace detail

/// A dense complex matrix certified unitary (||M^dagger M - I||_max <= 1e-10).
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m);

  static UnitaryMatrix identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  /// Product of two unitaries; dimensions must agree.
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

  /// ||M^dagger M - I||_max.
  double unitarity_defect() const;

 private:
  struct Trusted {};
  UnitaryMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

  friend UnitaryMatrix detail::assume_unitary(ComplexMatrix m);

  ComplexMatrix m_;
};

/// H = V diag(values) V^dagger with real ascending eigenvalues.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};

/// Hermitian eigendecomposition. Throws std::runtime_error if the solver does
/// not converge.
HermitianEigen eigh(const HermitianMatrix& h);

/// exp(-i theta H) rebuilt from a precomputed eigendecomposition.
UnitaryMatrix expm_from_eigen(const HermitianEigen& eig, double theta);

/// exp(-i theta H) via eigendecomposition.
UnitaryMatrix expm_hermitian(const HermitianMatrix& h, double theta);

/// Kronecker product with A's index major: (A (x) B)[i*nb + k, j*nb + l] = A[i,j] B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(A^dagger B). Throws std::invalid_argument on dimension mismatch.
Complex trace_inner(const UnitaryMatrix& a, const UnitaryMatrix& b);
Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace hardctrl

#endif  // HARDCTRL_MATRIX_HPP
