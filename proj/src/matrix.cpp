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

#include "hardctrl/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardctrl {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw std::invalid_argument(std::string(what) + ": non-finite entry at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_, "HermitianMatrix");
  const double defect = max_abs(m_ - m_.adjoint());
  if (defect > kHermitianTolerance) {
    throw std::invalid_argument("HermitianMatrix: ||M - M^dagger||_max = " +
                                std::to_string(defect) + " exceeds tolerance");
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_, "UnitaryMatrix");
  const double defect = unitarity_defect();
  if (defect > kUnitaryTolerance) {
    throw std::invalid_argument("UnitaryMatrix: ||M^dagger M - I||_max = " +
                                std::to_string(defect) + " exceeds tolerance");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim), Trusted{});
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (dim() != rhs.dim()) {
    throw std::invalid_argument("UnitaryMatrix product: dimension mismatch");
  }
  return UnitaryMatrix(m_ * rhs.m_, Trusted{});
}

double UnitaryMatrix::unitarity_defect() const {
  return max_abs(m_.adjoint() * m_ - ComplexMatrix::Identity(dim(), dim()));
}

namespace detail {
UnitaryMatrix assume_unitary(ComplexMatrix m) {
  return UnitaryMatrix(std::move(m), UnitaryMatrix::Trusted{});
}
}  // namespace detail

HermitianEigen eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: Hermitian eigendecomposition failed to converge (dim " +
                             std::to_string(h.dim()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

UnitaryMatrix expm_from_eigen(const HermitianEigen& eig, double theta) {
  const Eigen::Index n = eig.values.size();
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index j = 0; j < n; ++j) {
    scaled.col(j) *= std::polar(1.0, -theta * eig.values(j));
  }
  return detail::assume_unitary(scaled * eig.vectors.adjoint());
}

UnitaryMatrix expm_hermitian(const HermitianMatrix& h, double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("expm_hermitian: theta must be finite");
  }
  return expm_from_eigen(eigh(h), theta);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_inner: dimension mismatch");
  }
  // Tr(A^dagger B) = sum_ij conj(A_ij) B_ij
  return a.conjugate().cwiseProduct(b).sum();
}

Complex trace_inner(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return trace_inner(a.matrix(), b.matrix());
}

}  // namespace hardctrl
