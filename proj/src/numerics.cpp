// Copyright 2026 The rpelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rpelab/numerics.hpp"

#include <sstream>

namespace rpelab {

double max_abs(const CMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

Spectrum eig_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("eig_hermitian: matrix is not square");
  }
  const double defect = max_abs(m - m.adjoint());
  if (defect > tol().hermiticity) {
    std::ostringstream os;
    os << "eig_hermitian: symmetry defect " << defect << " exceeds "
       << tol().hermiticity;
    throw NotHermitian(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver failed to converge");
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  const CMatrix rebuilt =
      s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
  const double residual = max_abs(rebuilt - m);
  const double limit = tol().eig_residual * (1.0 + max_abs(m));
  if (residual > limit) {
    std::ostringstream os;
    os << "eig_hermitian: reconstruction residual " << residual
       << " exceeds " << limit;
    throw Error(os.str());
  }
  return s;
}

CMatrix unitary_exp(const CMatrix& m, double scale) {
  return unitary_exp(eig_hermitian(m), scale);
}

CMatrix unitary_exp(const Spectrum& s, double scale) {
  CVector phases(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    phases[i] = std::exp(Complex(0.0, -scale * s.eigenvalues[i]));
  }
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

CVector apply(const CMatrix& u, const CVector& s) {
  if (u.cols() != s.size()) {
    throw DimensionMismatch("apply: operator and state dimensions differ");
  }
  return u * s;
}

}  // namespace rpelab
