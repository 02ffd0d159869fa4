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

#ifndef RPELAB_TOLERANCES_HPP
#define RPELAB_TOLERANCES_HPP

namespace rpelab {

// Single source of truth for every numerical tolerance used by the library
// and its tests. Values are absolute unless noted otherwise.
struct Tolerances {
  // Max-norm symmetry defect accepted by the Hermitian eigensolver.
  double hermiticity = 1e-10;
  // Eigendecomposition reconstruction residual, relative to (1 + max|m_ij|).
  double eig_residual = 1e-9;
  // Unitarity defect accepted for operators (max-norm of U U^dag - I).
  double unitarity = 1e-9;
  // State norm drift allowed after applying a unitary.
  double state_norm = 1e-10;
  // Orthonormality defect for eigenvector columns.
  double orthonormality = 1e-10;
  // Below this, both probability components are treated as vanishing and the
  // extracted phase is flagged as unidentifiable.
  double phase_degenerate = 1e-12;
  // Leak vectors must be orthogonal to the target subspace to this level.
  double leak_orthogonality = 1e-10;
  // Residual threshold for an overdetermined energy reconstruction.
  double reconstruction_residual = 1e-8;
  // Polynomial roots: acceptable imaginary part, out-of-range clamp slack,
  // and the residual of the sign-branch consistency check.
  double root_imag = 1e-9;
  double root_clamp = 1e-12;
  double root_residual = 1e-8;
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

}  // namespace rpelab

#endif  // RPELAB_TOLERANCES_HPP
