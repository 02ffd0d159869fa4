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

#ifndef RPELAB_NUMERICS_HPP
#define RPELAB_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>

#include "rpelab/errors.hpp"
#include "rpelab/tolerances.hpp"

namespace rpelab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Eigenvalues ascending; column i of eigenvectors is the i-th eigenvector.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Max-norm of a matrix (largest |entry|).
double max_abs(const CMatrix& m);

// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
// Throws NotHermitian if the symmetry defect exceeds the tolerance, and
// Error with the residual if reconstruction fails the contract.
Spectrum eig_hermitian(const CMatrix& m);

// exp(-i * scale * m) for Hermitian m, built from the eigendecomposition.
CMatrix unitary_exp(const CMatrix& m, double scale);

// Same exponential from an already-computed eigendecomposition.
CMatrix unitary_exp(const Spectrum& s, double scale);

// u * s with a dimension check; the result keeps unit norm for unitary u.
CVector apply(const CMatrix& u, const CVector& s);

}  // namespace rpelab

#endif  // RPELAB_NUMERICS_HPP
