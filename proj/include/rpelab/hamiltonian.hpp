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

#ifndef RPELAB_HAMILTONIAN_HPP
#define RPELAB_HAMILTONIAN_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rpelab/numerics.hpp"

namespace rpelab {

struct PauliTerm {
  std::string word;     // over {I,X,Y,Z}; leftmost char acts on qubit n-1
  double coefficient;   // real; Hermiticity by construction
};

struct PauliHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;  // unique words, sorted lexicographically
  std::string label;
};

// File format: UTF-8 lines, '#' starts a comment, blank lines ignored,
// optional "label <text>" header, data lines "<word> <coefficient>".
// Duplicate words are merged by summing coefficients.
PauliHamiltonian parse_hamiltonian(std::istream& text);
PauliHamiltonian parse_hamiltonian_file(const std::string& path);

// Terms sorted by word, coefficients at 17 significant digits.
std::string serialize(const PauliHamiltonian& h);

// Kronecker expansion; qubit 0 is the least-significant bit of the
// computational index.
CMatrix to_dense(const PauliHamiltonian& h);

// 2^n times the all-identity coefficient (0 when that word is absent).
double trace(const PauliHamiltonian& h);

Spectrum spectrum(const PauliHamiltonian& h);

}  // namespace rpelab

#endif  // RPELAB_HAMILTONIAN_HPP
