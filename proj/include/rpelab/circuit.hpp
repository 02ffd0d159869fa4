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

#ifndef RPELAB_CIRCUIT_HPP
#define RPELAB_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rpelab/numerics.hpp"

namespace rpelab {

struct Gate {
  enum class Kind { X, H, Phase, Cnot, Dense };

  Kind kind;
  int q = 0;        // target (X, H, Phase) or control (Cnot)
  int q2 = 0;       // Cnot target
  double angle = 0; // Phase angle in radians
  CMatrix matrix;   // Dense payload
  std::vector<int> qubits;  // Dense qubit list, ordered

  static Gate x(int q);
  static Gate h(int q);
  static Gate phase(int q, double angle);  // diag(1, e^{i angle}) on q
  static Gate cnot(int control, int target);
  static Gate dense(CMatrix m, std::vector<int> qubits);

  Gate dagger() const;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;  // applied left to right
};

// X/CNOT circuit T with T|0> = |a>, T|2^j> = |b>; j is the least-significant
// bit where a and b differ. Gate count is at most 2n.
struct AbSelect {
  Circuit circuit;
  int control = 0;  // j
};
AbSelect ab_select(std::int64_t a, std::int64_t b, int n);

// Prepares (|a> + e^{i beta} |b>)/sqrt(2) from |0...0>. The phase gate is
// omitted when beta == 0 since it would be the identity.
Circuit build_B(std::int64_t a, std::int64_t b, double beta, int n);

// Dense basis-change gate whose i-th column is eigenvector i, each column
// phased so its largest-magnitude component is real and positive (ties to
// the lowest index).
Gate build_A(const Spectrum& spec);

CVector simulate(const Circuit& c, const CVector& initial);

// Gate-wise adjoint in reverse order.
Circuit inverse(const Circuit& c);

// Worst-case CNOT count for the singly-controlled version of a circuit with
// s single-qubit gates and t CNOTs.
std::int64_t controlled_cost(std::int64_t s, std::int64_t t);

// One gate per line; header "qubits n".
std::string circuit_to_text(const Circuit& c);

}  // namespace rpelab

#endif  // RPELAB_CIRCUIT_HPP
