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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "rpelab/circuit.hpp"
#include "rpelab/hamiltonian.hpp"

using namespace rpelab;

namespace {

// Independent full-matrix oracle for every gate kind. Deliberately built
// entry by entry rather than with the library's in-place kernels.
CMatrix full_matrix(const Gate& g, int n) {
  const long long dim = 1LL << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  switch (g.kind) {
    case Gate::Kind::X: {
      for (long long i = 0; i < dim; ++i) m(i ^ (1LL << g.q), i) = 1.0;
      break;
    }
    case Gate::Kind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (long long i = 0; i < dim; ++i) {
        const long long lo = i & ~(1LL << g.q);
        const long long hi = i | (1LL << g.q);
        m(lo, i) = r;
        m(hi, i) = (i >> g.q) & 1 ? -r : r;
      }
      break;
    }
    case Gate::Kind::Phase: {
      const Complex w = std::exp(Complex(0.0, g.angle));
      for (long long i = 0; i < dim; ++i) {
        m(i, i) = (i >> g.q) & 1 ? w : Complex(1.0, 0.0);
      }
      break;
    }
    case Gate::Kind::Cnot: {
      for (long long i = 0; i < dim; ++i) {
        const long long j = (i >> g.q) & 1 ? i ^ (1LL << g.q2) : i;
        m(j, i) = 1.0;
      }
      break;
    }
    case Gate::Kind::Dense: {
      const int k = static_cast<int>(g.qubits.size());
      const long long sub = 1LL << k;
      for (long long i = 0; i < dim; ++i) {
        long long s = 0;
        long long rest = i;
        for (int p = 0; p < k; ++p) {
          s |= ((i >> g.qubits[p]) & 1) << p;
          rest &= ~(1LL << g.qubits[p]);
        }
        for (long long s2 = 0; s2 < sub; ++s2) {
          long long j = rest;
          for (int p = 0; p < k; ++p) {
            if ((s2 >> p) & 1) j |= 1LL << g.qubits[p];
          }
          m(j, i) = g.matrix(s2, s);
        }
      }
      break;
    }
  }
  return m;
}

CMatrix circuit_matrix(const Circuit& c) {
  const long long dim = 1LL << c.n_qubits;
  CMatrix m = CMatrix::Identity(dim, dim);
  for (const auto& g : c.gates) m = full_matrix(g, c.n_qubits) * m;
  return m;
}

CVector basis_state(int n, long long idx) {
  CVector v = CVector::Zero(1LL << n);
  v[idx] = 1.0;
  return v;
}

CVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(dist(rng), dist(rng));
  v /= v.norm();
  return v;
}

CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMatrix r(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) r(i, j) = Complex(dist(rng), dist(rng));
  }
  const CMatrix h = 0.5 * (r + r.adjoint().eval());
  return unitary_exp(h, 1.0);
}

}  // namespace

TEST_CASE("basis-pair selector: adjacent pair needs no gates") {
  const AbSelect sel = ab_select(0, 1, 2);
  CHECK(sel.control == 0);
  CHECK(sel.circuit.gates.empty());
}

TEST_CASE("basis-pair selector: crossed pair on two qubits") {
  const AbSelect sel = ab_select(1, 2, 2);
  CHECK(sel.control == 0);
  REQUIRE(sel.circuit.gates.size() == 2);
  CHECK(sel.circuit.gates[0].kind == Gate::Kind::Cnot);
  CHECK(sel.circuit.gates[0].q == 0);
  CHECK(sel.circuit.gates[0].q2 == 1);
  CHECK(sel.circuit.gates[1].kind == Gate::Kind::X);
  CHECK(sel.circuit.gates[1].q == 0);
}

TEST_CASE("basis-pair selector: shared low bit") {
  const AbSelect sel = ab_select(3, 1, 2);
  CHECK(sel.control == 1);
  REQUIRE(sel.circuit.gates.size() == 2);
  CHECK(sel.circuit.gates[0].kind == Gate::Kind::X);
  CHECK(sel.circuit.gates[0].q == 0);
  CHECK(sel.circuit.gates[1].kind == Gate::Kind::X);
  CHECK(sel.circuit.gates[1].q == 1);
}

TEST_CASE("basis-pair selector: exhaustive contract on four qubits") {
  const int n = 4;
  for (long long a = 0; a < 16; ++a) {
    for (long long b = 0; b < 16; ++b) {
      if (a == b) continue;
      const AbSelect sel = ab_select(a, b, n);
      CHECK(static_cast<int>(sel.circuit.gates.size()) <= 2 * n);
      for (const auto& g : sel.circuit.gates) {
        CHECK((g.kind == Gate::Kind::X || g.kind == Gate::Kind::Cnot));
      }
      const CVector got_a = simulate(sel.circuit, basis_state(n, 0));
      const CVector got_b =
          simulate(sel.circuit, basis_state(n, 1LL << sel.control));
      CHECK((got_a - basis_state(n, a)).norm() < 1e-12);
      CHECK((got_b - basis_state(n, b)).norm() < 1e-12);
    }
  }
}

TEST_CASE("basis-pair selector rejects bad indices") {
  CHECK_THROWS_AS(ab_select(0, 0, 1), EqualIndices);
  CHECK_THROWS_AS(ab_select(0, 4, 2), IndexOutOfRange);
  CHECK_THROWS_AS(ab_select(-1, 0, 2), IndexOutOfRange);
}

TEST_CASE("superposition builder: single qubit without phase") {
  const Circuit c = build_B(0, 1, 0.0, 1);
  REQUIRE(c.gates.size() == 1);
  CHECK(c.gates[0].kind == Gate::Kind::H);
  const CVector state = simulate(c, basis_state(1, 0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(state[0] - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(state[1] - Complex(r, 0)) < 1e-12);
}

TEST_CASE("superposition builder: crossed pair with pi phase") {
  const Circuit c = build_B(1, 2, std::numbers::pi, 2);
  const CVector state = simulate(c, basis_state(2, 0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(state[0]) < 1e-12);
  CHECK(std::abs(state[1] - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(state[2] - Complex(-r, 0)) < 1e-12);
  CHECK(std::abs(state[3]) < 1e-12);
}

TEST_CASE("superposition builder: phase gate only present when needed") {
  const Circuit without = build_B(1, 2, 0.0, 2);
  for (const auto& g : without.gates) {
    CHECK(g.kind != Gate::Kind::Phase);
  }
  const Circuit with = build_B(1, 2, std::numbers::pi / 2.0, 2);
  bool found = false;
  for (const auto& g : with.gates) {
    if (g.kind == Gate::Kind::Phase) {
      found = true;
      CHECK(g.q == 0);
      CHECK(g.angle == doctest::Approx(std::numbers::pi / 2.0));
    }
  }
  CHECK(found);
}

TEST_CASE("superposition builder: random pairs and phases") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const long long dim = 1LL << n;
    const long long a = static_cast<long long>(rng() % dim);
    long long b = static_cast<long long>(rng() % dim);
    if (a == b) b = (b + 1) % dim;
    const double beta = angle(rng);
    const CVector state = simulate(build_B(a, b, beta, n), basis_state(n, 0));
    const double r = 1.0 / std::sqrt(2.0);
    for (long long i = 0; i < dim; ++i) {
      Complex want(0.0, 0.0);
      if (i == a) want = Complex(r, 0.0);
      if (i == b) want = std::exp(Complex(0.0, beta)) * r;
      CHECK(std::abs(state[i] - want) < 1e-12);
    }
  }
}

TEST_CASE("basis-change gate for a diagonal Hamiltonian") {
  const Spectrum s = eig_hermitian([] {
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }());
  const Gate a = build_A(s);
  // Ascending order puts |1> first, so the gate is the bit flip.
  CMatrix want(2, 2);
  want << 0, 1, 1, 0;
  CHECK(max_abs(a.matrix - want) < 1e-12);
}

TEST_CASE("basis-change gate for Pauli X is a real Hadamard frame") {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const Gate a = build_A(eig_hermitian(x));
  const double r = 1.0 / std::sqrt(2.0);
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 2; ++col) {
      CHECK(std::abs(a.matrix(row, col).imag()) < 1e-12);
      CHECK(std::abs(std::abs(a.matrix(row, col)) - r) < 1e-12);
    }
  }
  // Column 0 spans eigenvalue -1 (opposite signs); column 1 spans +1 and the
  // equal-positive entries make the phase fix exact.
  CHECK(a.matrix(0, 0).real() * a.matrix(1, 0).real() < 0.0);
  CHECK(a.matrix(0, 1).real() > 0.0);
  CHECK(a.matrix(1, 1).real() > 0.0);
}

TEST_CASE("basis-change gate invariants on a coupled Hamiltonian") {
  std::istringstream hsrc("XX 0.3\nZI 0.7\nIZ -0.2\nYY 0.1\n");
  const PauliHamiltonian h = parse_hamiltonian(hsrc);
  const CMatrix dense = to_dense(h);
  const Spectrum s = spectrum(h);
  const Gate a = build_A(s);
  const int dim = s.dim();
  CHECK(max_abs(a.matrix.adjoint() * a.matrix -
                CMatrix::Identity(dim, dim)) < 1e-10);
  for (int i = 0; i < dim; ++i) {
    const CVector col = a.matrix.col(i);
    CHECK((dense * col - s.eigenvalues[i] * col).norm() < 1e-9);
    // Pivot entry is real positive.
    int best = 0;
    for (int r = 1; r < dim; ++r) {
      if (std::abs(col[r]) > std::abs(col[best])) best = r;
    }
    CHECK(col[best].real() > 0.0);
    CHECK(std::abs(col[best].imag()) < 1e-12);
  }
}

TEST_CASE("basis-change gate rejects non-orthonormal columns") {
  Spectrum s;
  s.eigenvalues = RVector(2);
  s.eigenvalues << -1.0, 1.0;
  s.eigenvectors = CMatrix(2, 2);
  s.eigenvectors << 1, 1, 0, 1;
  CHECK_THROWS_AS(build_A(s), NonUnitary);
}

TEST_CASE("simulator agrees with the full-matrix oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    Circuit c;
    c.n_qubits = n;
    for (int g = 0; g < 25; ++g) {
      const int kind = static_cast<int>(rng() % 5);
      const int q = static_cast<int>(rng() % n);
      int q2 = static_cast<int>(rng() % n);
      if (q2 == q) q2 = (q2 + 1) % n;
      switch (kind) {
        case 0: c.gates.push_back(Gate::x(q)); break;
        case 1: c.gates.push_back(Gate::h(q)); break;
        case 2: c.gates.push_back(Gate::phase(q, angle(rng))); break;
        case 3: c.gates.push_back(Gate::cnot(q, q2)); break;
        case 4:
          c.gates.push_back(Gate::dense(random_unitary(4, rng), {q, q2}));
          break;
      }
    }
    const CMatrix oracle = circuit_matrix(c);
    const CVector psi = random_state(1 << n, rng);
    CHECK((simulate(c, psi) - oracle * psi).norm() < 1e-11);
  }
}

TEST_CASE("simulator rejects mismatched initial states") {
  Circuit c;
  c.n_qubits = 2;
  CVector bad(3);
  bad.setZero();
  CHECK_THROWS_AS(simulate(c, bad), DimensionMismatch);
}

TEST_CASE("dense gate payload must match its qubit count") {
  CHECK_THROWS_AS(Gate::dense(CMatrix::Identity(3, 3), {0, 1}),
                  DimensionMismatch);
}

TEST_CASE("inverse undoes a random circuit") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    Circuit c;
    c.n_qubits = n;
    for (int g = 0; g < 15; ++g) {
      const int kind = static_cast<int>(rng() % 5);
      const int q = static_cast<int>(rng() % n);
      int q2 = static_cast<int>(rng() % n);
      if (q2 == q) q2 = (q2 + 1) % n;
      switch (kind) {
        case 0: c.gates.push_back(Gate::x(q)); break;
        case 1: c.gates.push_back(Gate::h(q)); break;
        case 2: c.gates.push_back(Gate::phase(q, angle(rng))); break;
        case 3: c.gates.push_back(Gate::cnot(q, q2)); break;
        case 4:
          c.gates.push_back(Gate::dense(random_unitary(4, rng), {q, q2}));
          break;
      }
    }
    const CVector psi = random_state(1 << n, rng);
    const CVector back = simulate(inverse(c), simulate(c, psi));
    CHECK((back - psi).norm() < 1e-12);
  }
}

TEST_CASE("gate adjoints") {
  const Gate p = Gate::phase(1, 0.3);
  CHECK(p.dagger().angle == doctest::Approx(-0.3));
  std::mt19937_64 rng(41);
  const CMatrix u = random_unitary(4, rng);
  const Gate d = Gate::dense(u, {0, 1});
  CHECK(max_abs(d.dagger().matrix - u.adjoint().eval()) < 1e-15);
}

TEST_CASE("controlled-evolution cost formula") {
  CHECK(controlled_cost(2, 11) == 70);
  CHECK(controlled_cost(0, 0) == 0);
  CHECK(controlled_cost(5, 0) == 10);
  CHECK(controlled_cost(0, 3) == 18);
}

TEST_CASE("circuit text form") {
  Circuit c;
  c.n_qubits = 2;
  c.gates.push_back(Gate::h(0));
  c.gates.push_back(Gate::phase(0, 0.5));
  c.gates.push_back(Gate::cnot(0, 1));
  c.gates.push_back(Gate::x(0));
  const std::string text = circuit_to_text(c);
  CHECK(text == "qubits 2\nH 0\nPHASE 0 0.5\nCNOT 0 1\nX 0\n");

  Circuit d;
  d.n_qubits = 1;
  d.gates.push_back(Gate::dense(CMatrix::Identity(2, 2), {0}));
  const std::string dtext = circuit_to_text(d);
  CHECK(dtext.find("DENSE [0]") != std::string::npos);
  CHECK(dtext.find("(1,0)") != std::string::npos);
}
